#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "pleat/farey.hpp"

namespace pleat::cli {

/// Everything a subcommand needs. Defaults are the values used when neither
/// the config file nor a flag sets a field.
struct RunConfig {
    std::string subcommand;
    Slope mu = reduce_slope(0, 1);
    Slope nu = reduce_slope(1, 0);
    double c = 1.0986122886681098;  // ln 3
    double d = 0.0;
    bool has_d = false;
    int depth = 2;
    int samples = 64;
    double tol = 1e-10;
    std::string out = "-";
    std::string format;  // empty: the subcommand's default
    std::string branch = "upper";
    unsigned workers = 1;
    double c_min = 0.1;
    double c_max = 4.0;
    int c_steps = 40;
    int word_len = 6;
    std::string suite = "invariants";
};

// Keys accepted in config files; each is also a long flag (--key).
const std::vector<std::string>& config_keys();

// Sets one field from its textual value. Throws Error(Parse) on bad input.
void set_field(RunConfig& cfg, const std::string& key, const std::string& value);

/// Reads "key = value" lines; '#' starts a comment. Errors name the line.
RunConfig parse_config(const std::filesystem::path& path);

// Decimal literal or one of the tokens ln3, 2asinh1.
double parse_length(const std::string& text);

std::string help_text();

/// Runs one command line. Returns 0 on success, 1 on a precondition or
/// input error, 2 on a numeric failure (partial output is still written).
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Quick cross-module invariant checks behind `verify --suite invariants`.
std::vector<CheckResult> run_invariant_suite();

}  // namespace pleat::cli
