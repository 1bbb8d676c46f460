#pragma once

#include <string>
#include <vector>

#include "otslab/domain.hpp"

namespace otslab {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes used by the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitBudget = 4;
inline constexpr int kExitTheoremCheck = 5;

// One experiment, fully resolved. String-typed specs (learner, pi, family)
// keep the config's own vocabulary so a config round-trips losslessly
// through emit_config / parse_config.
struct ExperimentConfig {
    std::string command;  // verify | sweep-n | sweep-overlap | estimate | check-model | list-learners
    int n = 0;            // 0 = unset
    int m = 0;            // 0 = unset
    std::string learner = "memorizer:default=0";
    std::string pi = "uniform";
    std::string family = "ots-induced";
    std::string model = "iid";
    std::vector<int> n_values;       // sweep-n grid
    std::string mode = "auto";       // sweep-n engine choice: exact | mc | auto
    std::vector<Rational> lambdas;   // sweep-overlap grid
    std::uint64_t seed = 1;
    std::uint64_t samples = 100000;
    int workers = 1;
    std::uint64_t budget = kDefaultBudget;
    std::string output = "-";  // "-" writes to stdout

    bool operator==(const ExperimentConfig&) const = default;
};

// Parses the line-oriented "key = value" format (a single [experiment]
// section, # comments) and validates the result for its command. Throws
// ParseError with a line number for malformed text, ValidationError naming
// the violated precondition otherwise.
ExperimentConfig parse_config(const std::string& text);

// Canonical config text; parse_config(emit_config(c)) == c for any valid c.
std::string emit_config(const ExperimentConfig& config);

// Re-runs the per-command validation (used after flag overrides).
void validate_config(const ExperimentConfig& config);

struct ResultArtifact {
    std::string csv;    // metadata header lines, then a CSV table
    int exit_code = 0;  // kExitTheoremCheck when the verified hypotheses hold but the value is not 1/2
};

// Executes the configured experiment and writes the artifact to
// config.output ("-" = stdout). Identical configs produce byte-identical
// artifacts; Monte Carlo output additionally depends only on seed and
// worker count.
ResultArtifact run(const ExperimentConfig& config);

// Full command-line entry point: subcommand + flags, config file handling,
// exit-code mapping. `args` excludes the program name.
int cli_main(const std::vector<std::string>& args);

// Resolution helpers shared by run() and the validators.
Distribution resolve_pi(const std::string& spec, int n);
TestDistributionFamily resolve_family(const std::string& spec, const Distribution& pi);

}  // namespace otslab
