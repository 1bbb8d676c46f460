#pragma once

#include <cstdint>
#include <string>

#include "otslab/domain.hpp"

namespace otslab {

struct ExactResult {
    Rational value;            // in [0, 1]
    std::uint64_t pairs = 0;   // enumerated (function, training sequence) pairs
    double wall_seconds = 0.0;
    std::string engine;        // "exact" or "grouped"
};

struct MCEstimate {
    double estimate = 0.0;
    double std_error = 0.0;  // unbiased sample stddev / sqrt(samples)
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    int workers = 1;
};

struct EngineOptions {
    std::uint64_t budget = kDefaultBudget;
    int workers = 1;
};

// Brute force: E over uniformly random target functions f and IID training
// sequences d ~ pi labeled by f of the test error of learner(d) against f
// under family(d). Every function and every sequence is enumerated; the
// result is an exact rational.
ExactResult exact_expected_ots(const Learner& learner, const Distribution& pi,
                               const TestDistributionFamily& family, int m,
                               const EngineOptions& options = {});

// Same expectation, computed by grouping over labeled training sequences:
// conditioned on the labels seen so far, the unseen bits of a uniformly
// random target function are fair and independent, so each untrained point
// contributes half its test mass. Exactly equal to exact_expected_ots on
// every configuration both can run; enumerates 2^n-fold fewer pairs.
ExactResult grouped_expected_ots(const Learner& learner, const Distribution& pi,
                                 const TestDistributionFamily& family, int m,
                                 const EngineOptions& options = {});

// Generalization error against a fixed test distribution pibar, with no
// off-training-set restriction: test points may land on trained points.
ExactResult expected_fixed_error(const Learner& learner, const Distribution& pi,
                                 const Distribution& pibar, int m,
                                 const EngineOptions& options = {});

// Monte Carlo estimate of the same expectation: f uniform over all 2^n
// functions, d ~ IID pi labeled by f. Deterministic given (seed, workers);
// worker w draws from substream_seed(seed, w) and partial results merge in
// worker order.
MCEstimate mc_expected_ots(const Learner& learner, const Distribution& pi,
                           const TestDistributionFamily& family, int m, std::uint64_t samples,
                           std::uint64_t seed, int workers = 1);

}  // namespace otslab
