#pragma once

#include <optional>
#include <string>
#include <vector>

#include "otslab/expect.hpp"
#include "otslab/ots.hpp"

namespace otslab {

struct VerticalWitness {
    TrainingSet d;
    TargetFunction f;
    TargetFunction f_prime;  // agrees with f on d_X yet gets a different likelihood
    Rational p_f;
    Rational p_f_prime;
};

struct VerticalCheck {
    bool holds;
    std::optional<VerticalWitness> witness;
};

// Verifies the vertical-likelihood condition by exhaustion: for every
// training set d of size m and every pair of functions agreeing on the
// trained inputs, P(d|f) must coincide.
VerticalCheck check_vertical(const SamplingModel& model, const InputSpace& space, int m,
                             std::uint64_t budget = kDefaultBudget);

// Counterexample model: inputs are drawn uniformly from the positive set
// {x : f(x) = 1}, so the likelihood depends on f away from the trained
// inputs and the vertical condition fails. For the all-zeros function the
// positive set is empty and every likelihood is 0.
SamplingModel positive_conditional_model(InputSpace space);

struct NflReport {
    std::string learner_name;
    int n = 0;
    int m = 0;
    std::string pi_desc;
    std::string family_desc;
    VerticalCheck vertical;
    SupportCheck support;
    ExactResult expectation;
    bool equals_half = false;  // expectation.value == 1/2 exactly
};

// Full pipeline under the IID model and the OTS-induced family: both
// hypothesis checks, the exact expectation, and the equals-half verdict.
// Requires m < |support(pi)| so the induced family is defined for every
// positive-probability training set.
NflReport verify_nfl(const Learner& learner, const Distribution& pi, int m,
                     const EngineOptions& options = {});

// Same pipeline with a caller-supplied d-dependent family (kind must be
// custom): any family passing the support check still averages to exactly
// 1/2, and families violating it can fall below it.
NflReport adversarial_family_demo(const Learner& learner, const Distribution& pi, int m,
                                  const TestDistributionFamily& family,
                                  const EngineOptions& options = {});

enum class SweepMode { exact, mc, automatic };

struct SweepRow {
    int n = 0;
    int m = 0;
    std::string learner_name;
    std::string family_desc;
    std::optional<Rational> lambda;      // overlap sweeps only
    std::string engine;                  // "exact", "grouped", or "mc"
    std::optional<Rational> value;       // exact engines
    std::optional<double> estimate;      // mc rows
    std::optional<double> std_error;     // mc rows
    std::uint64_t samples = 0;           // mc rows
    std::uint64_t seed = 0;              // mc rows (per-row substream)
};

// Fixed uniform pi = pibar while n grows: the error stays strictly below 1/2
// yet climbs toward it. Exact engine where the budget allows (mode
// automatic), Monte Carlo past it; mode exact forces enumeration and may
// throw BudgetExceeded. Row r uses substream_seed(seed, r) for MC.
std::vector<SweepRow> sweep_large_n(const Learner& learner, int m,
                                    const std::vector<int>& n_values, SweepMode mode,
                                    std::uint64_t seed, std::uint64_t samples,
                                    const EngineOptions& options = {});

// Fixed-test-distribution sweep over the overlap parameter: pi is uniform on
// the first half of an even-sized space and the test distribution is the
// mixture (1 - lambda) * uniform-on-second-half + lambda * pi. lambda = 0 is
// the disjoint-support regime; lambda = 1 tests on the training distribution.
std::vector<SweepRow> sweep_overlap(const Learner& learner, int n, int m,
                                    const std::vector<Rational>& lambdas,
                                    const EngineOptions& options = {});

}  // namespace otslab
