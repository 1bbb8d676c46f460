#pragma once

#include <optional>

#include "otslab/domain.hpp"

namespace otslab {

// Test distribution induced by a training set: zero on the trained inputs,
// pi renormalized by the off-training-set mass elsewhere. Throws
// NoOffTrainingMass when the trained inputs cover the support of pi.
Distribution ots_induced(const Distribution& pi, const TrainingSet& d);

// Expected 0/1 disagreement sum_x test(x) * |h(x) - f(x)|, exact in [0, 1].
Rational ots_error(const Hypothesis& h, const TargetFunction& f, const Distribution& test);

// True iff support(pi) and support(pibar) share no point.
bool disjoint_supports(const Distribution& pi, const Distribution& pibar);

struct SupportWitness {
    TrainingSet d;
    int x;  // trained input the family gave positive test mass
};

struct SupportCheck {
    bool holds;
    std::optional<SupportWitness> witness;
};

// Checks the off-training-set support condition for every positive-probability
// training sequence of length m under pi (any self-consistent labels): the
// family must assign zero test mass to each trained input. Only sequences the
// training distribution can actually produce are checked; zero-probability
// sequences are exempt.
SupportCheck support_condition_holds(const TestDistributionFamily& family, const Distribution& pi,
                                     int m, std::uint64_t budget = kDefaultBudget);

// Family builders.
TestDistributionFamily ots_family(Distribution pi);                    // kind: ots_induced
TestDistributionFamily constant_family(Distribution pibar);            // kind: constant
TestDistributionFamily uniform_off_training_family(InputSpace space);  // kind: custom

}  // namespace otslab
