#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "otslab/domain.hpp"

namespace otslab {

// Memorizes the training labels on trained inputs; predicts default_label
// everywhere else. Under a uniform prior over target functions this is a
// Bayes-optimal minimizer of training-set error.
Learner memorizer(int default_label);

// Predicts the same label everywhere, ignoring the data. A deterministic
// stand-in for the random-guessing baseline.
Learner constant_learner(int label);

// Memorizes on trained inputs; elsewhere predicts the majority label over
// the training pairs (repeats counted), tie_label on ties.
Learner majority_learner(int tie_label);

// Memorizes on trained inputs; elsewhere the prediction is a seeded hash of
// the point and the training set. The exact mixing chain, pinned by golden
// tests:
//   digest = splitmix64(seed)
//   for each pair (x, y) of d in order:
//       digest = splitmix64(digest ^ splitmix64(2*x + y + 1))
//   prediction(x) = splitmix64(digest ^ (x + 0x9e3779b97f4a7c15)) & 1
Learner hash_learner(std::uint64_t seed);

// The fixed set of learners exercised by the verification suites.
std::vector<Learner> default_zoo();

// Builds a learner from its spec string, e.g. "memorizer:default=0",
// "constant:label=1", "majority:tie=0", "hash:seed=7". Unknown names or bad
// parameters raise ValidationError listing the available specs.
Learner make_learner(std::string_view spec);

struct LearnerDoc {
    std::string spec;
    std::string description;
};

std::vector<LearnerDoc> learner_catalog();

}  // namespace otslab
