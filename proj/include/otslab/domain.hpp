#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "otslab/errors.hpp"
#include "otslab/rational.hpp"

namespace otslab {

// Work cap shared by every enumeration and exact engine, counted in
// enumerated cells: materialized bits/slots for the enumerators, evaluated
// (function, training-sequence) pairs for the expectation engines.
inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 24;

// Saturating helpers used for budget checks.
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t sat_pow(std::uint64_t base, unsigned exp);

// Finite input space {0, 1, ..., n-1}. Sizes below 2 are rejected: once a
// single training point exists there would be no off-training-set point left.
class InputSpace {
  public:
    explicit InputSpace(int n);
    int size() const { return n_; }
    bool operator==(const InputSpace&) const = default;

  private:
    int n_;
};

// Probability distribution over an InputSpace with exact rational weights.
// Validated at construction: nonnegative weights, exact sum of 1.
class Distribution {
  public:
    Distribution(InputSpace space, std::vector<Rational> weights);
    static Distribution uniform(InputSpace space);
    static Distribution point_mass(InputSpace space, int x);

    const InputSpace& space() const { return space_; }
    int size() const { return space_.size(); }
    const Rational& weight(int x) const { return weights_.at(static_cast<size_t>(x)); }
    const std::vector<Rational>& weights() const { return weights_; }

    // Indices with positive weight, ascending. Nonempty by the sum invariant.
    const std::vector<int>& support() const { return support_; }
    std::string describe() const;  // "1/2,1/4,1/8,1/8"

    bool operator==(const Distribution&) const = default;

  private:
    InputSpace space_;
    std::vector<Rational> weights_;
    std::vector<int> support_;
};

// Total Boolean function on an InputSpace, stored one bit per input. Serves
// as both target function and hypothesis.
class BoolFunction {
  public:
    BoolFunction(InputSpace space, std::vector<int> bits);
    // Lexicographic code: bit for input x is bit (n-1-x) of `code`, so code 0
    // is the all-zeros function and code 2^n - 1 is all ones.
    static BoolFunction from_code(InputSpace space, std::uint64_t code);

    const InputSpace& space() const { return space_; }
    int size() const { return space_.size(); }
    int value(int x) const { return bits_.at(static_cast<size_t>(x)); }
    const std::vector<int>& bits() const { return bits_; }
    std::uint64_t code() const;
    BoolFunction complement() const;
    std::string bit_string() const;  // "010"

    bool operator==(const BoolFunction&) const = default;

  private:
    InputSpace space_;
    std::vector<int> bits_;
};

using TargetFunction = BoolFunction;
using Hypothesis = BoolFunction;

struct LabeledPair {
    int input;
    int label;
    bool operator==(const LabeledPair&) const = default;
};

// Ordered sequence of m labeled training pairs. Labels are noise-free
// function values, so a repeated input must repeat its label.
class TrainingSet {
  public:
    TrainingSet(InputSpace space, std::vector<LabeledPair> pairs);

    const InputSpace& space() const { return space_; }
    int size() const { return static_cast<int>(pairs_.size()); }  // m
    const std::vector<LabeledPair>& pairs() const { return pairs_; }

    // d_X: distinct trained inputs, ascending.
    const std::vector<int>& trained_inputs() const { return trained_; }
    bool trained(int x) const;
    std::optional<int> label_for(int x) const;
    std::string describe() const;  // "(1:1)(0:0)"

    bool operator==(const TrainingSet&) const = default;

  private:
    InputSpace space_;
    std::vector<LabeledPair> pairs_;
    std::vector<int> trained_;
};

// True iff every pair (x, y) of d satisfies y = f(x).
bool consistent(const TrainingSet& d, const TargetFunction& f);

// Deterministic learning rule: identical training sets yield bit-identical
// hypotheses. Value type over a pure function.
class Learner {
  public:
    Learner(std::string name, std::function<Hypothesis(const TrainingSet&)> rule)
        : name_(std::move(name)), rule_(std::move(rule)) {}

    const std::string& name() const { return name_; }
    Hypothesis operator()(const TrainingSet& d) const { return rule_(d); }

  private:
    std::string name_;
    std::function<Hypothesis(const TrainingSet&)> rule_;
};

enum class FamilyKind { ots_induced, constant, custom };

// Map from a training set to the distribution test points are drawn from.
// Every returned Distribution is valid by construction of Distribution.
class TestDistributionFamily {
  public:
    TestDistributionFamily(std::string name, FamilyKind kind,
                           std::function<Distribution(const TrainingSet&)> map)
        : name_(std::move(name)), kind_(kind), map_(std::move(map)) {}

    const std::string& name() const { return name_; }
    FamilyKind kind() const { return kind_; }
    Distribution operator()(const TrainingSet& d) const { return map_(d); }

  private:
    std::string name_;
    FamilyKind kind_;
    std::function<Distribution(const TrainingSet&)> map_;
};

// Exact categorical draw from a Distribution: a uniform integer in [0, D)
// over the weights' common denominator D, obtained by rejection on 64-bit
// words from the engine (most significant word first), then a scan of the
// cumulative scaled numerators. Sampled frequencies match the weights
// exactly, not to floating-point resolution.
class CategoricalSampler {
  public:
    explicit CategoricalSampler(const Distribution& dist);
    int sample(std::mt19937_64& rng) const;

  private:
    mpz_class denom_;
    std::vector<mpz_class> cumulative_;
    std::size_t bits_;
};

// Uniformly random Boolean function: bit x is bit (x mod 64) of the
// (x div 64)-th engine word. Exactly uniform over all 2^n functions.
TargetFunction random_target_function(const InputSpace& space, std::mt19937_64& rng);

// Likelihood P(d|f) plus a seeded sampler for d given f. The default IID
// model draws each input independently from pi and labels it with f, so
// P(d|f) = prod_i pi(d_X(i)) when the labels match f and 0 otherwise.
class SamplingModel {
  public:
    SamplingModel(std::string name,
                  std::function<Rational(const TrainingSet&, const TargetFunction&)> likelihood,
                  std::function<TrainingSet(const TargetFunction&, int, std::mt19937_64&)> sampler)
        : name_(std::move(name)), likelihood_(std::move(likelihood)), sampler_(std::move(sampler)) {}

    static SamplingModel iid(Distribution pi);

    const std::string& name() const { return name_; }
    Rational likelihood(const TrainingSet& d, const TargetFunction& f) const {
        return likelihood_(d, f);
    }
    TrainingSet sample(const TargetFunction& f, int m, std::mt19937_64& rng) const {
        return sampler_(f, m, rng);
    }

  private:
    std::string name_;
    std::function<Rational(const TrainingSet&, const TargetFunction&)> likelihood_;
    std::function<TrainingSet(const TargetFunction&, int, std::mt19937_64&)> sampler_;
};

// All length-m tuples over a fixed alphabet in lexicographic order, addressed
// by index so callers can partition the range across workers.
class SequenceEnumerator {
  public:
    SequenceEnumerator(std::vector<int> alphabet, int m);
    std::uint64_t count() const { return count_; }  // |alphabet|^m, saturating
    std::vector<int> at(std::uint64_t index) const;

  private:
    std::vector<int> alphabet_;
    int m_;
    std::uint64_t count_;
};

// Ascending distinct values of a sequence.
std::vector<int> distinct_sorted(const std::vector<int>& sequence);

// Training set for `sequence` labeled via `label_code`: the label of
// distinct[j] is bit j of the code. Codes 0 .. 2^k - 1 enumerate every
// self-consistent labeling of the sequence.
TrainingSet training_set_from_labeling(const InputSpace& space, const std::vector<int>& sequence,
                                       const std::vector<int>& distinct, std::uint64_t label_code);

// All 2^len bit vectors of a given length in lexicographic order.
std::vector<std::vector<int>> enumerate_bit_vectors(int len, std::uint64_t budget = kDefaultBudget);

// All 2^n Boolean functions on the space, lexicographic by bit string.
// Budget cost: n * 2^n materialized bits.
std::vector<TargetFunction> enumerate_target_functions(const InputSpace& space,
                                                       std::uint64_t budget = kDefaultBudget);

// All ordered input sequences of length m drawn from support(pi), labeled by
// f, with their exact IID probabilities. The probabilities sum to exactly 1.
// Budget cost: m * |support|^m materialized slots.
std::vector<std::pair<TrainingSet, Rational>> enumerate_training_sequences(
    const Distribution& pi, int m, const TargetFunction& f, std::uint64_t budget = kDefaultBudget);

}  // namespace otslab
