#include "otslab/domain.hpp"

#include <algorithm>
#include <limits>

namespace otslab {

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a > std::numeric_limits<std::uint64_t>::max() / b) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    return a * b;
}

std::uint64_t sat_pow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        r = sat_mul(r, base);
    }
    return r;
}

InputSpace::InputSpace(int n) : n_(n) {
    if (n < 2) {
        throw ValidationError("InputSpace: size must be at least 2, got " + std::to_string(n));
    }
}

Distribution::Distribution(InputSpace space, std::vector<Rational> weights)
    : space_(space), weights_(std::move(weights)) {
    if (static_cast<int>(weights_.size()) != space_.size()) {
        throw ValidationError("Distribution: expected " + std::to_string(space_.size()) +
                              " weights, got " + std::to_string(weights_.size()));
    }
    Rational sum;
    for (size_t x = 0; x < weights_.size(); ++x) {
        if (weights_[x].is_negative()) {
            throw NegativeWeight("Distribution: negative weight " + weights_[x].str() +
                                 " at index " + std::to_string(x));
        }
        sum += weights_[x];
        if (!weights_[x].is_zero()) {
            support_.push_back(static_cast<int>(x));
        }
    }
    if (!(sum == Rational(1))) {
        throw WeightsDoNotSumToOne("Distribution: weights sum to " + sum.str() + ", expected 1");
    }
}

Distribution Distribution::uniform(InputSpace space) {
    std::vector<Rational> w(static_cast<size_t>(space.size()), Rational(1, space.size()));
    return Distribution(space, std::move(w));
}

Distribution Distribution::point_mass(InputSpace space, int x) {
    if (x < 0 || x >= space.size()) {
        throw ValidationError("point_mass: index " + std::to_string(x) + " out of range");
    }
    std::vector<Rational> w(static_cast<size_t>(space.size()), Rational(0));
    w[static_cast<size_t>(x)] = Rational(1);
    return Distribution(space, std::move(w));
}

std::string Distribution::describe() const {
    std::string out;
    for (size_t i = 0; i < weights_.size(); ++i) {
        if (i) out += ",";
        out += weights_[i].str();
    }
    return out;
}

BoolFunction::BoolFunction(InputSpace space, std::vector<int> bits)
    : space_(space), bits_(std::move(bits)) {
    if (static_cast<int>(bits_.size()) != space_.size()) {
        throw ValidationError("BoolFunction: expected " + std::to_string(space_.size()) +
                              " bits, got " + std::to_string(bits_.size()));
    }
    for (int b : bits_) {
        if (b != 0 && b != 1) {
            throw ValidationError("BoolFunction: bit values must be 0 or 1");
        }
    }
}

BoolFunction BoolFunction::from_code(InputSpace space, std::uint64_t code) {
    const int n = space.size();
    if (n > 63) {
        throw ValidationError("BoolFunction::from_code: space too large for a 64-bit code");
    }
    std::vector<int> bits(static_cast<size_t>(n));
    for (int x = 0; x < n; ++x) {
        bits[static_cast<size_t>(x)] = static_cast<int>((code >> (n - 1 - x)) & 1u);
    }
    return BoolFunction(space, std::move(bits));
}

std::uint64_t BoolFunction::code() const {
    const int n = space_.size();
    std::uint64_t code = 0;
    for (int x = 0; x < n; ++x) {
        code |= static_cast<std::uint64_t>(bits_[static_cast<size_t>(x)]) << (n - 1 - x);
    }
    return code;
}

BoolFunction BoolFunction::complement() const {
    std::vector<int> bits(bits_.size());
    for (size_t i = 0; i < bits_.size(); ++i) {
        bits[i] = 1 - bits_[i];
    }
    return BoolFunction(space_, std::move(bits));
}

std::string BoolFunction::bit_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (int b : bits_) s += static_cast<char>('0' + b);
    return s;
}

TrainingSet::TrainingSet(InputSpace space, std::vector<LabeledPair> pairs)
    : space_(space), pairs_(std::move(pairs)) {
    if (pairs_.empty()) {
        throw ValidationError("TrainingSet: needs at least one pair");
    }
    for (const auto& p : pairs_) {
        if (p.input < 0 || p.input >= space_.size()) {
            throw ValidationError("TrainingSet: input " + std::to_string(p.input) + " out of range");
        }
        if (p.label != 0 && p.label != 1) {
            throw ValidationError("TrainingSet: labels must be 0 or 1");
        }
    }
    // Self-consistency: labels are noise-free function values.
    for (const auto& p : pairs_) {
        for (const auto& q : pairs_) {
            if (p.input == q.input && p.label != q.label) {
                throw ValidationError("TrainingSet: conflicting labels for input " +
                                      std::to_string(p.input));
            }
        }
    }
    for (const auto& p : pairs_) trained_.push_back(p.input);
    std::sort(trained_.begin(), trained_.end());
    trained_.erase(std::unique(trained_.begin(), trained_.end()), trained_.end());
}

bool TrainingSet::trained(int x) const {
    return std::binary_search(trained_.begin(), trained_.end(), x);
}

std::optional<int> TrainingSet::label_for(int x) const {
    for (const auto& p : pairs_) {
        if (p.input == x) return p.label;
    }
    return std::nullopt;
}

std::string TrainingSet::describe() const {
    std::string out;
    for (const auto& p : pairs_) {
        out += "(" + std::to_string(p.input) + ":" + std::to_string(p.label) + ")";
    }
    return out;
}

bool consistent(const TrainingSet& d, const TargetFunction& f) {
    if (!(d.space() == f.space())) {
        throw SpaceMismatch("consistent: training set and function use different spaces");
    }
    for (const auto& p : d.pairs()) {
        if (f.value(p.input) != p.label) return false;
    }
    return true;
}

CategoricalSampler::CategoricalSampler(const Distribution& dist) : denom_(1) {
    // Common denominator of all weights, then cumulative scaled numerators.
    for (const Rational& w : dist.weights()) {
        mpz_class den(w.denominator_str());
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), denom_.get_mpz_t(), den.get_mpz_t());
        denom_ = denom_ / g * den;
    }
    mpz_class acc = 0;
    for (const Rational& w : dist.weights()) {
        mpz_class num(w.numerator_str());
        mpz_class den(w.denominator_str());
        acc += num * (denom_ / den);
        cumulative_.push_back(acc);
    }
    bits_ = mpz_sizeinbase(denom_.get_mpz_t(), 2);
}

int CategoricalSampler::sample(std::mt19937_64& rng) const {
    const std::size_t words = (bits_ + 63) / 64;
    mpz_class r;
    while (true) {
        r = 0;
        for (std::size_t w = 0; w < words; ++w) {
            mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), 64);
            mpz_class word(static_cast<unsigned long>(rng()));
            r += word;
        }
        mpz_fdiv_r_2exp(r.get_mpz_t(), r.get_mpz_t(), bits_);
        if (r < denom_) break;
    }
    for (std::size_t k = 0; k < cumulative_.size(); ++k) {
        if (r < cumulative_[k]) return static_cast<int>(k);
    }
    return static_cast<int>(cumulative_.size() - 1);  // unreachable: last cum == denom
}

TargetFunction random_target_function(const InputSpace& space, std::mt19937_64& rng) {
    const int n = space.size();
    std::vector<int> bits(static_cast<size_t>(n));
    std::uint64_t word = 0;
    for (int x = 0; x < n; ++x) {
        if (x % 64 == 0) word = rng();
        bits[static_cast<size_t>(x)] = static_cast<int>((word >> (x % 64)) & 1u);
    }
    return TargetFunction(space, std::move(bits));
}

SamplingModel SamplingModel::iid(Distribution pi) {
    auto likelihood = [pi](const TrainingSet& d, const TargetFunction& f) -> Rational {
        if (!(d.space() == pi.space()) || !(f.space() == pi.space())) {
            throw SpaceMismatch("iid likelihood: mismatched spaces");
        }
        if (!consistent(d, f)) return Rational(0);
        Rational p(1);
        for (const auto& pair : d.pairs()) {
            p *= pi.weight(pair.input);
        }
        return p;
    };
    auto sampler = [pi, table = CategoricalSampler(pi)](const TargetFunction& f, int m,
                                                        std::mt19937_64& rng) -> TrainingSet {
        if (!(f.space() == pi.space())) {
            throw SpaceMismatch("iid sampler: mismatched spaces");
        }
        if (m < 1) {
            throw PreconditionViolated("iid sampler: m must be at least 1");
        }
        std::vector<LabeledPair> pairs;
        pairs.reserve(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i) {
            const int x = table.sample(rng);
            pairs.push_back({x, f.value(x)});
        }
        return TrainingSet(pi.space(), std::move(pairs));
    };
    return SamplingModel("iid", std::move(likelihood), std::move(sampler));
}

SequenceEnumerator::SequenceEnumerator(std::vector<int> alphabet, int m)
    : alphabet_(std::move(alphabet)), m_(m) {
    if (alphabet_.empty()) {
        throw PreconditionViolated("SequenceEnumerator: empty alphabet");
    }
    if (m < 1) {
        throw PreconditionViolated("SequenceEnumerator: m must be at least 1");
    }
    count_ = sat_pow(alphabet_.size(), static_cast<unsigned>(m));
}

std::vector<int> SequenceEnumerator::at(std::uint64_t index) const {
    std::vector<int> seq(static_cast<size_t>(m_));
    const std::uint64_t base = alphabet_.size();
    for (int pos = m_ - 1; pos >= 0; --pos) {
        seq[static_cast<size_t>(pos)] = alphabet_[static_cast<size_t>(index % base)];
        index /= base;
    }
    return seq;
}

std::vector<int> distinct_sorted(const std::vector<int>& sequence) {
    std::vector<int> d = sequence;
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    return d;
}

TrainingSet training_set_from_labeling(const InputSpace& space, const std::vector<int>& sequence,
                                       const std::vector<int>& distinct, std::uint64_t label_code) {
    std::vector<LabeledPair> pairs;
    pairs.reserve(sequence.size());
    for (int x : sequence) {
        const auto it = std::lower_bound(distinct.begin(), distinct.end(), x);
        const auto j = static_cast<std::uint64_t>(it - distinct.begin());
        pairs.push_back({x, static_cast<int>((label_code >> j) & 1u)});
    }
    return TrainingSet(space, std::move(pairs));
}

std::vector<std::vector<int>> enumerate_bit_vectors(int len, std::uint64_t budget) {
    if (len < 1) {
        throw PreconditionViolated("enumerate_bit_vectors: length must be at least 1");
    }
    const std::uint64_t cost = sat_mul(sat_pow(2, static_cast<unsigned>(len)),
                                       static_cast<std::uint64_t>(len));
    if (cost > budget) {
        throw BudgetExceeded("enumerate_bit_vectors: " + std::to_string(len) + " * 2^" +
                             std::to_string(len) + " bits exceed budget " + std::to_string(budget));
    }
    const std::uint64_t total = std::uint64_t{1} << len;
    std::vector<std::vector<int>> out;
    out.reserve(static_cast<size_t>(total));
    for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<int> bits(static_cast<size_t>(len));
        for (int i = 0; i < len; ++i) {
            bits[static_cast<size_t>(i)] = static_cast<int>((code >> (len - 1 - i)) & 1u);
        }
        out.push_back(std::move(bits));
    }
    return out;
}

std::vector<TargetFunction> enumerate_target_functions(const InputSpace& space,
                                                       std::uint64_t budget) {
    auto bit_vectors = enumerate_bit_vectors(space.size(), budget);
    std::vector<TargetFunction> out;
    out.reserve(bit_vectors.size());
    for (auto& bits : bit_vectors) {
        out.emplace_back(space, std::move(bits));
    }
    return out;
}

std::vector<std::pair<TrainingSet, Rational>> enumerate_training_sequences(
    const Distribution& pi, int m, const TargetFunction& f, std::uint64_t budget) {
    if (!(f.space() == pi.space())) {
        throw SpaceMismatch("enumerate_training_sequences: mismatched spaces");
    }
    if (m < 1) {
        throw PreconditionViolated("enumerate_training_sequences: m must be at least 1");
    }
    const auto& support = pi.support();
    const std::uint64_t count = sat_pow(support.size(), static_cast<unsigned>(m));
    if (sat_mul(count, static_cast<std::uint64_t>(m)) > budget) {
        throw BudgetExceeded("enumerate_training_sequences: |support|^m sequences exceed budget");
    }
    SequenceEnumerator seqs(support, m);
    std::vector<std::pair<TrainingSet, Rational>> out;
    out.reserve(static_cast<size_t>(count));
    for (std::uint64_t i = 0; i < count; ++i) {
        const auto seq = seqs.at(i);
        Rational prob(1);
        std::vector<LabeledPair> pairs;
        pairs.reserve(seq.size());
        for (int x : seq) {
            prob *= pi.weight(x);
            pairs.push_back({x, f.value(x)});
        }
        out.emplace_back(TrainingSet(pi.space(), std::move(pairs)), std::move(prob));
    }
    return out;
}

}  // namespace otslab
