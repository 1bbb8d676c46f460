#include "otslab/domain.hpp"

#include <map>
#include <random>

#include "doctest.h"

using namespace otslab;

namespace {

Distribution dist(std::initializer_list<Rational> weights) {
    std::vector<Rational> w(weights);
    const InputSpace space(static_cast<int>(w.size()));
    return Distribution(space, std::move(w));
}

}  // namespace

TEST_CASE("input spaces need at least two points") {
    CHECK(InputSpace(2).size() == 2);
    CHECK(InputSpace(16).size() == 16);
    CHECK_THROWS_AS(InputSpace(1), ValidationError);
    CHECK_THROWS_AS(InputSpace(0), ValidationError);
    CHECK_THROWS_AS(InputSpace(-3), ValidationError);
}

TEST_CASE("distribution construction validates weights exactly") {
    const Distribution u = dist({Rational(1, 2), Rational(1, 2)});
    CHECK(u.support() == std::vector<int>{0, 1});

    const Distribution point = dist({Rational(1), Rational(0), Rational(0)});
    CHECK(point.support() == std::vector<int>{0});

    CHECK_THROWS_AS(dist({Rational(1, 3), Rational(1, 3)}), WeightsDoNotSumToOne);
    CHECK_THROWS_AS(dist({Rational(1, 3), Rational(1, 3), Rational(1, 2)}), WeightsDoNotSumToOne);
    CHECK_THROWS_AS(dist({Rational(3, 2), Rational(-1, 2)}), NegativeWeight);
    CHECK_THROWS_AS(Distribution(InputSpace(3), {Rational(1, 2), Rational(1, 2)}), ValidationError);
}

TEST_CASE("distribution factories") {
    const Distribution u = Distribution::uniform(InputSpace(4));
    for (int x = 0; x < 4; ++x) CHECK(u.weight(x) == Rational(1, 4));
    CHECK(u.describe() == "1/4,1/4,1/4,1/4");

    const Distribution p = Distribution::point_mass(InputSpace(3), 1);
    CHECK(p.weight(1) == Rational(1));
    CHECK(p.support() == std::vector<int>{1});
    CHECK_THROWS_AS(Distribution::point_mass(InputSpace(3), 3), ValidationError);
}

TEST_CASE("bool functions: codes are lexicographic over bit strings") {
    const InputSpace space(3);
    CHECK(BoolFunction::from_code(space, 0).bit_string() == "000");
    CHECK(BoolFunction::from_code(space, 1).bit_string() == "001");
    CHECK(BoolFunction::from_code(space, 4).bit_string() == "100");
    CHECK(BoolFunction::from_code(space, 7).bit_string() == "111");
    for (std::uint64_t code = 0; code < 8; ++code) {
        CHECK(BoolFunction::from_code(space, code).code() == code);
    }
    CHECK(BoolFunction::from_code(space, 5).complement().bit_string() == "010");
    CHECK_THROWS_AS(BoolFunction(space, {0, 1, 2}), ValidationError);
    CHECK_THROWS_AS(BoolFunction(space, {0, 1}), ValidationError);
}

TEST_CASE("training sets enforce shape and label consistency") {
    const InputSpace space(3);
    const TrainingSet d(space, {{1, 1}, {0, 0}, {1, 1}});
    CHECK(d.size() == 3);
    CHECK(d.trained_inputs() == std::vector<int>{0, 1});
    CHECK(d.trained(1));
    CHECK(!d.trained(2));
    CHECK(d.label_for(0) == 0);
    CHECK(d.label_for(2) == std::nullopt);
    CHECK(d.describe() == "(1:1)(0:0)(1:1)");

    CHECK_THROWS_AS(TrainingSet(space, {}), ValidationError);
    CHECK_THROWS_AS(TrainingSet(space, {{3, 0}}), ValidationError);
    CHECK_THROWS_AS(TrainingSet(space, {{0, 2}}), ValidationError);
    CHECK_THROWS_AS(TrainingSet(space, {{1, 1}, {1, 0}}), ValidationError);
}

TEST_CASE("consistent checks noise-free evaluation") {
    const InputSpace space(3);
    const TargetFunction f(space, {0, 1, 0});
    CHECK(consistent(TrainingSet(space, {{1, 1}}), f));
    CHECK(!consistent(TrainingSet(space, {{1, 0}}), f));

    const InputSpace two(2);
    const TargetFunction g(two, {0, 1});
    CHECK(consistent(TrainingSet(two, {{0, 0}, {1, 1}, {0, 0}}), g));
    CHECK_THROWS_AS(consistent(TrainingSet(space, {{1, 1}}), g), SpaceMismatch);
}

TEST_CASE("bit vector enumeration covers the base case") {
    const auto single = enumerate_bit_vectors(1);
    REQUIRE(single.size() == 2);
    CHECK(single[0] == std::vector<int>{0});
    CHECK(single[1] == std::vector<int>{1});
    CHECK_THROWS_AS(enumerate_bit_vectors(0), PreconditionViolated);
}

TEST_CASE("target function enumeration is complete and canonical") {
    const auto fs = enumerate_target_functions(InputSpace(3));
    REQUIRE(fs.size() == 8);
    CHECK(fs.front().bit_string() == "000");
    CHECK(fs.back().bit_string() == "111");
    for (std::uint64_t code = 0; code < 8; ++code) {
        CHECK(fs[static_cast<size_t>(code)].code() == code);
    }
    // 20 * 2^20 materialized bits exceed the default 2^24 cap.
    CHECK_THROWS_AS(enumerate_target_functions(InputSpace(20)), BudgetExceeded);
    CHECK(enumerate_target_functions(InputSpace(16)).size() == 65536);
}

TEST_CASE("training sequence enumeration: examples") {
    SUBCASE("uniform pi, n=2, m=1") {
        const Distribution pi = Distribution::uniform(InputSpace(2));
        const TargetFunction f(pi.space(), {0, 1});
        const auto seqs = enumerate_training_sequences(pi, 1, f);
        REQUIRE(seqs.size() == 2);
        CHECK(seqs[0].first.pairs() == std::vector<LabeledPair>{{0, 0}});
        CHECK(seqs[0].second == Rational(1, 2));
        CHECK(seqs[1].first.pairs() == std::vector<LabeledPair>{{1, 1}});
        CHECK(seqs[1].second == Rational(1, 2));
    }
    SUBCASE("point mass pi visits only its atom") {
        const Distribution pi = Distribution::point_mass(InputSpace(2), 0);
        const TargetFunction f(pi.space(), {1, 0});
        const auto seqs = enumerate_training_sequences(pi, 2, f);
        REQUIRE(seqs.size() == 1);
        CHECK(seqs[0].first.pairs() == std::vector<LabeledPair>{{0, 1}, {0, 1}});
        CHECK(seqs[0].second == Rational(1));
    }
    SUBCASE("uniform pi, n=3, m=2: nine equally likely sequences") {
        const Distribution pi = Distribution::uniform(InputSpace(3));
        const TargetFunction f(pi.space(), {1, 0, 1});
        const auto seqs = enumerate_training_sequences(pi, 2, f);
        REQUIRE(seqs.size() == 9);
        Rational sum;
        for (const auto& [d, prob] : seqs) {
            CHECK(prob == Rational(1, 9));
            CHECK(consistent(d, f));
            sum += prob;
        }
        CHECK(sum == Rational(1));
    }
    SUBCASE("budget and precondition errors") {
        const Distribution pi = Distribution::uniform(InputSpace(8));
        const TargetFunction f = BoolFunction::from_code(pi.space(), 0);
        CHECK_THROWS_AS(enumerate_training_sequences(pi, 0, f), PreconditionViolated);
        CHECK_THROWS_AS(enumerate_training_sequences(pi, 9, f), BudgetExceeded);
    }
}

TEST_CASE("property: sequence probabilities always sum to exactly 1") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> n_pick(2, 5);
    std::uniform_int_distribution<int> m_pick(1, 3);
    std::uniform_int_distribution<long> score(1, 9);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = n_pick(rng);
        // Random weights, some zero, normalized exactly.
        std::vector<long> scores(static_cast<size_t>(n));
        long total = 0;
        for (auto& s : scores) {
            s = score(rng) > 7 ? 0 : score(rng);
            total += s;
        }
        if (total == 0) {
            scores[0] = 1;
            total = 1;
        }
        std::vector<Rational> weights;
        for (long s : scores) weights.emplace_back(s, total);
        const Distribution pi(InputSpace(n), std::move(weights));
        const TargetFunction f =
            BoolFunction::from_code(pi.space(), rng() & ((std::uint64_t{1} << n) - 1));
        const int m = m_pick(rng);
        Rational sum;
        for (const auto& [d, prob] : enumerate_training_sequences(pi, m, f)) {
            CHECK(consistent(d, f));
            sum += prob;
        }
        CHECK(sum == Rational(1));
    }
}

TEST_CASE("sequence enumerator is lexicographic and random-access") {
    const SequenceEnumerator seqs({2, 5, 7}, 2);
    CHECK(seqs.count() == 9);
    CHECK(seqs.at(0) == std::vector<int>{2, 2});
    CHECK(seqs.at(1) == std::vector<int>{2, 5});
    CHECK(seqs.at(3) == std::vector<int>{5, 2});
    CHECK(seqs.at(8) == std::vector<int>{7, 7});
}

TEST_CASE("labelings from codes are self-consistent") {
    const InputSpace space(4);
    const std::vector<int> seq = {2, 0, 2};
    const auto distinct = distinct_sorted(seq);
    CHECK(distinct == std::vector<int>{0, 2});
    // Bit 0 labels input 0, bit 1 labels input 2.
    const TrainingSet d = training_set_from_labeling(space, seq, distinct, 0b10);
    CHECK(d.pairs() == std::vector<LabeledPair>{{2, 1}, {0, 0}, {2, 1}});
}

TEST_CASE("categorical sampler draws the exact distribution") {
    std::mt19937_64 rng(99);
    SUBCASE("point mass never misses") {
        const CategoricalSampler sampler(Distribution::point_mass(InputSpace(3), 1));
        for (int i = 0; i < 100; ++i) CHECK(sampler.sample(rng) == 1);
    }
    SUBCASE("frequencies track the weights") {
        const Distribution pi = dist({Rational(1, 2), Rational(1, 3), Rational(1, 6)});
        const CategoricalSampler sampler(pi);
        std::map<int, int> counts;
        const int draws = 60000;
        for (int i = 0; i < draws; ++i) ++counts[sampler.sample(rng)];
        CHECK(counts[0] == doctest::Approx(draws * 0.5).epsilon(0.05));
        CHECK(counts[1] == doctest::Approx(draws / 3.0).epsilon(0.05));
        CHECK(counts[2] == doctest::Approx(draws / 6.0).epsilon(0.05));
    }
}

TEST_CASE("random target functions are deterministic per seed") {
    const InputSpace space(16);
    std::mt19937_64 a(42);
    std::mt19937_64 b(42);
    for (int i = 0; i < 10; ++i) {
        CHECK(random_target_function(space, a) == random_target_function(space, b));
    }
}

TEST_CASE("iid sampling model: likelihood and normalization") {
    const Distribution pi = dist({Rational(1, 2), Rational(1, 4), Rational(1, 4)});
    const SamplingModel model = SamplingModel::iid(pi);
    const TargetFunction f(pi.space(), {0, 1, 1});

    CHECK(model.likelihood(TrainingSet(pi.space(), {{0, 0}, {1, 1}}), f) == Rational(1, 8));
    CHECK(model.likelihood(TrainingSet(pi.space(), {{0, 1}}), f) == Rational(0));

    // Sum of P(d|f) over every self-consistent training set of size m is 1.
    const int m = 2;
    SequenceEnumerator seqs({0, 1, 2}, m);
    Rational total;
    for (std::uint64_t i = 0; i < seqs.count(); ++i) {
        const auto seq = seqs.at(i);
        const auto distinct = distinct_sorted(seq);
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << distinct.size()); ++code) {
            total += model.likelihood(training_set_from_labeling(pi.space(), seq, distinct, code), f);
        }
    }
    CHECK(total == Rational(1));

    // Sampled training sets are consistent with f and reproducible by seed.
    std::mt19937_64 r1(5);
    std::mt19937_64 r2(5);
    for (int i = 0; i < 20; ++i) {
        const TrainingSet d1 = model.sample(f, 3, r1);
        const TrainingSet d2 = model.sample(f, 3, r2);
        CHECK(d1 == d2);
        CHECK(consistent(d1, f));
    }
}
