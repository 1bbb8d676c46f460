// Acceptance suite: every release gate in one binary, one line per gate.
// Exact gates compare Rationals for equality; Monte Carlo gates use a 4-sigma
// band around the exact value. Exit 0 iff every gate passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "otslab/cli.hpp"
#include "otslab/learners.hpp"
#include "otslab/nfl.hpp"

using namespace otslab;

namespace {

struct Gate {
    std::string name;
    std::function<bool(std::string&)> check;  // fills a detail string
};

Distribution dyadic_full_support(int n) {
    // 1/2, 1/4, ..., 1/2^(n-1), 1/2^(n-1): full support, exact sum 1.
    std::vector<Rational> w;
    for (int x = 0; x < n - 1; ++x) w.push_back(Rational::one_over_pow2(static_cast<unsigned>(x + 1)));
    w.push_back(Rational::one_over_pow2(static_cast<unsigned>(n - 1)));
    return Distribution(InputSpace(n), std::move(w));
}

Distribution half_uniform(int n, bool first_half) {
    const int half = n / 2;
    std::vector<Rational> w(static_cast<size_t>(n));
    for (int x = 0; x < half; ++x) {
        w[static_cast<size_t>(first_half ? x : x + half)] = Rational(1, half);
    }
    return Distribution(InputSpace(n), std::move(w));
}

Distribution random_full_support(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<long> score(1, 9);
    std::vector<long> scores(static_cast<size_t>(n));
    long total = 0;
    for (auto& s : scores) {
        s = score(rng);
        total += s;
    }
    std::vector<Rational> w;
    for (long s : scores) w.emplace_back(s, total);
    return Distribution(InputSpace(n), std::move(w));
}

bool gate_nfl_equality(std::string& detail) {
    const std::vector<std::pair<int, int>> grid = {{3, 1}, {3, 2}, {4, 2}, {5, 2}, {5, 3}, {6, 2}};
    int cases = 0;
    for (const auto& [n, m] : grid) {
        for (const Distribution& pi : {Distribution::uniform(InputSpace(n)), dyadic_full_support(n)}) {
            for (const Learner& learner : default_zoo()) {
                const NflReport report = verify_nfl(learner, pi, m);
                ++cases;
                if (!report.equals_half || !(report.expectation.value == Rational(1, 2))) {
                    detail = learner.name() + " at n=" + std::to_string(n) +
                             " m=" + std::to_string(m) + " pi=" + pi.describe() + " gave " +
                             report.expectation.value.fraction_str();
                    return false;
                }
            }
        }
    }
    detail = std::to_string(cases) + " learner/pi/(n,m) configurations all equal 1/2 exactly";
    return true;
}

bool gate_hypothesis_checkers(std::string& detail) {
    int checks = 0;
    for (int n = 2; n <= 5; ++n) {
        for (int m = 1; m <= 3; ++m) {
            for (const Distribution& pi :
                 {Distribution::uniform(InputSpace(n)), dyadic_full_support(n)}) {
                if (!check_vertical(SamplingModel::iid(pi), pi.space(), m).holds) {
                    detail = "iid model flagged non-vertical at n=" + std::to_string(n) +
                             " m=" + std::to_string(m);
                    return false;
                }
                ++checks;
            }
        }
    }

    const InputSpace two(2);
    const SamplingModel counterexample = positive_conditional_model(two);
    const auto broken = check_vertical(counterexample, two, 1);
    const TrainingSet d(two, {{1, 1}});
    const bool witness_values_ok =
        counterexample.likelihood(d, TargetFunction(two, {0, 1})) == Rational(1) &&
        counterexample.likelihood(d, TargetFunction(two, {1, 1})) == Rational(1, 2);
    if (broken.holds || !broken.witness.has_value() || !witness_values_ok) {
        detail = "positive-conditional counterexample not detected at n=2 m=1";
        return false;
    }
    ++checks;

    for (const auto& [n, m] : std::vector<std::pair<int, int>>{{3, 2}, {4, 2}, {5, 3}}) {
        for (const Distribution& pi :
             {Distribution::uniform(InputSpace(n)), dyadic_full_support(n)}) {
            if (!support_condition_holds(ots_family(pi), pi, m).holds) {
                detail = "induced family failed the support condition at n=" + std::to_string(n);
                return false;
            }
            ++checks;
        }
    }
    for (const auto& [n, m] : std::vector<std::pair<int, int>>{{3, 1}, {4, 2}}) {
        const Distribution pi = Distribution::uniform(InputSpace(n));
        if (support_condition_holds(constant_family(pi), pi, m).holds) {
            detail = "full-support constant family passed the support condition";
            return false;
        }
        ++checks;
    }
    detail = std::to_string(checks) + " checker verdicts as required";
    return true;
}

bool gate_disjoint_fixed(std::string& detail) {
    int cases = 0;
    for (int n : {4, 6}) {
        const Distribution pi = half_uniform(n, true);
        const Distribution pibar = half_uniform(n, false);
        for (int m = 1; m <= 3; ++m) {
            for (const Learner& learner : default_zoo()) {
                const ExactResult r = expected_fixed_error(learner, pi, pibar, m);
                ++cases;
                if (!(r.value == Rational(1, 2))) {
                    detail = learner.name() + " at n=" + std::to_string(n) +
                             " m=" + std::to_string(m) + " gave " + r.value.fraction_str();
                    return false;
                }
            }
        }
    }
    detail = std::to_string(cases) + " disjoint-support runs all equal 1/2 exactly";
    return true;
}

bool gate_overlap_advantage(std::string& detail) {
    struct Spot {
        int n;
        int m;
        Rational expected;
    };
    const std::vector<Spot> spots = {{2, 1, Rational(1, 4)}, {8, 4, Rational(2401, 8192)}};
    for (const auto& spot : spots) {
        const Distribution pi = Distribution::uniform(InputSpace(spot.n));
        const ExactResult grouped = expected_fixed_error(memorizer(0), pi, pi, spot.m);
        const ExactResult brute =
            exact_expected_ots(memorizer(0), pi, constant_family(pi), spot.m);
        if (!(grouped.value == spot.expected) || !(brute.value == spot.expected)) {
            detail = "n=" + std::to_string(spot.n) + " m=" + std::to_string(spot.m) + " gave " +
                     grouped.value.fraction_str() + " (grouped) / " + brute.value.fraction_str() +
                     " (brute), expected " + spot.expected.fraction_str();
            return false;
        }
    }
    detail = "1/4 at (n=2,m=1) and 2401/8192 at (n=8,m=4), grouped and brute force agreeing";
    return true;
}

bool gate_large_n_trend(std::string& detail) {
    const auto rows = sweep_large_n(memorizer(0), 4, {5, 6, 7, 8}, SweepMode::exact, 1, 0);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (!(*rows[i].value < Rational(1, 2))) {
            detail = "row n=" + std::to_string(rows[i].n) + " not below 1/2";
            return false;
        }
        if (i > 0 && !(*rows[i - 1].value < *rows[i].value)) {
            detail = "rows not strictly increasing at n=" + std::to_string(rows[i].n);
            return false;
        }
    }
    detail = "m=4, n=5..8: strictly increasing, all strictly below 1/2";
    return true;
}

bool gate_engine_equivalence(std::string& detail) {
    std::mt19937_64 rng(20260808);
    std::uniform_int_distribution<int> n_pick(2, 5);
    std::uniform_int_distribution<int> m_pick(1, 3);
    const auto zoo = default_zoo();
    const int trials = 60;
    for (int trial = 0; trial < trials; ++trial) {
        const int n = n_pick(rng);
        const int m = m_pick(rng);
        const Distribution pi = random_full_support(rng, n);
        const Learner& learner = zoo[rng() % zoo.size()];
        // Families needing off-training mass require m < n.
        std::vector<TestDistributionFamily> candidates;
        if (m < n) {
            candidates.push_back(ots_family(pi));
            candidates.push_back(uniform_off_training_family(pi.space()));
        }
        candidates.push_back(constant_family(Distribution::uniform(pi.space())));
        candidates.push_back(constant_family(random_full_support(rng, n)));
        const TestDistributionFamily& family = candidates[rng() % candidates.size()];

        const ExactResult brute = exact_expected_ots(learner, pi, family, m);
        const ExactResult grouped = grouped_expected_ots(learner, pi, family, m);
        if (!(brute.value == grouped.value)) {
            detail = "engines disagree: " + learner.name() + " n=" + std::to_string(n) +
                     " m=" + std::to_string(m) + " pi=" + pi.describe() + " family=" +
                     family.name() + ": " + brute.value.fraction_str() + " vs " +
                     grouped.value.fraction_str();
            return false;
        }
    }
    detail = std::to_string(trials) + " random configurations, brute force == grouped exactly";
    return true;
}

bool gate_monte_carlo(std::string& detail) {
    const Distribution pi8 = Distribution::uniform(InputSpace(8));
    const MCEstimate induced =
        mc_expected_ots(memorizer(0), pi8, ots_family(pi8), 4, 100000, 20260808);
    const double gap_induced = std::abs(induced.estimate - 0.5);
    if (gap_induced > 4.0 * induced.std_error) {
        detail = "induced-family estimate off by " + std::to_string(gap_induced) + " > 4 sigma";
        return false;
    }
    const MCEstimate overlap =
        mc_expected_ots(memorizer(0), pi8, constant_family(pi8), 4, 100000, 20260808);
    const double target = Rational(2401, 8192).to_double();
    const double gap_overlap = std::abs(overlap.estimate - target);
    if (gap_overlap > 4.0 * overlap.std_error) {
        detail = "overlap estimate off by " + std::to_string(gap_overlap) + " > 4 sigma";
        return false;
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "estimates within 4 sigma: |%.5f - 0.5| <= %.5f, |%.5f - %.5f| <= %.5f",
                  induced.estimate, 4.0 * induced.std_error, overlap.estimate, target,
                  4.0 * overlap.std_error);
    detail = buf;
    return true;
}

bool gate_affine_overlap(std::string& detail) {
    const std::vector<Rational> grid = {Rational(0), Rational(1, 4), Rational(1, 2),
                                        Rational(3, 4), Rational(1)};
    const auto rows = sweep_overlap(memorizer(0), 4, 2, grid);
    const Rational at0 = *rows.front().value;
    const Rational at1 = *rows.back().value;
    for (const auto& row : rows) {
        const Rational expected = (Rational(1) - *row.lambda) * at0 + *row.lambda * at1;
        if (!(*row.value == expected)) {
            detail = "row lambda=" + row.lambda->str() + " is " + row.value->fraction_str() +
                     ", affine form says " + expected.fraction_str();
            return false;
        }
    }
    detail = "row(lambda) == (1-lambda)*row(0) + lambda*row(1) exactly on the 5-point grid";
    return true;
}

bool gate_reproducibility(std::string& detail) {
    const auto tmp = std::filesystem::temp_directory_path();
    const std::vector<std::string> config_texts = {
        "[experiment]\ncommand = verify\nn = 4\nm = 2\nlearner = hash:seed=7\n",
        "[experiment]\ncommand = estimate\nn = 6\nm = 3\nseed = 42\nsamples = 20000\nworkers = 2\n",
        "[experiment]\ncommand = sweep-n\nm = 3\nn-values = 4,5,6\nmode = auto\nseed = 5\n"
        "samples = 5000\n",
    };
    for (size_t i = 0; i < config_texts.size(); ++i) {
        ExperimentConfig config = parse_config(config_texts[i]);
        config.output = (tmp / ("otslab_accept_" + std::to_string(i) + ".csv")).string();
        const std::string first = run(config).csv;
        const std::string second = run(config).csv;
        std::filesystem::remove(config.output);
        if (first != second) {
            detail = "artifact " + std::to_string(i) + " differed between two identical runs";
            return false;
        }
    }
    detail = "verify, estimate, and sweep artifacts byte-identical across reruns";
    return true;
}

}  // namespace

int main() {
    const std::vector<Gate> gates = {
        {"1. NFL exact equality (induced family, full zoo)", gate_nfl_equality},
        {"2. hypothesis checkers (vertical + support)", gate_hypothesis_checkers},
        {"3. disjoint-support fixed test distribution", gate_disjoint_fixed},
        {"4. overlap advantage closed form", gate_overlap_advantage},
        {"5. large-n trend", gate_large_n_trend},
        {"6. engine equivalence on random configurations", gate_engine_equivalence},
        {"7. monte carlo consistency", gate_monte_carlo},
        {"8. affine-in-lambda exactness", gate_affine_overlap},
        {"9. byte-identical reproducibility", gate_reproducibility},
    };

    std::printf("otslab acceptance suite\n");
    int passed = 0;
    for (const auto& gate : gates) {
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = gate.check(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %s: %s (%.2f s)\n", ok ? "PASS" : "FAIL", gate.name.c_str(),
                    detail.c_str(), secs);
        if (ok) ++passed;
    }
    std::printf("RESULT: %d/%zu criteria passed\n", passed, gates.size());
    return passed == static_cast<int>(gates.size()) ? 0 : 1;
}
