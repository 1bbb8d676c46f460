#include "otslab/nfl.hpp"

#include <algorithm>
#include <limits>

#include "otslab/mix.hpp"

namespace otslab {

VerticalCheck check_vertical(const SamplingModel& model, const InputSpace& space, int m,
                             std::uint64_t budget) {
    if (m < 1) {
        throw PreconditionViolated("check_vertical: m must be at least 1");
    }
    const int n = space.size();
    std::vector<int> all_inputs(static_cast<size_t>(n));
    for (int x = 0; x < n; ++x) all_inputs[static_cast<size_t>(x)] = x;

    const std::uint64_t seq_count = sat_pow(static_cast<std::uint64_t>(n), static_cast<unsigned>(m));
    const std::uint64_t cost = sat_mul(seq_count, sat_mul(sat_pow(2, static_cast<unsigned>(m)),
                                                          sat_pow(2, static_cast<unsigned>(n))));
    if (cost > budget) {
        throw BudgetExceeded("check_vertical: enumeration exceeds budget");
    }

    SequenceEnumerator seqs(all_inputs, m);
    for (std::uint64_t i = 0; i < seq_count; ++i) {
        const auto seq = seqs.at(i);
        const auto distinct = distinct_sorted(seq);
        const auto k = static_cast<unsigned>(distinct.size());
        for (std::uint64_t label_code = 0; label_code < (std::uint64_t{1} << k); ++label_code) {
            const TrainingSet d = training_set_from_labeling(space, seq, distinct, label_code);
            // Functions sharing a restriction to d_X must share a likelihood.
            // Iterate restrictions; within one, sweep the free bits.
            for (std::uint64_t rest = 0; rest < (std::uint64_t{1} << k); ++rest) {
                std::optional<TargetFunction> first;
                std::optional<Rational> first_p;
                const auto free_count = static_cast<unsigned>(n) - k;
                for (std::uint64_t free_bits = 0; free_bits < (std::uint64_t{1} << free_count);
                     ++free_bits) {
                    std::vector<int> bits(static_cast<size_t>(n));
                    for (unsigned j = 0; j < k; ++j) {
                        bits[static_cast<size_t>(distinct[j])] = static_cast<int>((rest >> j) & 1u);
                    }
                    unsigned fj = 0;
                    for (int x = 0; x < n; ++x) {
                        if (!std::binary_search(distinct.begin(), distinct.end(), x)) {
                            bits[static_cast<size_t>(x)] = static_cast<int>((free_bits >> fj) & 1u);
                            ++fj;
                        }
                    }
                    TargetFunction f(space, std::move(bits));
                    Rational p = model.likelihood(d, f);
                    if (!first) {
                        first = std::move(f);
                        first_p = std::move(p);
                    } else if (!(p == *first_p)) {
                        return {false, VerticalWitness{d, *first, std::move(f), *first_p,
                                                       std::move(p)}};
                    }
                }
            }
        }
    }
    return {true, std::nullopt};
}

SamplingModel positive_conditional_model(InputSpace space) {
    auto positives = [](const TargetFunction& f) {
        std::vector<int> pos;
        for (int x = 0; x < f.size(); ++x) {
            if (f.value(x) == 1) pos.push_back(x);
        }
        return pos;
    };
    auto likelihood = [space, positives](const TrainingSet& d, const TargetFunction& f) -> Rational {
        if (!(d.space() == space) || !(f.space() == space)) {
            throw SpaceMismatch("positive_conditional likelihood: mismatched spaces");
        }
        if (!consistent(d, f)) return Rational(0);
        const auto pos = positives(f);
        if (pos.empty()) return Rational(0);
        Rational p(1);
        const Rational per_draw(1, static_cast<long>(pos.size()));
        for (const auto& pair : d.pairs()) {
            if (!std::binary_search(pos.begin(), pos.end(), pair.input)) return Rational(0);
            p *= per_draw;
        }
        return p;
    };
    auto sampler = [space, positives](const TargetFunction& f, int m,
                                      std::mt19937_64& rng) -> TrainingSet {
        const auto pos = positives(f);
        if (pos.empty()) {
            throw PreconditionViolated("positive_conditional sampler: target has no positive points");
        }
        std::vector<LabeledPair> pairs;
        pairs.reserve(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i) {
            // Unbiased index: reject draws past the last complete multiple of size.
            std::uint64_t idx;
            const std::uint64_t size = pos.size();
            const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                        std::numeric_limits<std::uint64_t>::max() % size;
            do {
                idx = rng();
            } while (idx >= limit);
            const int x = pos[static_cast<size_t>(idx % size)];
            pairs.push_back({x, 1});
        }
        return TrainingSet(space, std::move(pairs));
    };
    return SamplingModel("positive-conditional", std::move(likelihood), std::move(sampler));
}

namespace {

NflReport report_for(const Learner& learner, const Distribution& pi, int m,
                     const TestDistributionFamily& family, const EngineOptions& options) {
    NflReport report;
    report.learner_name = learner.name();
    report.n = pi.size();
    report.m = m;
    report.pi_desc = pi.describe();
    report.family_desc = family.name();
    report.vertical = check_vertical(SamplingModel::iid(pi), pi.space(), m, options.budget);
    report.support = support_condition_holds(family, pi, m, options.budget);
    report.expectation = exact_expected_ots(learner, pi, family, m, options);
    report.equals_half = report.expectation.value == Rational(1, 2);
    return report;
}

}  // namespace

NflReport verify_nfl(const Learner& learner, const Distribution& pi, int m,
                     const EngineOptions& options) {
    if (static_cast<size_t>(m) >= pi.support().size()) {
        throw PreconditionViolated(
            "verify_nfl: m must be smaller than |support(pi)| so the induced test distribution "
            "exists for every positive-probability training set");
    }
    return report_for(learner, pi, m, ots_family(pi), options);
}

NflReport adversarial_family_demo(const Learner& learner, const Distribution& pi, int m,
                                  const TestDistributionFamily& family,
                                  const EngineOptions& options) {
    if (family.kind() != FamilyKind::custom) {
        throw PreconditionViolated("adversarial_family_demo: family kind must be custom");
    }
    return report_for(learner, pi, m, family, options);
}

std::vector<SweepRow> sweep_large_n(const Learner& learner, int m,
                                    const std::vector<int>& n_values, SweepMode mode,
                                    std::uint64_t seed, std::uint64_t samples,
                                    const EngineOptions& options) {
    if (n_values.empty()) {
        throw PreconditionViolated("sweep_large_n: need at least one n");
    }
    if (!std::is_sorted(n_values.begin(), n_values.end())) {
        throw PreconditionViolated("sweep_large_n: n values must be ascending");
    }
    std::vector<SweepRow> rows;
    rows.reserve(n_values.size());
    for (size_t r = 0; r < n_values.size(); ++r) {
        const int n = n_values[r];
        const Distribution pi = Distribution::uniform(InputSpace(n));
        SweepRow row;
        row.n = n;
        row.m = m;
        row.learner_name = learner.name();
        row.family_desc = "constant:uniform";
        const std::uint64_t exact_cost =
            sat_mul(sat_pow(static_cast<std::uint64_t>(n), static_cast<unsigned>(m)),
                    sat_pow(2, static_cast<unsigned>(std::min(n, m))));
        const bool use_exact =
            mode == SweepMode::exact || (mode == SweepMode::automatic && exact_cost <= options.budget);
        if (use_exact) {
            ExactResult res = expected_fixed_error(learner, pi, pi, m, options);
            row.engine = res.engine;
            row.value = std::move(res.value);
        } else {
            const std::uint64_t row_seed = substream_seed(seed, static_cast<int>(r));
            MCEstimate est = mc_expected_ots(learner, pi, constant_family(pi), m, samples, row_seed,
                                             options.workers);
            row.engine = "mc";
            row.estimate = est.estimate;
            row.std_error = est.std_error;
            row.samples = est.samples;
            row.seed = row_seed;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<SweepRow> sweep_overlap(const Learner& learner, int n, int m,
                                    const std::vector<Rational>& lambdas,
                                    const EngineOptions& options) {
    if (n < 2 || n % 2 != 0) {
        throw ValidationError("sweep_overlap: n must be even and at least 2");
    }
    const InputSpace space(n);
    const int half = n / 2;
    std::vector<Rational> train_w(static_cast<size_t>(n));
    std::vector<Rational> test_w(static_cast<size_t>(n));
    for (int x = 0; x < half; ++x) train_w[static_cast<size_t>(x)] = Rational(1, half);
    for (int x = half; x < n; ++x) test_w[static_cast<size_t>(x)] = Rational(1, half);
    const Distribution pi(space, std::move(train_w));
    const Distribution pibar0(space, std::move(test_w));

    std::vector<SweepRow> rows;
    rows.reserve(lambdas.size());
    for (const Rational& lambda : lambdas) {
        if (lambda.is_negative() || Rational(1) < lambda) {
            throw ValidationError("sweep_overlap: lambda " + lambda.str() + " outside [0, 1]");
        }
        const Rational keep = Rational(1) - lambda;
        std::vector<Rational> mix(static_cast<size_t>(n));
        for (int x = 0; x < n; ++x) {
            mix[static_cast<size_t>(x)] = keep * pibar0.weight(x) + lambda * pi.weight(x);
        }
        const Distribution pibar(space, std::move(mix));
        ExactResult res = expected_fixed_error(learner, pi, pibar, m, options);
        SweepRow row;
        row.n = n;
        row.m = m;
        row.learner_name = learner.name();
        row.family_desc = "mix:lambda=" + lambda.str();
        row.lambda = lambda;
        row.engine = res.engine;
        row.value = std::move(res.value);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace otslab
