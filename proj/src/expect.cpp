#include "otslab/expect.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <thread>

#include "otslab/mix.hpp"
#include "otslab/ots.hpp"

namespace otslab {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

int clamp_workers(int workers, std::uint64_t tasks) {
    if (workers < 1) {
        throw PreconditionViolated("workers must be at least 1");
    }
    const auto cap = static_cast<std::uint64_t>(workers);
    return static_cast<int>(cap < tasks ? cap : tasks);
}

// Runs chunk_sum over contiguous chunks of [0, tasks) on `workers` threads
// and combines the partial sums in chunk order. Rational addition is exact,
// associative, and commutative, so the result is identical to a sequential
// pass regardless of scheduling.
Rational parallel_exact_sum(std::uint64_t tasks, int workers,
                            const std::function<Rational(std::uint64_t, std::uint64_t)>& chunk_sum) {
    if (workers <= 1 || tasks <= 1) {
        return chunk_sum(0, tasks);
    }
    const auto w = static_cast<std::uint64_t>(workers);
    std::vector<Rational> partial(static_cast<size_t>(workers));
    std::vector<std::exception_ptr> failures(static_cast<size_t>(workers));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (std::uint64_t i = 0; i < w; ++i) {
        const std::uint64_t lo = tasks * i / w;
        const std::uint64_t hi = tasks * (i + 1) / w;
        pool.emplace_back([&, i, lo, hi] {
            try {
                partial[static_cast<size_t>(i)] = chunk_sum(lo, hi);
            } catch (...) {
                failures[static_cast<size_t>(i)] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& failure : failures) {
        if (failure) std::rethrow_exception(failure);
    }
    Rational total;
    for (const auto& p : partial) total += p;
    return total;
}

TrainingSet label_by_function(const InputSpace& space, const std::vector<int>& sequence,
                              const TargetFunction& f) {
    std::vector<LabeledPair> pairs;
    pairs.reserve(sequence.size());
    for (int x : sequence) {
        pairs.push_back({x, f.value(x)});
    }
    return TrainingSet(space, std::move(pairs));
}

}  // namespace

ExactResult exact_expected_ots(const Learner& learner, const Distribution& pi,
                               const TestDistributionFamily& family, int m,
                               const EngineOptions& options) {
    const auto start = Clock::now();
    if (m < 1) {
        throw PreconditionViolated("exact_expected_ots: m must be at least 1");
    }
    const InputSpace& space = pi.space();
    const int n = space.size();
    const auto& support = pi.support();
    const std::uint64_t seq_count = sat_pow(support.size(), static_cast<unsigned>(m));
    const std::uint64_t func_count = sat_pow(2, static_cast<unsigned>(n));
    const std::uint64_t pairs = sat_mul(func_count, seq_count);
    if (pairs > options.budget) {
        throw BudgetExceeded("exact_expected_ots: 2^n * |support|^m = " + std::to_string(pairs) +
                             " pairs exceed budget " + std::to_string(options.budget));
    }
    SequenceEnumerator seqs(support, m);

    auto chunk_sum = [&](std::uint64_t code_lo, std::uint64_t code_hi) {
        Rational acc;
        for (std::uint64_t code = code_lo; code < code_hi; ++code) {
            const TargetFunction f = TargetFunction::from_code(space, code);
            for (std::uint64_t i = 0; i < seq_count; ++i) {
                const auto seq = seqs.at(i);
                Rational prob(1);
                for (int x : seq) prob *= pi.weight(x);
                const TrainingSet d = label_by_function(space, seq, f);
                const Hypothesis h = learner(d);
                const Distribution test = family(d);
                acc += prob * ots_error(h, f, test);
            }
        }
        return acc;
    };

    const int workers = clamp_workers(options.workers, func_count);
    Rational total = parallel_exact_sum(func_count, workers, chunk_sum);
    total *= Rational::one_over_pow2(static_cast<unsigned>(n));
    return {std::move(total), pairs, seconds_since(start), "exact"};
}

ExactResult grouped_expected_ots(const Learner& learner, const Distribution& pi,
                                 const TestDistributionFamily& family, int m,
                                 const EngineOptions& options) {
    const auto start = Clock::now();
    if (m < 1) {
        throw PreconditionViolated("grouped_expected_ots: m must be at least 1");
    }
    const InputSpace& space = pi.space();
    const auto& support = pi.support();
    const std::uint64_t seq_count = sat_pow(support.size(), static_cast<unsigned>(m));
    const unsigned max_distinct =
        static_cast<unsigned>(std::min<std::size_t>(support.size(), static_cast<std::size_t>(m)));
    if (sat_mul(seq_count, sat_pow(2, max_distinct)) > options.budget) {
        throw BudgetExceeded("grouped_expected_ots: enumeration exceeds budget");
    }
    SequenceEnumerator seqs(support, m);
    const Rational half(1, 2);

    std::vector<std::uint64_t> chunk_pairs(static_cast<size_t>(std::max(options.workers, 1)), 0);
    std::atomic<size_t> slot{0};
    auto chunk_sum = [&](std::uint64_t lo, std::uint64_t hi) {
        const size_t my_slot = slot.fetch_add(1);
        Rational acc;
        std::uint64_t counted = 0;
        for (std::uint64_t i = lo; i < hi; ++i) {
            const auto seq = seqs.at(i);
            Rational prob(1);
            for (int x : seq) prob *= pi.weight(x);
            const auto distinct = distinct_sorted(seq);
            const auto k = static_cast<unsigned>(distinct.size());
            const std::uint64_t labelings = std::uint64_t{1} << k;
            const Rational label_prior = Rational::one_over_pow2(k);
            for (std::uint64_t code = 0; code < labelings; ++code) {
                const TrainingSet d = training_set_from_labeling(space, seq, distinct, code);
                const Hypothesis h = learner(d);
                const Distribution test = family(d);
                // Trained points disagree exactly when the hypothesis misses
                // the recorded label; each untrained point disagrees with
                // probability 1/2 under the fair unseen bits.
                Rational trained_mass;
                Rational trained_error;
                for (std::uint64_t j = 0; j < k; ++j) {
                    const int x = distinct[static_cast<size_t>(j)];
                    trained_mass += test.weight(x);
                    if (h.value(x) != static_cast<int>((code >> j) & 1u)) {
                        trained_error += test.weight(x);
                    }
                }
                const Rational off_mass = Rational(1) - trained_mass;
                acc += prob * label_prior * (trained_error + half * off_mass);
            }
            counted += labelings;
        }
        chunk_pairs[my_slot] = counted;
        return acc;
    };

    const int workers = clamp_workers(options.workers, seq_count);
    Rational total = parallel_exact_sum(seq_count, workers, chunk_sum);
    std::uint64_t pairs = 0;
    for (std::uint64_t c : chunk_pairs) pairs += c;
    return {std::move(total), pairs, seconds_since(start), "grouped"};
}

ExactResult expected_fixed_error(const Learner& learner, const Distribution& pi,
                                 const Distribution& pibar, int m, const EngineOptions& options) {
    if (!(pi.space() == pibar.space())) {
        throw SpaceMismatch("expected_fixed_error: mismatched spaces");
    }
    return grouped_expected_ots(learner, pi, constant_family(pibar), m, options);
}

namespace {

struct Welford {
    std::uint64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++count;
        const double delta = x - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (x - mean);
    }

    // Chan et al. pairwise merge; applied in worker order.
    void merge(const Welford& o) {
        if (o.count == 0) return;
        if (count == 0) {
            *this = o;
            return;
        }
        const double na = static_cast<double>(count);
        const double nb = static_cast<double>(o.count);
        const double delta = o.mean - mean;
        const double total = na + nb;
        mean += delta * nb / total;
        m2 += o.m2 + delta * delta * na * nb / total;
        count += o.count;
    }
};

}  // namespace

MCEstimate mc_expected_ots(const Learner& learner, const Distribution& pi,
                           const TestDistributionFamily& family, int m, std::uint64_t samples,
                           std::uint64_t seed, int workers) {
    if (samples < 1) {
        throw PreconditionViolated("mc_expected_ots: samples must be at least 1");
    }
    if (m < 1) {
        throw PreconditionViolated("mc_expected_ots: m must be at least 1");
    }
    if (workers < 1) {
        throw PreconditionViolated("mc_expected_ots: workers must be at least 1");
    }
    const InputSpace& space = pi.space();
    const CategoricalSampler sampler(pi);

    const auto w = static_cast<std::uint64_t>(workers);
    std::vector<Welford> partial(static_cast<size_t>(workers));
    std::vector<std::exception_ptr> failures(static_cast<size_t>(workers));

    auto worker_body = [&](int slot) {
        try {
            const std::uint64_t quota = samples / w + (static_cast<std::uint64_t>(slot) < samples % w ? 1 : 0);
            std::mt19937_64 rng(substream_seed(seed, slot));
            Welford stats;
            for (std::uint64_t s = 0; s < quota; ++s) {
                const TargetFunction f = random_target_function(space, rng);
                std::vector<LabeledPair> pairs;
                pairs.reserve(static_cast<size_t>(m));
                for (int i = 0; i < m; ++i) {
                    const int x = sampler.sample(rng);
                    pairs.push_back({x, f.value(x)});
                }
                const TrainingSet d(space, std::move(pairs));
                const Hypothesis h = learner(d);
                const Distribution test = family(d);
                stats.add(ots_error(h, f, test).to_double());
            }
            partial[static_cast<size_t>(slot)] = stats;
        } catch (...) {
            failures[static_cast<size_t>(slot)] = std::current_exception();
        }
    };

    if (workers == 1) {
        worker_body(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        for (int slot = 0; slot < workers; ++slot) {
            pool.emplace_back(worker_body, slot);
        }
        for (auto& t : pool) t.join();
    }
    for (const auto& failure : failures) {
        if (failure) std::rethrow_exception(failure);
    }

    Welford stats;
    for (const auto& p : partial) stats.merge(p);
    const double variance =
        stats.count > 1 ? stats.m2 / static_cast<double>(stats.count - 1) : 0.0;
    const double std_error = std::sqrt(variance / static_cast<double>(stats.count));
    return {stats.mean, std_error, samples, seed, workers};
}

}  // namespace otslab
