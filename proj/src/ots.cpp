#include "otslab/ots.hpp"

namespace otslab {

Distribution ots_induced(const Distribution& pi, const TrainingSet& d) {
    if (!(pi.space() == d.space())) {
        throw SpaceMismatch("ots_induced: training set and distribution use different spaces");
    }
    Rational off_mass;
    for (int x = 0; x < pi.size(); ++x) {
        if (!d.trained(x)) off_mass += pi.weight(x);
    }
    if (off_mass.is_zero()) {
        throw NoOffTrainingMass("ots_induced: trained inputs " + d.describe() +
                                " cover the support of pi");
    }
    std::vector<Rational> weights(static_cast<size_t>(pi.size()));
    for (int x = 0; x < pi.size(); ++x) {
        if (!d.trained(x)) {
            weights[static_cast<size_t>(x)] = pi.weight(x) / off_mass;
        }
    }
    return Distribution(pi.space(), std::move(weights));
}

Rational ots_error(const Hypothesis& h, const TargetFunction& f, const Distribution& test) {
    if (!(h.space() == f.space()) || !(f.space() == test.space())) {
        throw SpaceMismatch("ots_error: mismatched spaces");
    }
    Rational err;
    for (int x : test.support()) {
        if (h.value(x) != f.value(x)) {
            err += test.weight(x);
        }
    }
    return err;
}

bool disjoint_supports(const Distribution& pi, const Distribution& pibar) {
    if (!(pi.space() == pibar.space())) {
        throw SpaceMismatch("disjoint_supports: mismatched spaces");
    }
    for (int x : pi.support()) {
        if (!pibar.weight(x).is_zero()) return false;
    }
    return true;
}

SupportCheck support_condition_holds(const TestDistributionFamily& family, const Distribution& pi,
                                     int m, std::uint64_t budget) {
    if (m < 1) {
        throw PreconditionViolated("support_condition_holds: m must be at least 1");
    }
    const auto& support = pi.support();
    const std::uint64_t seq_count = sat_pow(support.size(), static_cast<unsigned>(m));
    const std::uint64_t cost = sat_mul(seq_count, sat_pow(2, static_cast<unsigned>(m)));
    if (cost > budget) {
        throw BudgetExceeded("support_condition_holds: enumeration exceeds budget");
    }
    SequenceEnumerator seqs(support, m);
    for (std::uint64_t i = 0; i < seq_count; ++i) {
        const auto seq = seqs.at(i);
        const auto distinct = distinct_sorted(seq);
        const std::uint64_t labelings = std::uint64_t{1} << distinct.size();
        for (std::uint64_t code = 0; code < labelings; ++code) {
            TrainingSet d = training_set_from_labeling(pi.space(), seq, distinct, code);
            const Distribution test = family(d);
            for (int x : distinct) {
                if (!test.weight(x).is_zero()) {
                    return {false, SupportWitness{std::move(d), x}};
                }
            }
        }
    }
    return {true, std::nullopt};
}

TestDistributionFamily ots_family(Distribution pi) {
    auto map = [pi](const TrainingSet& d) { return ots_induced(pi, d); };
    return TestDistributionFamily("ots-induced", FamilyKind::ots_induced, std::move(map));
}

TestDistributionFamily constant_family(Distribution pibar) {
    auto map = [pibar](const TrainingSet&) { return pibar; };
    return TestDistributionFamily("constant:" + pibar.describe(), FamilyKind::constant,
                                  std::move(map));
}

TestDistributionFamily uniform_off_training_family(InputSpace space) {
    auto map = [space](const TrainingSet& d) {
        if (!(d.space() == space)) {
            throw SpaceMismatch("uniform_off_training_family: mismatched spaces");
        }
        const int off = space.size() - static_cast<int>(d.trained_inputs().size());
        if (off == 0) {
            throw NoOffTrainingMass("uniform_off_training_family: training set covers the space");
        }
        std::vector<Rational> weights(static_cast<size_t>(space.size()));
        for (int x = 0; x < space.size(); ++x) {
            if (!d.trained(x)) weights[static_cast<size_t>(x)] = Rational(1, off);
        }
        return Distribution(space, std::move(weights));
    };
    return TestDistributionFamily("uniform-off-train", FamilyKind::custom, std::move(map));
}

}  // namespace otslab
