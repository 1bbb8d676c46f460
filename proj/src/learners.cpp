#include "otslab/learners.hpp"

#include <charconv>

#include "otslab/mix.hpp"

namespace otslab {

namespace {

void require_bit(int value, const char* what) {
    if (value != 0 && value != 1) {
        throw ValidationError(std::string(what) + " must be 0 or 1, got " + std::to_string(value));
    }
}

}  // namespace

Learner memorizer(int default_label) {
    require_bit(default_label, "memorizer: default label");
    auto rule = [default_label](const TrainingSet& d) {
        std::vector<int> bits(static_cast<size_t>(d.space().size()), default_label);
        for (const auto& p : d.pairs()) {
            bits[static_cast<size_t>(p.input)] = p.label;
        }
        return Hypothesis(d.space(), std::move(bits));
    };
    return Learner("memorizer:default=" + std::to_string(default_label), std::move(rule));
}

Learner constant_learner(int label) {
    require_bit(label, "constant: label");
    auto rule = [label](const TrainingSet& d) {
        return Hypothesis(d.space(), std::vector<int>(static_cast<size_t>(d.space().size()), label));
    };
    return Learner("constant:label=" + std::to_string(label), std::move(rule));
}

Learner majority_learner(int tie_label) {
    require_bit(tie_label, "majority: tie label");
    auto rule = [tie_label](const TrainingSet& d) {
        int ones = 0;
        for (const auto& p : d.pairs()) ones += p.label;
        const int zeros = d.size() - ones;
        const int off_label = ones > zeros ? 1 : ones < zeros ? 0 : tie_label;
        std::vector<int> bits(static_cast<size_t>(d.space().size()), off_label);
        for (const auto& p : d.pairs()) {
            bits[static_cast<size_t>(p.input)] = p.label;
        }
        return Hypothesis(d.space(), std::move(bits));
    };
    return Learner("majority:tie=" + std::to_string(tie_label), std::move(rule));
}

Learner hash_learner(std::uint64_t seed) {
    auto rule = [seed](const TrainingSet& d) {
        std::uint64_t digest = splitmix64(seed);
        for (const auto& p : d.pairs()) {
            const auto pair_code =
                2 * static_cast<std::uint64_t>(p.input) + static_cast<std::uint64_t>(p.label) + 1;
            digest = splitmix64(digest ^ splitmix64(pair_code));
        }
        std::vector<int> bits(static_cast<size_t>(d.space().size()));
        for (int x = 0; x < d.space().size(); ++x) {
            bits[static_cast<size_t>(x)] = static_cast<int>(
                splitmix64(digest ^ (static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ULL)) & 1u);
        }
        for (const auto& p : d.pairs()) {
            bits[static_cast<size_t>(p.input)] = p.label;
        }
        return Hypothesis(d.space(), std::move(bits));
    };
    return Learner("hash:seed=" + std::to_string(seed), std::move(rule));
}

std::vector<Learner> default_zoo() {
    return {
        memorizer(0),       memorizer(1),        constant_learner(0), constant_learner(1),
        majority_learner(0), majority_learner(1), hash_learner(7),     hash_learner(2026),
    };
}

namespace {

std::string available_specs() {
    std::string out;
    for (const auto& doc : learner_catalog()) {
        if (!out.empty()) out += ", ";
        out += doc.spec;
    }
    return out;
}

int parse_bit_param(std::string_view params, std::string_view key, std::string_view spec) {
    const std::string expected = std::string(key) + "=";
    if (params.substr(0, expected.size()) != expected || params.size() != expected.size() + 1 ||
        (params.back() != '0' && params.back() != '1')) {
        throw ValidationError("bad learner parameters in '" + std::string(spec) + "'; expected " +
                              expected + "<0|1>");
    }
    return params.back() - '0';
}

}  // namespace

Learner make_learner(std::string_view spec) {
    const auto colon = spec.find(':');
    const std::string_view name = spec.substr(0, colon);
    const std::string_view params =
        colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
    if (name == "memorizer") {
        return memorizer(parse_bit_param(params, "default", spec));
    }
    if (name == "constant") {
        return constant_learner(parse_bit_param(params, "label", spec));
    }
    if (name == "majority") {
        return majority_learner(parse_bit_param(params, "tie", spec));
    }
    if (name == "hash") {
        const std::string prefix = "seed=";
        if (params.substr(0, prefix.size()) == prefix) {
            const auto digits = params.substr(prefix.size());
            std::uint64_t seed = 0;
            const auto [ptr, ec] =
                std::from_chars(digits.data(), digits.data() + digits.size(), seed);
            if (ec == std::errc{} && ptr == digits.data() + digits.size() && !digits.empty()) {
                return hash_learner(seed);
            }
        }
        throw ValidationError("bad learner parameters in '" + std::string(spec) +
                              "'; expected seed=<unsigned integer>");
    }
    throw ValidationError("unknown learner '" + std::string(name) +
                          "'; available: " + available_specs());
}

std::vector<LearnerDoc> learner_catalog() {
    return {
        {"memorizer:default=<0|1>", "memorize training labels; predict the default elsewhere"},
        {"constant:label=<0|1>", "predict the same label everywhere; ignores the data"},
        {"majority:tie=<0|1>", "memorize; predict the majority training label elsewhere"},
        {"hash:seed=<uint>", "memorize; elsewhere a seeded hash of the point and the data"},
    };
}

}  // namespace otslab
