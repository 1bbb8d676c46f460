#include "otslab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "otslab/learners.hpp"
#include "otslab/nfl.hpp"

namespace otslab {

namespace {

const std::vector<std::pair<std::string, std::string>>& command_table() {
    static const std::vector<std::pair<std::string, std::string>> table = {
        {"verify", "hypothesis checks plus the exact expected OTS error"},
        {"sweep-n", "fixed test distribution error across growing input spaces"},
        {"sweep-overlap", "error as the test distribution overlaps the training one"},
        {"estimate", "seeded Monte Carlo estimate with standard error"},
        {"check-model", "vertical-likelihood check for a sampling model"},
        {"list-learners", "available learner specs"},
    };
    return table;
}

std::vector<std::string> command_names() {
    std::vector<std::string> names;
    for (const auto& [name, help] : command_table()) names.push_back(name);
    return names;
}

bool known_command(const std::string& name) {
    for (const auto& [known, help] : command_table()) {
        if (known == name) return true;
    }
    return false;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string trim(std::string_view s) {
    size_t b = 0;
    size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

long parse_long(const std::string& value, int line) {
    long v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size() || value.empty()) {
        throw ParseError("expected an integer, got '" + value + "'", line);
    }
    return v;
}

std::uint64_t parse_u64(const std::string& value, int line) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size() || value.empty()) {
        throw ParseError("expected an unsigned integer, got '" + value + "'", line);
    }
    return v;
}

// Canonical key/value view of a config; emit_config and the CSV metadata
// header both render from this list, so the two never drift apart.
std::vector<std::pair<std::string, std::string>> canonical_entries(const ExperimentConfig& c) {
    std::vector<std::pair<std::string, std::string>> entries;
    entries.emplace_back("command", c.command);
    if (c.n != 0) entries.emplace_back("n", std::to_string(c.n));
    if (c.m != 0) entries.emplace_back("m", std::to_string(c.m));
    entries.emplace_back("learner", c.learner);
    entries.emplace_back("pi", c.pi);
    entries.emplace_back("family", c.family);
    entries.emplace_back("model", c.model);
    if (!c.n_values.empty()) {
        std::vector<std::string> parts;
        for (int n : c.n_values) parts.push_back(std::to_string(n));
        entries.emplace_back("n-values", join(parts, ","));
    }
    entries.emplace_back("mode", c.mode);
    if (!c.lambdas.empty()) {
        std::vector<std::string> parts;
        for (const auto& l : c.lambdas) parts.push_back(l.str());
        entries.emplace_back("lambdas", join(parts, ","));
    }
    entries.emplace_back("seed", std::to_string(c.seed));
    entries.emplace_back("samples", std::to_string(c.samples));
    entries.emplace_back("workers", std::to_string(c.workers));
    entries.emplace_back("budget", std::to_string(c.budget));
    entries.emplace_back("output", c.output);
    return entries;
}

}  // namespace

Distribution resolve_pi(const std::string& spec, int n) {
    const InputSpace space(n);
    if (spec == "uniform") {
        return Distribution::uniform(space);
    }
    const auto parts = split(spec, ',');
    if (static_cast<int>(parts.size()) != n) {
        throw ValidationError("pi weights: expected " + std::to_string(n) + " entries, got " +
                              std::to_string(parts.size()));
    }
    std::vector<Rational> weights;
    weights.reserve(parts.size());
    for (const auto& part : parts) {
        try {
            weights.push_back(Rational::from_string(part));
        } catch (const std::invalid_argument& e) {
            throw ValidationError(std::string("pi weights: ") + e.what());
        }
    }
    return Distribution(space, std::move(weights));
}

TestDistributionFamily resolve_family(const std::string& spec, const Distribution& pi) {
    if (spec == "ots-induced") {
        return ots_family(pi);
    }
    if (spec == "uniform-off-train") {
        return uniform_off_training_family(pi.space());
    }
    const std::string prefix = "constant:";
    if (spec.rfind(prefix, 0) == 0) {
        const std::string rest = spec.substr(prefix.size());
        const Distribution pibar = resolve_pi(rest, pi.size());
        return constant_family(pibar);
    }
    throw ValidationError("unknown family '" + spec +
                          "'; available: ots-induced, constant:uniform, constant:<weights>, "
                          "uniform-off-train");
}

namespace {

// Rewraps a family as kind custom for the adversary pipeline, which treats
// every caller-supplied family as a d-dependent adversary.
TestDistributionFamily as_custom(const TestDistributionFamily& family) {
    return TestDistributionFamily(family.name(), FamilyKind::custom,
                                  [family](const TrainingSet& d) { return family(d); });
}

SweepMode parse_mode(const std::string& mode) {
    if (mode == "exact") return SweepMode::exact;
    if (mode == "mc") return SweepMode::mc;
    if (mode == "auto") return SweepMode::automatic;
    throw ValidationError("mode must be exact, mc, or auto; got '" + mode + "'");
}

void require_set(int value, const char* key, const std::string& command) {
    if (value == 0) {
        throw ValidationError(command + " requires " + key + " to be set");
    }
}

}  // namespace

void validate_config(const ExperimentConfig& c) {
    if (c.command.empty() || !known_command(c.command)) {
        throw ValidationError("command must be one of: " + join(command_names(), ", ") +
                              (c.command.empty() ? "" : "; got '" + c.command + "'"));
    }
    if (c.n != 0 && c.n < 2) {
        throw ValidationError("n must be at least 2, got " + std::to_string(c.n));
    }
    if (c.m < 0) {
        throw ValidationError("m must be at least 1, got " + std::to_string(c.m));
    }
    if (c.workers < 1) {
        throw ValidationError("workers must be at least 1, got " + std::to_string(c.workers));
    }
    if (c.samples < 1) {
        throw ValidationError("samples must be at least 1");
    }
    if (c.budget < 1) {
        throw ValidationError("budget must be at least 1");
    }
    parse_mode(c.mode);
    if (c.model != "iid" && c.model != "positive-conditional") {
        throw ValidationError("model must be iid or positive-conditional; got '" + c.model + "'");
    }
    make_learner(c.learner);

    if (c.command == "verify" || c.command == "estimate" || c.command == "check-model") {
        require_set(c.n, "n", c.command);
        require_set(c.m, "m", c.command);
        const Distribution pi = resolve_pi(c.pi, c.n);
        if (c.command != "check-model") {
            resolve_family(c.family, pi);
        }
        if (c.command == "verify" && c.family == "ots-induced" &&
            static_cast<size_t>(c.m) >= pi.support().size()) {
            throw ValidationError("verify requires m < |support(pi)|; got m = " +
                                  std::to_string(c.m) + " with |support| = " +
                                  std::to_string(pi.support().size()));
        }
    } else if (c.command == "sweep-n") {
        require_set(c.m, "m", c.command);
        if (c.n_values.empty()) {
            throw ValidationError("sweep-n requires n-values");
        }
        for (int n : c.n_values) {
            if (n < 2) throw ValidationError("sweep-n: every n must be at least 2");
        }
        if (!std::is_sorted(c.n_values.begin(), c.n_values.end())) {
            throw ValidationError("sweep-n: n-values must be ascending");
        }
    } else if (c.command == "sweep-overlap") {
        require_set(c.n, "n", c.command);
        require_set(c.m, "m", c.command);
        if (c.n % 2 != 0) {
            throw ValidationError("sweep-overlap requires an even n, got " + std::to_string(c.n));
        }
        if (c.lambdas.empty()) {
            throw ValidationError("sweep-overlap requires lambdas");
        }
        for (const auto& l : c.lambdas) {
            if (l.is_negative() || Rational(1) < l) {
                throw ValidationError("sweep-overlap: lambda " + l.str() + " outside [0, 1]");
            }
        }
    }
}

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig config;
    bool in_section = false;
    std::vector<std::string> seen_keys;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ParseError("unterminated section header", line_no);
            }
            const std::string section = trim(line.substr(1, line.size() - 2));
            if (section != "experiment") {
                throw ParseError("unknown section '" + section + "'", line_no);
            }
            in_section = true;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError("expected 'key = value'", line_no);
        }
        if (!in_section) {
            throw ParseError("key outside the [experiment] section", line_no);
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ParseError("missing key before '='", line_no);
        }
        if (value.empty()) {
            throw ParseError("missing value for key '" + key + "'", line_no);
        }
        if (std::find(seen_keys.begin(), seen_keys.end(), key) != seen_keys.end()) {
            throw ParseError("duplicate key '" + key + "'", line_no);
        }
        seen_keys.push_back(key);

        if (key == "command") {
            config.command = value;
        } else if (key == "n") {
            config.n = static_cast<int>(parse_long(value, line_no));
        } else if (key == "m") {
            config.m = static_cast<int>(parse_long(value, line_no));
        } else if (key == "learner") {
            config.learner = value;
        } else if (key == "pi") {
            config.pi = value;
        } else if (key == "family") {
            config.family = value;
        } else if (key == "model") {
            config.model = value;
        } else if (key == "n-values") {
            config.n_values.clear();
            for (const auto& part : split(value, ',')) {
                config.n_values.push_back(static_cast<int>(parse_long(trim(part), line_no)));
            }
        } else if (key == "mode") {
            config.mode = value;
        } else if (key == "lambdas") {
            config.lambdas.clear();
            for (const auto& part : split(value, ',')) {
                try {
                    config.lambdas.push_back(Rational::from_string(trim(part)));
                } catch (const std::invalid_argument&) {
                    throw ParseError("bad rational '" + trim(part) + "'", line_no);
                }
            }
        } else if (key == "seed") {
            config.seed = parse_u64(value, line_no);
        } else if (key == "samples") {
            config.samples = parse_u64(value, line_no);
        } else if (key == "workers") {
            config.workers = static_cast<int>(parse_long(value, line_no));
        } else if (key == "budget") {
            config.budget = parse_u64(value, line_no);
        } else if (key == "output") {
            config.output = value;
        } else {
            throw ParseError("unknown key '" + key + "'", line_no);
        }
    }
    // Grid defaults, resolved before validation so they are explicit in any
    // emitted artifact.
    if (config.command == "sweep-overlap" && config.lambdas.empty()) {
        config.lambdas = {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)};
    }
    validate_config(config);
    return config;
}

std::string emit_config(const ExperimentConfig& config) {
    std::string out = "[experiment]\n";
    for (const auto& [key, value] : canonical_entries(config)) {
        out += key + " = " + value + "\n";
    }
    return out;
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

const char* bool_str(bool b) { return b ? "true" : "false"; }

// Standard CSV quoting: wrap fields containing separators or quotes, double
// any embedded quote. Exact weight lists like "1/2,1/4,1/4" need this.
std::string csv_field(const std::string& value) {
    if (value.find_first_of(",\"\n") == std::string::npos) {
        return value;
    }
    std::string quoted = "\"";
    for (char c : value) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string metadata_block(const ExperimentConfig& config) {
    std::string out = std::string("# version: ") + kVersion + "\n";
    for (const auto& [key, value] : canonical_entries(config)) {
        out += "# " + key + ": " + value + "\n";
    }
    return out;
}

struct CommandResult {
    std::string table;  // header row + data rows
    int exit_code = kExitOk;
    std::string engine;  // optional "# engine:" metadata line
};

CommandResult run_verify(const ExperimentConfig& c) {
    const Learner learner = make_learner(c.learner);
    const Distribution pi = resolve_pi(c.pi, c.n);
    const EngineOptions options{c.budget, c.workers};
    const NflReport report =
        c.family == "ots-induced"
            ? verify_nfl(learner, pi, c.m, options)
            : adversarial_family_demo(learner, pi, c.m, as_custom(resolve_family(c.family, pi)),
                                      options);
    std::string table = "n,m,learner,pi,family,vertical,support,value,value_decimal,equals_half,pairs\n";
    table += std::to_string(report.n) + "," + std::to_string(report.m) + "," +
             csv_field(report.learner_name) + "," + csv_field(c.pi) + "," + csv_field(c.family) +
             "," + bool_str(report.vertical.holds) + "," +
             bool_str(report.support.holds) + "," + report.expectation.value.fraction_str() + "," +
             report.expectation.value.decimal_str() + "," + bool_str(report.equals_half) + "," +
             std::to_string(report.expectation.pairs) + "\n";
    const bool hypotheses_hold = report.vertical.holds && report.support.holds;
    const int exit_code = hypotheses_hold && !report.equals_half ? kExitTheoremCheck : kExitOk;
    return {std::move(table), exit_code, report.expectation.engine};
}

CommandResult run_check_model(const ExperimentConfig& c) {
    const InputSpace space(c.n);
    const Distribution pi = resolve_pi(c.pi, c.n);
    const SamplingModel model =
        c.model == "iid" ? SamplingModel::iid(pi) : positive_conditional_model(space);
    const VerticalCheck check = check_vertical(model, space, c.m, c.budget);
    std::string witness;
    if (check.witness) {
        const auto& w = *check.witness;
        witness = "d=" + w.d.describe() + " f=" + w.f.bit_string() + " f'=" +
                  w.f_prime.bit_string() + " p=" + w.p_f.str() + " p'=" + w.p_f_prime.str();
    }
    std::string table = "model,n,m,vertical,witness\n";
    table += c.model + "," + std::to_string(c.n) + "," + std::to_string(c.m) + "," +
             bool_str(check.holds) + "," + csv_field(witness) + "\n";
    return {std::move(table), kExitOk, {}};
}

CommandResult run_estimate(const ExperimentConfig& c) {
    const Learner learner = make_learner(c.learner);
    const Distribution pi = resolve_pi(c.pi, c.n);
    const TestDistributionFamily family = resolve_family(c.family, pi);
    const MCEstimate est =
        mc_expected_ots(learner, pi, family, c.m, c.samples, c.seed, c.workers);
    std::string table = "n,m,learner,pi,family,samples,seed,workers,estimate,stderr\n";
    table += std::to_string(c.n) + "," + std::to_string(c.m) + "," + csv_field(learner.name()) +
             "," + csv_field(c.pi) + "," + csv_field(c.family) + "," +
             std::to_string(est.samples) + "," + std::to_string(est.seed) +
             "," + std::to_string(est.workers) + "," + fmt_double(est.estimate) + "," +
             fmt_double(est.std_error) + "\n";
    return {std::move(table), kExitOk, "mc"};
}

CommandResult run_sweep_n(const ExperimentConfig& c) {
    const Learner learner = make_learner(c.learner);
    const EngineOptions options{c.budget, c.workers};
    const auto rows =
        sweep_large_n(learner, c.m, c.n_values, parse_mode(c.mode), c.seed, c.samples, options);
    std::string table = "n,m,learner,family,engine,value,value_decimal,estimate,stderr,samples,seed\n";
    for (const auto& row : rows) {
        table += std::to_string(row.n) + "," + std::to_string(row.m) + "," +
                 csv_field(row.learner_name) + "," + csv_field(row.family_desc) + "," +
                 row.engine + ",";
        if (row.value) {
            table += row.value->fraction_str() + "," + row.value->decimal_str() + ",,,,";
        } else {
            table += ",," + fmt_double(*row.estimate) + "," + fmt_double(*row.std_error) + "," +
                     std::to_string(row.samples) + "," + std::to_string(row.seed);
        }
        table += "\n";
    }
    return {std::move(table), kExitOk, {}};
}

CommandResult run_sweep_overlap(const ExperimentConfig& c) {
    const Learner learner = make_learner(c.learner);
    const EngineOptions options{c.budget, c.workers};
    const auto rows = sweep_overlap(learner, c.n, c.m, c.lambdas, options);
    std::string table = "lambda,n,m,learner,family,engine,value,value_decimal\n";
    for (const auto& row : rows) {
        table += row.lambda->str() + "," + std::to_string(row.n) + "," + std::to_string(row.m) +
                 "," + csv_field(row.learner_name) + "," + csv_field(row.family_desc) + "," + row.engine +
                 "," +
                 row.value->fraction_str() + "," + row.value->decimal_str() + "\n";
    }
    return {std::move(table), kExitOk, {}};
}

CommandResult run_list_learners() {
    std::string table = "spec,description\n";
    for (const auto& doc : learner_catalog()) {
        table += csv_field(doc.spec) + "," + csv_field(doc.description) + "\n";
    }
    return {std::move(table), kExitOk, {}};
}

void write_artifact(const std::string& path, const std::string& csv) {
    if (path == "-") {
        std::cout << csv;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot open output file '" + path + "'");
    }
    out << csv;
    if (!out) {
        throw Error("failed writing output file '" + path + "'");
    }
}

}  // namespace

ResultArtifact run(const ExperimentConfig& config) {
    validate_config(config);
    CommandResult result;
    if (config.command == "verify") {
        result = run_verify(config);
    } else if (config.command == "check-model") {
        result = run_check_model(config);
    } else if (config.command == "estimate") {
        result = run_estimate(config);
    } else if (config.command == "sweep-n") {
        result = run_sweep_n(config);
    } else if (config.command == "sweep-overlap") {
        result = run_sweep_overlap(config);
    } else {
        result = run_list_learners();
    }
    std::string csv = metadata_block(config);
    if (!result.engine.empty()) {
        csv += "# engine: " + result.engine + "\n";
    }
    csv += result.table;
    write_artifact(config.output, csv);
    return {std::move(csv), result.exit_code};
}

namespace {

struct FlagValues {
    std::string config_path;
    std::string output;
    std::uint64_t seed = 0;
    std::uint64_t samples = 0;
    int workers = 0;
    std::uint64_t budget = 0;
    CLI::Option* config_opt = nullptr;
    CLI::Option* output_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* samples_opt = nullptr;
    CLI::Option* workers_opt = nullptr;
    CLI::Option* budget_opt = nullptr;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot read config file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

int cli_main(const std::vector<std::string>& args) {
    CLI::App app{"exact off-training-set error laboratory"};
    app.require_subcommand(1);

    std::vector<std::unique_ptr<FlagValues>> flag_store;
    std::vector<CLI::App*> subs;
    for (const auto& [name, help] : command_table()) {
        auto* sub = app.add_subcommand(name, help);
        auto flags = std::make_unique<FlagValues>();
        flags->config_opt = sub->add_option("--config", flags->config_path, "experiment config file");
        flags->output_opt = sub->add_option("--output", flags->output, "artifact path ('-' = stdout)");
        flags->seed_opt = sub->add_option("--seed", flags->seed, "master RNG seed");
        flags->samples_opt = sub->add_option("--samples", flags->samples, "Monte Carlo sample count");
        flags->workers_opt = sub->add_option("--workers", flags->workers, "worker thread count");
        flags->budget_opt = sub->add_option("--budget", flags->budget, "enumeration budget");
        flag_store.push_back(std::move(flags));
        subs.push_back(sub);
    }

    std::vector<std::string> argv_storage;
    argv_storage.push_back("otslab");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(argv_storage.size());
    for (const auto& s : argv_storage) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParse;
    }

    try {
        size_t chosen = 0;
        for (size_t i = 0; i < subs.size(); ++i) {
            if (subs[i]->parsed()) chosen = i;
        }
        const FlagValues& flags = *flag_store[chosen];

        ExperimentConfig config;
        if (flags.config_opt->count() > 0) {
            config = parse_config(read_file(flags.config_path));
        }
        // The subcommand names the experiment; flags override config values.
        config.command = command_table()[chosen].first;
        if (flags.output_opt->count() > 0) config.output = flags.output;
        if (flags.seed_opt->count() > 0) config.seed = flags.seed;
        if (flags.samples_opt->count() > 0) config.samples = flags.samples;
        if (flags.workers_opt->count() > 0) config.workers = flags.workers;
        if (flags.budget_opt->count() > 0) config.budget = flags.budget;
        if (config.command == "sweep-overlap" && config.lambdas.empty()) {
            config.lambdas = {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4),
                              Rational(1)};
        }
        validate_config(config);
        return run(config).exit_code;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
}

}  // namespace otslab
