#include "agl/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "agl/analytic.hpp"
#include "agl/csv.hpp"
#include "agl/series.hpp"
#include "agl/simulator.hpp"

namespace agl::cli {

namespace {

std::string join(const std::vector<std::string>& parts)
{
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : "; ") + p;
    return out;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::runtime_error(join(violations)), violations_(std::move(violations))
{
}

RunConfig parse_config_json(std::string_view text, RunConfig base)
{
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError({std::string("config is not valid JSON: ") + e.what()});
    }
    if (!doc.is_object()) throw ConfigError({"config must be a JSON object"});

    std::vector<std::string> problems;
    RunConfig cfg = base;
    for (const auto& [key, value] : doc.items()) {
        auto want = [&](bool ok, const char* type) {
            if (!ok) problems.push_back("config key '" + key + "' must be " + type);
            return ok;
        };
        if (key == "kind") {
            if (!want(value.is_string(), "a string")) continue;
            if (auto t = parse_topology(value.get<std::string>()))
                cfg.spec.kind.topology = *t;
            else
                problems.push_back("unknown kind '" + value.get<std::string>() + "'");
        } else if (key == "honest") {
            if (want(value.is_boolean(), "a boolean")) cfg.spec.kind.honest = value.get<bool>();
        } else if (key == "n") {
            if (want(value.is_number_integer(), "an integer")) cfg.spec.n = value.get<int>();
        } else if (key == "lambda") {
            if (want(value.is_number(), "a number")) cfg.spec.lambda = value.get<double>();
        } else if (key == "p") {
            if (want(value.is_number(), "a number")) cfg.spec.policy.p = value.get<double>();
        } else if (key == "q") {
            if (want(value.is_number(), "a number")) cfg.spec.policy.q = value.get<double>();
        } else if (key == "horizon") {
            if (want(value.is_number(), "a number")) cfg.sim.horizon = value.get<double>();
        } else if (key == "warmup") {
            if (want(value.is_number(), "a number")) cfg.sim.warmup = value.get<double>();
        } else if (key == "seed") {
            if (want(value.is_number_unsigned(), "a non-negative integer")) cfg.sim.seed = value.get<std::uint64_t>();
        } else if (key == "reps") {
            if (want(value.is_number_integer(), "an integer")) cfg.sim.reps = value.get<int>();
        } else if (key == "threads") {
            if (want(value.is_number_integer(), "an integer")) cfg.sim.threads = value.get<int>();
        } else if (key == "coin_mode") {
            if (!want(value.is_string(), "a string")) continue;
            if (auto m = parse_coin_mode(value.get<std::string>()))
                cfg.sim.coin_mode = *m;
            else
                problems.push_back("unknown coin_mode '" + value.get<std::string>() + "'");
        } else {
            problems.push_back("unknown config key '" + key + "'");
        }
    }
    if (!problems.empty()) throw ConfigError(problems);
    return cfg;
}

std::string dump_config_json(const RunConfig& config)
{
    nlohmann::ordered_json doc;
    doc["kind"] = std::string(to_string(config.spec.kind.topology));
    doc["honest"] = config.spec.kind.honest;
    doc["n"] = config.spec.n;
    doc["lambda"] = config.spec.lambda;
    doc["p"] = config.spec.policy.p;
    doc["q"] = config.spec.policy.q;
    doc["horizon"] = config.sim.horizon;
    doc["warmup"] = config.sim.effective_warmup();
    doc["seed"] = config.sim.seed;
    doc["reps"] = config.sim.reps;
    doc["coin_mode"] = std::string(to_string(config.sim.coin_mode));
    doc["threads"] = config.sim.threads;
    return doc.dump(2) + "\n";
}

std::vector<int> parse_n_values(std::string_view text)
{
    auto to_int = [&](std::string_view s) {
        int v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size())
            throw ConfigError({"bad integer '" + std::string(s) + "' in --n-values"});
        return v;
    };
    if (text.find(':') != std::string_view::npos) {
        const auto a = text.find(':');
        const auto b = text.find(':', a + 1);
        if (b == std::string_view::npos) throw ConfigError({"--n-values range must be min:max:factor"});
        const int lo = to_int(text.substr(0, a));
        const int hi = to_int(text.substr(a + 1, b - a - 1));
        const std::string factor_text(text.substr(b + 1));
        char* end = nullptr;
        const double factor = std::strtod(factor_text.c_str(), &end);
        if (end == factor_text.c_str() || *end != '\0') throw ConfigError({"bad factor in --n-values"});
        try {
            return geometric_sizes(lo, hi, factor);
        } catch (const std::invalid_argument& e) {
            throw ConfigError({e.what()});
        }
    }
    std::vector<int> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        out.push_back(to_int(piece));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

SweepResult analytic_rows(const NetworkSpec& spec)
{
    const AnalyticAges ages = analytic_ages(spec);
    const int n = spec.n;
    SweepResult out;
    auto add = [&](std::string label, double v) {
        SweepRow row;
        row.n = n;
        row.node_label = std::move(label);
        row.analytic = v;
        out.rows.push_back(std::move(row));
        return &out.rows.back();
    };

    const bool ring = spec.kind.topology == Topology::UnidirectionalRingCapture;
    std::vector<AgeBounds> ring_bounds;
    if (ring && !spec.kind.honest) ring_bounds = urn_age_bounds_all(n, spec.lambda, spec.policy.p, ages.infected);
    std::optional<FcnCaseBounds> fcn_bounds;
    if (spec.kind.topology == Topology::FullyConnectedCapture && !spec.kind.honest)
        fcn_bounds = fcn_case_bounds(n, spec.lambda, spec.policy.p, spec.policy.q);

    for (int k = 1; k <= n - 1; ++k) {
        const double v = ages.regular[static_cast<std::size_t>(k - 1)];
        SweepRow* row = add(ring || k == 1 ? std::to_string(k) : "S" + std::to_string(k), v);
        if (ring && !ring_bounds.empty()) {
            row->bound_lower = ring_bounds[static_cast<std::size_t>(k - 1)].lower;
            row->bound_upper = ring_bounds[static_cast<std::size_t>(k - 1)].upper;
        }
        if (k == 1 && fcn_bounds) {
            for (const auto& b : fcn_bounds->bounds) {
                if (b.label != "v1") continue;
                if (fcn_bounds->which == FcnCase::PushOnly) row->bound_lower = b.lower;
                if (std::isfinite(b.upper)) row->bound_upper = b.upper;
            }
        }
        if (k == 1 && ages.adversary) row->bound_lower = *ages.adversary / 4.0;
    }
    for (int k = 1; k <= static_cast<int>(ages.sets_with_infected.size()); ++k) {
        SweepRow* row = add("S" + std::to_string(k) + "+n", ages.sets_with_infected[static_cast<std::size_t>(k - 1)]);
        row->bound_lower = *ages.adversary / 2.0;
    }
    SweepRow* last = add("n", ages.infected);
    if (fcn_bounds && spec.policy.q < 1.0) last->bound_upper = ages.v1() + 1.0 / (spec.lambda * (1.0 - spec.policy.q));
    if (ages.adversary) add("A", *ages.adversary);
    return out;
}

namespace {

struct Overrides {
    std::string config_path;
    std::optional<std::string> kind;
    bool honest = false;
    std::optional<int> n;
    std::optional<double> lambda;
    std::optional<double> p;
    std::optional<double> q;
    std::optional<double> horizon;
    std::optional<double> warmup;
    std::optional<std::uint64_t> seed;
    std::optional<int> reps;
    std::optional<int> threads;
    std::optional<std::string> coin_mode;
    std::string out_path;
    bool dump_config = false;

    // sweep / figure
    std::optional<std::string> n_values;
    std::string node = "1";
    std::optional<double> alpha;
    bool with_sim = false;
    std::string figure;

    // lemma
    std::optional<long> lemma_n;
    std::optional<long> lemma_n0;
};

void add_network_options(CLI::App* sub, Overrides& o)
{
    sub->add_option("--config", o.config_path, "JSON config file (flags override its values)");
    sub->add_option("--kind", o.kind, "fcn-capture | fcn-mitm | urn-capture");
    sub->add_flag("--honest", o.honest, "no adversary: truthful timestamps everywhere");
    sub->add_option("--n", o.n, "number of user nodes");
    sub->add_option("--lambda", o.lambda, "per-node gossip rate");
    sub->add_option("--p", o.p, "probability an outgoing stamp is set to now");
    sub->add_option("--q", o.q, "probability an incoming stamp is set to 0");
    sub->add_option("--out", o.out_path, "write CSV here instead of stdout");
    sub->add_flag("--dump-config", o.dump_config, "print the effective config as JSON and exit");
}

void add_sim_options(CLI::App* sub, Overrides& o)
{
    sub->add_option("--horizon", o.horizon, "simulated time per replication");
    sub->add_option("--warmup", o.warmup, "discarded initial time (default 10% of horizon)");
    sub->add_option("--seed", o.seed, "base seed (default $AGL_SEED, else 1)");
    sub->add_option("--reps", o.reps, "independent replications");
    sub->add_option("--threads", o.threads, "worker threads for replications (0 = all cores)");
    sub->add_option("--coin-mode", o.coin_mode, "explicit | thinned");
}

RunConfig resolve(const Overrides& o)
{
    RunConfig cfg;
    if (const char* env = std::getenv("AGL_SEED"); env && *env) {
        char* end = nullptr;
        const auto seed = std::strtoull(env, &end, 10);
        if (*end != '\0') throw ConfigError({"AGL_SEED must be an unsigned integer"});
        cfg.sim.seed = seed;
    }
    if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        if (!in) throw ConfigError({"cannot read config file '" + o.config_path + "'"});
        std::stringstream buf;
        buf << in.rdbuf();
        cfg = parse_config_json(buf.str(), cfg);
    }
    std::vector<std::string> problems;
    if (o.kind) {
        if (auto t = parse_topology(*o.kind))
            cfg.spec.kind.topology = *t;
        else
            problems.push_back("unknown --kind '" + *o.kind + "'");
    }
    if (o.honest) cfg.spec.kind.honest = true;
    if (o.n) cfg.spec.n = *o.n;
    if (o.lambda) cfg.spec.lambda = *o.lambda;
    if (o.p) cfg.spec.policy.p = *o.p;
    if (o.q) cfg.spec.policy.q = *o.q;
    if (o.horizon) cfg.sim.horizon = *o.horizon;
    if (o.warmup) cfg.sim.warmup = *o.warmup;
    if (o.seed) cfg.sim.seed = *o.seed;
    if (o.reps) cfg.sim.reps = *o.reps;
    if (o.threads) cfg.sim.threads = *o.threads;
    if (o.coin_mode) {
        if (auto m = parse_coin_mode(*o.coin_mode))
            cfg.sim.coin_mode = *m;
        else
            problems.push_back("unknown --coin-mode '" + *o.coin_mode + "'");
    }

    auto checked = validate_config(cfg.spec, cfg.sim);
    problems.insert(problems.end(), checked.violations.begin(), checked.violations.end());
    if (!problems.empty()) throw ConfigError(problems);
    return *checked.config;
}

NodeSelector parse_selector(const Overrides& o)
{
    if (o.alpha) {
        if (!(*o.alpha > 0.0 && *o.alpha < 1.0)) throw ConfigError({"--alpha must lie in (0, 1)"});
        return NodeSelector::power_law(*o.alpha);
    }
    if (o.node == "infected" || o.node == "n") return NodeSelector::infected();
    if (o.node == "adversary" || o.node == "A") return NodeSelector::adversary();
    if (o.node == "transition") return NodeSelector::transition();
    int idx = 0;
    auto [ptr, ec] = std::from_chars(o.node.data(), o.node.data() + o.node.size(), idx);
    if (ec != std::errc() || ptr != o.node.data() + o.node.size() || idx < 1)
        throw ConfigError({"--node must be a positive index, infected, adversary or transition"});
    return NodeSelector::fixed(idx);
}

void emit(const Overrides& o, std::ostream& out, const std::string& text)
{
    if (o.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(o.out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write '" + o.out_path + "'");
    file << text;
}

CsvTable simulation_table(const NetworkSpec& spec, const SimReport& rep)
{
    CsvTable t;
    t.header = {"n", "node_label", "sim_mean", "sim_ci95"};
    for (int i = 1; i <= spec.n; ++i) {
        const auto slot = static_cast<std::size_t>(i - 1);
        t.rows.push_back({std::to_string(spec.n), std::to_string(i), format_number(rep.mean_age[slot]),
                          rep.ci95 ? format_number((*rep.ci95)[slot]) : std::string()});
    }
    if (rep.mean_age_adversary)
        t.rows.push_back({std::to_string(spec.n), "A", format_number(*rep.mean_age_adversary),
                          rep.ci95_adversary ? format_number(*rep.ci95_adversary) : std::string()});
    return t;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Age of information in gossip networks under timestamp manipulation"};
    app.name("agl");
    app.require_subcommand(1);

    Overrides o;
    auto* analytic = app.add_subcommand("analytic", "exact long-run ages from the recursions");
    add_network_options(analytic, o);

    auto* simulate = app.add_subcommand("simulate", "replicated event simulation");
    add_network_options(simulate, o);
    add_sim_options(simulate, o);

    auto* sweep_cmd = app.add_subcommand("sweep", "one node's age across network sizes");
    add_network_options(sweep_cmd, o);
    add_sim_options(sweep_cmd, o);
    sweep_cmd->add_option("--n-values", o.n_values, "comma list or min:max:factor")->required();
    sweep_cmd->add_option("--node", o.node, "index | infected | adversary | transition");
    sweep_cmd->add_option("--alpha", o.alpha, "power-law node m = floor(n^alpha)");
    sweep_cmd->add_flag("--with-sim", o.with_sim, "add simulated columns");

    auto* figure = app.add_subcommand("figure", "plot-ready data for a figure preset");
    figure->add_option("id", o.figure, "fig4 .. fig10")->required();
    figure->add_option("--out", o.out_path, "write CSV here instead of stdout");
    figure->add_option("--n-values", o.n_values, "comma list or min:max:factor");
    figure->add_flag("--with-sim", o.with_sim, "add simulated columns for n <= 64");
    add_sim_options(figure, o);

    auto* lemma = app.add_subcommand("lemma", "ring kernel sum and its Gaussian envelopes");
    lemma->add_option("--n", o.lemma_n, "n")->required();
    lemma->add_option("--n0", o.lemma_n0, "upper summation index (default n)");
    lemma->add_option("--out", o.out_path, "write CSV here instead of stdout");

    auto* compare = app.add_subcommand("compare", "simulation against the exact ages");
    add_network_options(compare, o);
    add_sim_options(compare, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (lemma->parsed()) {
            const long n = *o.lemma_n;
            const long n0 = o.lemma_n0.value_or(n);
            if (n < 1 || n0 < 1 || n0 > n) throw ConfigError({"lemma needs 1 <= n0 <= n"});
            emit(o, out, to_csv(lemma_table(n, n0, lemma_sum(n, n0), lemma_envelopes(n, n0))));
            return 0;
        }
        if (figure->parsed()) {
            const auto id = parse_figure_id(o.figure);
            if (!id) throw ConfigError({"unknown figure '" + o.figure + "' (fig4 .. fig10)"});
            PresetOptions po;
            if (o.n_values) po.sizes = parse_n_values(*o.n_values);
            if (o.with_sim) po.sim = resolve(o).sim;
            emit(o, out, emit_csv(figure_preset(*id, po)));
            return 0;
        }

        const RunConfig cfg = resolve(o);
        if (o.dump_config) {
            emit(o, out, dump_config_json(cfg));
            return 0;
        }
        if (analytic->parsed()) {
            emit(o, out, emit_csv(analytic_rows(cfg.spec)));
        } else if (simulate->parsed()) {
            const SimReport rep = replicate(cfg, cfg.sim.reps);
            if (rep.idle_after_warmup()) err << "warning: no events after warmup; means are pure age ramps\n";
            emit(o, out, to_csv(simulation_table(cfg.spec, rep)));
        } else if (sweep_cmd->parsed()) {
            SweepOptions so;
            so.lambda = cfg.spec.lambda;
            if (o.with_sim) so.sim = cfg.sim;
            const auto res = sweep(cfg.spec.kind, cfg.spec.policy, parse_n_values(*o.n_values), parse_selector(o), so);
            for (int skipped : res.skipped_n) err << "skipped n=" << skipped << ": selected node outside [1, n-1]\n";
            emit(o, out, emit_csv(res));
        } else if (compare->parsed()) {
            const auto cmp = compare_sim_analytic(cfg.spec, cfg.sim);
            for (const auto& label : cmp.flagged) err << "node " << label << ": 95% CI excludes the exact value\n";
            emit(o, out, to_csv(comparison_table(cfg.spec.n, cmp)));
        }
        return 0;
    } catch (const ConfigError& e) {
        for (const auto& v : e.violations()) err << "config error: " << v << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace agl::cli
