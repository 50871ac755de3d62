#include "agl/csv.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace agl {

std::string format_number(double value)
{
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", value);
    return buf;
}

std::string csv_field(std::string_view text)
{
    if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_csv(std::ostream& out, const CsvTable& table)
{
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out << ',';
            out << csv_field(cells[i]);
        }
        out << '\n';
    };
    line(table.header);
    for (const auto& r : table.rows) line(r);
}

std::string to_csv(const CsvTable& table)
{
    std::ostringstream os;
    write_csv(os, table);
    return os.str();
}

CsvTable sweep_table(const SweepResult& result)
{
    bool series = false, analytic = false, sim_mean = false, sim_ci = false, lower = false, upper = false;
    for (const auto& r : result.rows) {
        series |= r.series.has_value();
        analytic |= r.analytic.has_value();
        sim_mean |= r.sim_mean.has_value();
        sim_ci |= r.sim_ci95.has_value();
        lower |= r.bound_lower.has_value();
        upper |= r.bound_upper.has_value();
    }

    CsvTable t;
    if (series) t.header.emplace_back("series");
    t.header.emplace_back("n");
    t.header.emplace_back("node_label");
    if (analytic) t.header.emplace_back("analytic");
    if (sim_mean) t.header.emplace_back("sim_mean");
    if (sim_ci) t.header.emplace_back("sim_ci95");
    if (lower) t.header.emplace_back("bound_lower");
    if (upper) t.header.emplace_back("bound_upper");

    auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
    for (const auto& r : result.rows) {
        std::vector<std::string> cells;
        if (series) cells.push_back(r.series.value_or(""));
        cells.push_back(std::to_string(r.n));
        cells.push_back(r.node_label);
        if (analytic) cells.push_back(opt(r.analytic));
        if (sim_mean) cells.push_back(opt(r.sim_mean));
        if (sim_ci) cells.push_back(opt(r.sim_ci95));
        if (lower) cells.push_back(opt(r.bound_lower));
        if (upper) cells.push_back(opt(r.bound_upper));
        t.rows.push_back(std::move(cells));
    }
    return t;
}

std::string emit_csv(const SweepResult& result) { return to_csv(sweep_table(result)); }

CsvTable lemma_table(long n, long n0, double sum, const Envelope& env)
{
    CsvTable t;
    t.header = {"n", "n0", "sum", "lower_env", "upper_env"};
    t.rows.push_back({std::to_string(n), std::to_string(n0), format_number(sum), format_number(env.lower),
                      format_number(env.upper)});
    return t;
}

CsvTable comparison_table(int n, const Comparison& cmp)
{
    CsvTable t;
    t.header = {"n", "node_label", "analytic", "sim_mean", "sim_ci95", "rel_error", "ci_covers"};
    for (const auto& c : cmp.nodes) {
        t.rows.push_back({std::to_string(n), c.node_label, format_number(c.reference), format_number(c.sim_mean),
                          c.sim_ci95 ? format_number(*c.sim_ci95) : std::string(), format_number(c.rel_error),
                          c.ci_covers ? "1" : "0"});
    }
    return t;
}

}  // namespace agl
