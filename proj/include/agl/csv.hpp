#pragma once

// CSV output: header row, then data rows. Numbers carry 10 significant
// digits; text fields are quoted per RFC 4180 when needed.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "agl/experiments.hpp"
#include "agl/series.hpp"

namespace agl {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string format_number(double value);
std::string csv_field(std::string_view text);

void write_csv(std::ostream& out, const CsvTable& table);
std::string to_csv(const CsvTable& table);

// Columns: [series,] n, node_label, analytic, sim_mean, sim_ci95,
// bound_lower, bound_upper. A column appears when any row carries it.
CsvTable sweep_table(const SweepResult& result);
std::string emit_csv(const SweepResult& result);

CsvTable lemma_table(long n, long n0, double sum, const Envelope& env);
CsvTable comparison_table(int n, const Comparison& cmp);

}  // namespace agl
