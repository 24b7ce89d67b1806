#pragma once

#include "eigenshape/config.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace eigenshape {

/// Ordered key/value summary printed by the CLI as `key=value` lines.
struct Report {
    std::vector<std::pair<std::string, std::string>> entries;

    void add(const std::string& key, const std::string& value) { entries.emplace_back(key, value); }
    void add(const std::string& key, double value);
    void add(const std::string& key, long long value);
    void add(const std::string& key, int value) { add(key, static_cast<long long>(value)); }
    void print(std::ostream& os) const;
};

/// Principal eigenvalue of one weight; writes solve.csv and phi.field.
Report cmd_solve(const RunConfig& cfg);
/// Multi-seed thresholding for each c; writes optimize.csv, trace_c<c>.csv and set_c<c>.field.
Report cmd_optimize(const RunConfig& cfg);
/// Cap radius, cap eigenvalue and optimized eigenvalue per c; writes table.csv and table_detail.csv.
Report cmd_table(const RunConfig& cfg);
/// Interval sweep, threshold coefficient and optimizer cross-check; writes oned.csv.
Report cmd_oned(const RunConfig& cfg);
/// Eigenvalue ratio of the stretched set on the unit disk; writes stretch.csv.
Report cmd_stretch(const RunConfig& cfg);
/// Logistic dynamics; writes series.csv and u.field.
Report cmd_simulate(const RunConfig& cfg);
/// Auxiliary eigenvalue at the optimized growth rate; writes equiv.csv.
Report cmd_equiv(const RunConfig& cfg);

/// Dispatches by subcommand name; throws InvalidArgument for unknown names.
Report run_command(const std::string& name, const RunConfig& cfg);

} // namespace eigenshape
