#pragma once

// Output writers: CSV orbit tables (17 significant digits, bit-exact
// re-read), JSON reports, and standalone SVG scatter plots with the body
// outline to scale. All output is deterministic for a fixed input.

#include <string>
#include <vector>

#include "osb/config.hpp"
#include "osb/experiments.hpp"

namespace osb {

/// Render an orbit as CSV: header
/// k,x_1,...,x_2d,H,eucl_norm,m_1,...,m_2d,residual — one row per point;
/// row k >= 1 carries the first tangency point and the worst residual of the
/// step that produced it (zeros on the initial row).
std::string render_orbit_csv(const OrbitRecord& record);
void write_orbit_csv(const OrbitRecord& record, const std::string& path);

/// Render a report (verdicts, summary, tables) as pretty-printed JSON with
/// stable key order.
std::string render_report_json(const ExperimentReport& report, const RunConfig* config = nullptr);
void write_report_json(const ExperimentReport& report, const std::string& path,
                       const RunConfig* config = nullptr);

/// Scatter of planar projections (first two coordinates) with the body
/// outline overlaid to scale.
std::string render_scatter_svg(const std::vector<Vec>& points, const ConvexBody& body,
                               const std::string& annotation);
void write_scatter_svg(const std::vector<Vec>& points, const ConvexBody& body,
                       const std::string& annotation, const std::string& path);

/// Minimal CSV reader for round-trip tests: parses the numeric cells of an
/// orbit CSV back into rows.
std::vector<std::vector<double>> parse_csv_rows(const std::string& csv_text);

}  // namespace osb
