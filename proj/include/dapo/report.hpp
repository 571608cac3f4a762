#ifndef DAPO_REPORT_HPP
#define DAPO_REPORT_HPP

#include "dapo/experiment.hpp"

#include <string>
#include <utility>
#include <vector>

namespace dapo {

struct ChartSeries {
    std::string label;
    std::vector<std::pair<double, double>> points; // (depth, value)
};

struct ChartOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool clamp_y = false; // fix the y axis to [y_min, y_max]
    double y_min = 0.0;
    double y_max = 1.0;
};

std::string render_line_chart(const std::vector<ChartSeries>& series,
                              const ChartOptions& opt);
std::string render_bar_chart(const std::vector<std::pair<std::string, double>>& bars,
                             const ChartOptions& opt);

struct ReportOutput {
    std::vector<std::string> svg_paths;
    std::string summary_path;
    std::string summary_text;
};

/// Reads run CSVs (schema-checked), draws a ratio- or energy-vs-depth chart
/// per instance plus an R_ZZ reduction bar chart where both dapo and vanilla
/// rows exist, and writes a plain-text summary with per-algorithm final
/// values. Rows with ratio > 1 are flagged as errors.
ReportOutput write_report(const std::vector<std::string>& csv_paths,
                          const std::string& out_dir);

} // namespace dapo

#endif // DAPO_REPORT_HPP
