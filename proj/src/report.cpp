#include "dapo/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace fs = std::filesystem;

namespace dapo {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 620, kTop = 45, kBottom = 370;

const std::vector<std::string>& legend_order() {
    static const std::vector<std::string> order = {
        "dapo",          "vanilla",           "optimal-phase",    "random-sparse",
        "sparsifier-uniform", "sparsifier-degree", "sparsifier-tree", "dropout"};
    return order;
}

const char* series_color(std::size_t idx) {
    static const char* palette[] = {"#d62728", "#1f77b4", "#e6ab02", "#2ca02c",
                                    "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};
    return palette[idx % (sizeof(palette) / sizeof(palette[0]))];
}

std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

void svg_header(std::ostringstream& out, const ChartOptions& opt) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"15\">" << opt.title << "</text>\n"
        << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << opt.x_label << "</text>\n"
        << "<text x=\"18\" y=\"" << (kTop + kBottom) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
        << "transform=\"rotate(-90 18 " << (kTop + kBottom) / 2 << ")\">" << opt.y_label
        << "</text>\n"
        << "<line x1=\"" << kLeft << "\" y1=\"" << kBottom << "\" x2=\"" << kRight
        << "\" y2=\"" << kBottom << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
        << kBottom << "\" stroke=\"black\"/>\n";
}

void svg_y_ticks(std::ostringstream& out, double y_lo, double y_hi) {
    for (int t = 0; t <= 5; ++t) {
        const double v = y_lo + (y_hi - y_lo) * t / 5.0;
        const double y = kBottom - (kBottom - kTop) * t / 5.0;
        out << "<line x1=\"" << kLeft - 4 << "\" y1=\"" << fmt2(y) << "\" x2=\"" << kLeft
            << "\" y2=\"" << fmt2(y) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << kLeft - 8 << "\" y=\"" << fmt2(y + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt_tick(v) << "</text>\n";
    }
}

} // namespace

std::string render_line_chart(const std::vector<ChartSeries>& series,
                              const ChartOptions& opt) {
    double x_lo = 1e300, x_hi = -1e300, y_lo = 1e300, y_hi = -1e300;
    for (const auto& s : series)
        for (const auto& [x, y] : s.points) {
            x_lo = std::min(x_lo, x);
            x_hi = std::max(x_hi, x);
            if (std::isfinite(y)) {
                y_lo = std::min(y_lo, y);
                y_hi = std::max(y_hi, y);
            }
        }
    if (x_lo > x_hi) {
        x_lo = 0;
        x_hi = 1;
    }
    if (y_lo > y_hi) {
        y_lo = 0;
        y_hi = 1;
    }
    if (opt.clamp_y) {
        y_lo = opt.y_min;
        y_hi = opt.y_max;
    } else if (y_hi == y_lo) {
        y_hi = y_lo + 1;
    }
    if (x_hi == x_lo)
        x_hi = x_lo + 1;

    auto px = [&](double x) { return kLeft + (kRight - kLeft) * (x - x_lo) / (x_hi - x_lo); };
    auto py = [&](double y) {
        const double clamped = std::min(std::max(y, y_lo), y_hi);
        return kBottom - (kBottom - kTop) * (clamped - y_lo) / (y_hi - y_lo);
    };

    std::ostringstream out;
    svg_header(out, opt);
    svg_y_ticks(out, y_lo, y_hi);
    const int x_span = static_cast<int>(std::lround(x_hi - x_lo));
    const int x_step = std::max(1, x_span / 10);
    for (int x = static_cast<int>(std::lround(x_lo)); x <= static_cast<int>(std::lround(x_hi));
         x += x_step) {
        out << "<line x1=\"" << fmt2(px(x)) << "\" y1=\"" << kBottom << "\" x2=\""
            << fmt2(px(x)) << "\" y2=\"" << kBottom + 4 << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << fmt2(px(x)) << "\" y=\"" << kBottom + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << x
            << "</text>\n";
    }
    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        if (s.points.empty())
            continue;
        out << "<polyline fill=\"none\" stroke=\"" << series_color(si)
            << "\" stroke-width=\"1.8\" points=\"";
        for (const auto& [x, y] : s.points)
            out << fmt2(px(x)) << ',' << fmt2(py(std::isfinite(y) ? y : y_lo)) << ' ';
        out << "\"/>\n";
        for (const auto& [x, y] : s.points)
            out << "<circle cx=\"" << fmt2(px(x)) << "\" cy=\""
                << fmt2(py(std::isfinite(y) ? y : y_lo)) << "\" r=\"2.5\" fill=\""
                << series_color(si) << "\"/>\n";
        const double ly = kTop + 16.0 * static_cast<double>(si);
        out << "<line x1=\"" << kRight - 130 << "\" y1=\"" << fmt2(ly) << "\" x2=\""
            << kRight - 110 << "\" y2=\"" << fmt2(ly) << "\" stroke=\"" << series_color(si)
            << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << kRight - 105 << "\" y=\"" << fmt2(ly + 4)
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string render_bar_chart(const std::vector<std::pair<std::string, double>>& bars,
                             const ChartOptions& opt) {
    double y_hi = 0.0;
    for (const auto& [_, v] : bars)
        y_hi = std::max(y_hi, v);
    if (y_hi <= 0.0)
        y_hi = 1.0;

    std::ostringstream out;
    svg_header(out, opt);
    svg_y_ticks(out, 0.0, y_hi);
    if (!bars.empty()) {
        const double slot = (kRight - kLeft) / static_cast<double>(bars.size());
        const double bw = slot * 0.6;
        for (std::size_t b = 0; b < bars.size(); ++b) {
            const double x = kLeft + slot * (static_cast<double>(b) + 0.2);
            const double v = std::max(0.0, bars[b].second);
            const double h = (kBottom - kTop) * v / y_hi;
            out << "<rect x=\"" << fmt2(x) << "\" y=\"" << fmt2(kBottom - h) << "\" width=\""
                << fmt2(bw) << "\" height=\"" << fmt2(h) << "\" fill=\"#1f77b4\"/>\n"
                << "<text x=\"" << fmt2(x + bw / 2) << "\" y=\"" << kBottom + 18
                << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
                << bars[b].first << "</text>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

namespace {

struct GroupKey {
    std::string instance;
    std::string algo;
};

std::vector<std::string> algos_in_legend_order(const std::set<std::string>& present) {
    std::vector<std::string> ordered;
    for (const auto& name : legend_order())
        if (present.count(name))
            ordered.push_back(name);
    for (const auto& name : present)
        if (std::find(ordered.begin(), ordered.end(), name) == ordered.end())
            ordered.push_back(name);
    return ordered;
}

// Mean of `get` over rows at each depth, ascending depth.
template <typename Getter>
std::vector<std::pair<double, double>> mean_by_depth(const std::vector<const ResultRow*>& rows,
                                                     Getter get) {
    std::map<int, std::pair<double, int>> acc;
    for (const auto* r : rows) {
        const double v = get(*r);
        if (!std::isfinite(v))
            continue;
        auto& slot = acc[r->p];
        slot.first += v;
        slot.second += 1;
    }
    std::vector<std::pair<double, double>> points;
    points.reserve(acc.size());
    for (const auto& [p, sum_count] : acc)
        if (sum_count.second > 0)
            points.push_back({static_cast<double>(p), sum_count.first / sum_count.second});
    return points;
}

} // namespace

ReportOutput write_report(const std::vector<std::string>& csv_paths,
                          const std::string& out_dir) {
    std::vector<ResultRow> rows;
    for (const auto& path : csv_paths) {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw std::runtime_error("cannot open " + path);
        std::ostringstream ss;
        ss << in.rdbuf();
        auto parsed = rows_from_csv(ss.str());
        rows.insert(rows.end(), parsed.begin(), parsed.end());
    }

    std::map<std::string, std::map<std::string, std::vector<const ResultRow*>>> grouped;
    for (const auto& r : rows)
        grouped[r.instance][r.algo].push_back(&r);

    fs::create_directories(out_dir);
    ReportOutput out;
    std::ostringstream summary;
    summary << "run summary (" << kCsvSchema << ")\n";
    std::vector<std::string> errors;

    for (const auto& [instance, by_algo] : grouped) {
        std::set<std::string> present;
        for (const auto& [algo, _] : by_algo)
            present.insert(algo);
        const auto ordered = algos_in_legend_order(present);

        bool any_ratio = false;
        for (const auto& r : rows)
            if (r.instance == instance && std::isfinite(r.ratio))
                any_ratio = true;

        std::vector<ChartSeries> series;
        for (const auto& algo : ordered) {
            const auto& group = by_algo.at(algo);
            ChartSeries s;
            s.label = algo;
            s.points = any_ratio
                           ? mean_by_depth(group, [](const ResultRow& r) { return r.ratio; })
                           : mean_by_depth(group, [](const ResultRow& r) { return r.f; });
            series.push_back(std::move(s));
        }
        ChartOptions opt;
        opt.title = instance;
        opt.x_label = "layers p";
        if (any_ratio) {
            opt.y_label = "approximation ratio";
            opt.clamp_y = true;
            opt.y_min = 0.0;
            opt.y_max = 1.05;
        } else {
            opt.y_label = "energy";
        }
        const std::string chart_path =
            (fs::path(out_dir) / (instance + (any_ratio ? "_ratio.svg" : "_energy.svg")))
                .string();
        {
            std::ofstream f(chart_path, std::ios::binary);
            f << render_line_chart(series, opt);
        }
        out.svg_paths.push_back(chart_path);

        if (by_algo.count("dapo") && by_algo.count("vanilla")) {
            auto dapo_cum = mean_by_depth(by_algo.at("dapo"), [](const ResultRow& r) {
                return static_cast<double>(r.rzz_cum);
            });
            auto vanilla_cum = mean_by_depth(by_algo.at("vanilla"), [](const ResultRow& r) {
                return static_cast<double>(r.rzz_cum);
            });
            std::map<int, double> vmap;
            for (const auto& [p, v] : vanilla_cum)
                vmap[static_cast<int>(p)] = v;
            std::vector<std::pair<std::string, double>> bars;
            for (const auto& [p, d] : dapo_cum) {
                auto it = vmap.find(static_cast<int>(p));
                if (it != vmap.end())
                    bars.push_back({std::to_string(static_cast<int>(p)), it->second - d});
            }
            ChartOptions bopt;
            bopt.title = instance + ": cumulative R_ZZ saved vs vanilla";
            bopt.x_label = "layers p";
            bopt.y_label = "R_ZZ reduction";
            const std::string bar_path = (fs::path(out_dir) / (instance + "_rzz.svg")).string();
            std::ofstream f(bar_path, std::ios::binary);
            f << render_bar_chart(bars, bopt);
            out.svg_paths.push_back(bar_path);
        }

        summary << "\ninstance " << instance << "\n";
        summary << "  algo                 final_p  F_final        ratio_final\n";
        for (const auto& algo : ordered) {
            const auto& group = by_algo.at(algo);
            int final_p = 0;
            for (const auto* r : group)
                final_p = std::max(final_p, r->p);
            double f_sum = 0, ratio_sum = 0;
            int f_cnt = 0, ratio_cnt = 0;
            for (const auto* r : group) {
                if (r->p != final_p)
                    continue;
                f_sum += r->f;
                ++f_cnt;
                if (std::isfinite(r->ratio)) {
                    ratio_sum += r->ratio;
                    ++ratio_cnt;
                }
            }
            char line[160];
            std::snprintf(line, sizeof(line), "  %-20s %-8d %-14s %s\n", algo.c_str(), final_p,
                          f_cnt ? format_g9(f_sum / f_cnt).c_str() : "-",
                          ratio_cnt ? format_g9(ratio_sum / ratio_cnt).c_str() : "-");
            summary << line;
        }
    }

    for (const auto& r : rows)
        if (std::isfinite(r.ratio) && r.ratio > 1.0)
            errors.push_back("ERROR " + r.instance + " " + r.algo + " p=" + std::to_string(r.p) +
                             " ratio=" + format_g9(r.ratio) + " exceeds 1");
    summary << "\nerrors: " << (errors.empty() ? "none" : std::to_string(errors.size())) << "\n";
    for (const auto& e : errors)
        summary << "  " << e << "\n";

    out.summary_text = summary.str();
    out.summary_path = (fs::path(out_dir) / "summary.txt").string();
    std::ofstream f(out.summary_path, std::ios::binary);
    f << out.summary_text;
    return out;
}

} // namespace dapo
