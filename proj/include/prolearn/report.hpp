#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "prolearn/errors.hpp"
#include "prolearn/experiment.hpp"

namespace prolearn {

/// Floats in CSV/SVG output: 6 significant digits, NaN spelled "nan".
inline std::string format_num(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline std::string format_fixed2(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    return out;
}

inline void write_curve_csv(const std::string& path, const LearningCurve& curve) {
    std::ofstream out = open_out(path);
    out << "samples,overall";
    for (const auto& c : curve.classes) out << ',' << c;
    out << '\n';
    for (const auto& pt : curve.points) {
        out << pt.samples << ',' << format_num(pt.overall);
        for (double v : pt.per_class) out << ',' << format_num(v);
        out << '\n';
    }
    if (!out) throw IoError("failed while writing " + path);
}

inline void write_events_csv(const std::string& path,
                             const std::vector<RecalibrationEvent>& events) {
    std::ofstream out = open_out(path);
    out << "sample,added,count\n";
    for (const auto& ev : events) {
        out << ev.sample_index << ',';
        for (std::size_t i = 0; i < ev.added.size(); ++i) {
            if (i) out << ';';
            out << ev.added[i];
        }
        out << ',' << ev.added.size() << '\n';
    }
    if (!out) throw IoError("failed while writing " + path);
}

inline void write_curve_report_csv(const std::string& path, const std::string& dataset,
                                   const RunOutcome& outcome) {
    std::ofstream out = open_out(path);
    out << "dataset,mode,stream_length,final_accuracy,event_count,static_units,"
           "progressive_units,percent_saved\n";
    out << dataset << ",curve," << outcome.stream_length << ','
        << format_num(outcome.final_accuracy) << ',' << outcome.events.size() << ','
        << outcome.weights.static_units << ',' << outcome.weights.progressive_units << ','
        << format_fixed2(outcome.weights.percent_saved) << '\n';
    if (!out) throw IoError("failed while writing " + path);
}

inline void write_consistency_report_csv(const std::string& path, const std::string& dataset,
                                         const char* mode, const std::vector<double>& finals,
                                         double mean, double stddev) {
    std::ofstream out = open_out(path);
    out << "dataset,mode,runs,mean,stddev,min,max\n";
    double lo = finals.front(), hi = finals.front();
    for (double v : finals) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    out << dataset << ',' << mode << ',' << finals.size() << ',' << format_num(mean) << ','
        << format_num(stddev) << ',' << format_num(lo) << ',' << format_num(hi) << '\n';
    if (!out) throw IoError("failed while writing " + path);
}

inline void write_reduction_report_csv(const std::string& path, const std::string& schedule_name,
                                       const WeightReport& report) {
    std::ofstream out = open_out(path);
    out << "schedule,mode,static_units,progressive_units,percent_saved\n";
    out << schedule_name << ",reduce," << report.static_units << ','
        << report.progressive_units << ',' << format_fixed2(report.percent_saved) << '\n';
    if (!out) throw IoError("failed while writing " + path);
}

inline void write_timing_report_csv(const std::string& path, const std::string& dataset,
                                    const TimingReport& report) {
    std::ofstream out = open_out(path);
    out << "dataset,mode,point,final_accuracy,event_count\n";
    for (const auto& pt : report.points)
        out << dataset << ",timing," << pt.point << ',' << format_num(pt.final_accuracy) << ','
            << pt.event_count << '\n';
    if (!out) throw IoError("failed while writing " + path);
}

namespace detail {

inline std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        default: out += c;
        }
    }
    return out;
}

inline std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

/// Round a positive span to a 1/2/5 x 10^k tick step.
inline double nice_step(double span, double target_ticks) {
    double raw = span / target_ticks;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double frac = raw / mag;
    double step = frac <= 1.0 ? 1.0 : frac <= 2.0 ? 2.0 : frac <= 5.0 ? 5.0 : 10.0;
    return step * mag;
}

} // namespace detail

/// Line chart of the curve as a standalone SVG: one polyline per accuracy
/// series, labeled axes, a legend, and a dashed marker at every
/// recalibration. Plain shapes only — no scripts, no external resources.
inline void write_curve_svg(const std::string& path, const LearningCurve& curve,
                            const std::vector<RecalibrationEvent>& events,
                            const std::string& title) {
    using detail::fmt2;
    if (curve.points.empty()) throw EmptyChunkError("cannot chart an empty curve");

    const double width = 880, height = 540;
    const double left = 64, right = width - 210, top = 44, bottom = height - 56;
    double x_min = static_cast<double>(curve.points.front().samples);
    double x_max = static_cast<double>(curve.points.back().samples);
    if (x_max <= x_min) x_max = x_min + 1;
    auto sx = [&](double v) { return left + (v - x_min) / (x_max - x_min) * (right - left); };
    auto sy = [&](double v) { return bottom - v * (bottom - top); };

    static const char* kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd",
                                     "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};
    constexpr std::size_t kPaletteSize = sizeof kPalette / sizeof kPalette[0];

    std::ofstream out = open_out(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    out << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << fmt2((left + right) / 2) << "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\">"
        << detail::xml_escape(title) << "</text>\n";

    // Horizontal grid + y labels at fixed quarter steps.
    for (int i = 0; i <= 4; ++i) {
        double v = 0.25 * i;
        out << "<line x1=\"" << fmt2(left) << "\" y1=\"" << fmt2(sy(v)) << "\" x2=\""
            << fmt2(right) << "\" y2=\"" << fmt2(sy(v))
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << fmt2(left - 8) << "\" y=\"" << fmt2(sy(v) + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << format_num(v) << "</text>\n";
    }
    // X ticks on a rounded step.
    double step = detail::nice_step(x_max - x_min, 6.0);
    for (double v = std::ceil(x_min / step) * step; v <= x_max + 1e-9; v += step) {
        out << "<line x1=\"" << fmt2(sx(v)) << "\" y1=\"" << fmt2(bottom) << "\" x2=\""
            << fmt2(sx(v)) << "\" y2=\"" << fmt2(bottom + 5)
            << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << fmt2(sx(v)) << "\" y=\"" << fmt2(bottom + 18)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << format_num(v) << "</text>\n";
    }
    // Axes.
    out << "<line x1=\"" << fmt2(left) << "\" y1=\"" << fmt2(top) << "\" x2=\"" << fmt2(left)
        << "\" y2=\"" << fmt2(bottom) << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    out << "<line x1=\"" << fmt2(left) << "\" y1=\"" << fmt2(bottom) << "\" x2=\"" << fmt2(right)
        << "\" y2=\"" << fmt2(bottom) << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    out << "<text x=\"" << fmt2((left + right) / 2) << "\" y=\"" << fmt2(height - 14)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">training "
           "samples</text>\n";
    out << "<text x=\"20\" y=\"" << fmt2((top + bottom) / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 20 "
        << fmt2((top + bottom) / 2) << ")\">testing accuracy</text>\n";

    // Recalibration markers.
    for (const auto& ev : events) {
        double x = sx(static_cast<double>(ev.sample_index));
        out << "<line x1=\"" << fmt2(x) << "\" y1=\"" << fmt2(top) << "\" x2=\"" << fmt2(x)
            << "\" y2=\"" << fmt2(bottom)
            << "\" stroke=\"#999999\" stroke-width=\"1\" stroke-dasharray=\"5,4\"/>\n";
        std::string names;
        for (std::size_t i = 0; i < ev.added.size(); ++i) {
            if (i) names += ';';
            names += ev.added[i];
        }
        out << "<text x=\"" << fmt2(x + 4) << "\" y=\"" << fmt2(top + 12)
            << "\" font-family=\"sans-serif\" font-size=\"10\" fill=\"#666666\">+"
            << detail::xml_escape(names) << "</text>\n";
    }

    // One polyline per series; NaN points are skipped.
    auto polyline = [&](std::size_t series, const char* color, double stroke_width) {
        std::string pts;
        for (const auto& pt : curve.points) {
            double v = series == 0 ? pt.overall : pt.per_class[series - 1];
            if (std::isnan(v)) continue;
            pts += fmt2(sx(static_cast<double>(pt.samples)));
            pts += ',';
            pts += fmt2(sy(v));
            pts += ' ';
        }
        if (pts.empty()) return;
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
            << stroke_width << "\" points=\"" << pts << "\"/>\n";
    };
    for (std::size_t c = 0; c < curve.classes.size(); ++c)
        polyline(c + 1, kPalette[c % kPaletteSize], 1.2);
    polyline(0, "#000000", 2.0);

    // Legend.
    double lx = right + 16, ly = top + 8;
    auto legend_row = [&](const std::string& name, const char* color) {
        out << "<line x1=\"" << fmt2(lx) << "\" y1=\"" << fmt2(ly) << "\" x2=\"" << fmt2(lx + 22)
            << "\" y2=\"" << fmt2(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << fmt2(lx + 28) << "\" y=\"" << fmt2(ly + 4)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << detail::xml_escape(name)
            << "</text>\n";
        ly += 18;
    };
    legend_row("overall", "#000000");
    for (std::size_t c = 0; c < curve.classes.size(); ++c)
        legend_row(curve.classes[c], kPalette[c % kPaletteSize]);

    out << "</svg>\n";
    if (!out) throw IoError("failed while writing " + path);
}

/// The standard artifact set for a curve run: data series, event log,
/// one-line summary, and the chart.
inline void emit_outputs(const RunOutcome& outcome, const std::string& dataset,
                         const std::string& outdir) {
    std::string base = outdir.empty() ? std::string(".") : outdir;
    write_curve_csv(base + "/curve.csv", outcome.curve);
    write_events_csv(base + "/events.csv", outcome.events);
    write_curve_report_csv(base + "/report.csv", dataset, outcome);
    write_curve_svg(base + "/curve.svg", outcome.curve, outcome.events,
                    dataset + " learning curve");
}

} // namespace prolearn
