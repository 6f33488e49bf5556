#include "pipeclimb/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>

#include "pipeclimb/trace_io.hpp"

namespace pipeclimb {

namespace {

constexpr double kWidth = 960.0;
constexpr double kHeight = 540.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 42.0;
constexpr double kMarginBottom = 52.0;
constexpr std::size_t kMaxPoints = 1500;

const char* kTrackColor[3] = {"#d62728", "#2ca02c", "#1f77b4"};

struct Axis {
    double lo, hi;
    double tick;
};

Axis nice_axis(double lo, double hi) {
    if (hi <= lo) {
        hi = lo + 1.0;
    }
    const double span = hi - lo;
    const double raw = span / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double tick = mag;
    for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
        if (mag * m >= raw) {
            tick = mag * m;
            break;
        }
    }
    return {std::floor(lo / tick) * tick, std::ceil(hi / tick) * tick, tick};
}

void append_fmt(std::string& out, const char* fmt, ...) __attribute__((format(printf, 2, 3)));
void append_fmt(std::string& out, const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof(buf), fmt, args);
    va_end(args);
    out += buf;
}

} // namespace

std::string velocity_svg(const SimTrace& trace, const std::string& title) {
    const auto& records = trace.records;
    double t_lo = 0.0, t_hi = 1.0, v_hi = 1.0;
    if (!records.empty()) {
        t_lo = records.front().t_s;
        t_hi = std::max(records.back().t_s, t_lo + trace.dt_s);
        v_hi = 0.0;
        for (const TraceRecord& rec : records) {
            for (int i = 0; i < kTrackCount; ++i) {
                v_hi = std::max({v_hi, rec.track_speed_mm_s[i], rec.required_speed_mm_s[i]});
            }
        }
        if (v_hi <= 0.0) v_hi = 1.0;
    }
    const Axis tx = nice_axis(t_lo, t_hi);
    const Axis vy = nice_axis(0.0, v_hi * 1.05);

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    const auto x_of = [&](double t) { return kMarginLeft + (t - tx.lo) / (tx.hi - tx.lo) * plot_w; };
    const auto y_of = [&](double v) {
        return kMarginTop + plot_h - (v - vy.lo) / (vy.hi - vy.lo) * plot_h;
    };

    std::string svg;
    append_fmt(svg,
               "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
               "viewBox=\"0 0 %.0f %.0f\">\n",
               kWidth, kHeight, kWidth, kHeight);
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    append_fmt(svg,
               "<text x=\"%.0f\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" "
               "text-anchor=\"middle\">%s</text>\n",
               kWidth / 2.0, title.c_str());

    for (double t = tx.lo; t <= tx.hi + 1e-9; t += tx.tick) {
        append_fmt(svg,
                   "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#dddddd\"/>\n",
                   x_of(t), kMarginTop, x_of(t), kMarginTop + plot_h);
        append_fmt(svg,
                   "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"11\" "
                   "text-anchor=\"middle\">%g</text>\n",
                   x_of(t), kMarginTop + plot_h + 16.0, t);
    }
    for (double v = vy.lo; v <= vy.hi + 1e-9; v += vy.tick) {
        append_fmt(svg,
                   "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#dddddd\"/>\n",
                   kMarginLeft, y_of(v), kMarginLeft + plot_w, y_of(v));
        append_fmt(svg,
                   "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"11\" "
                   "text-anchor=\"end\">%g</text>\n",
                   kMarginLeft - 6.0, y_of(v) + 4.0, v);
    }
    append_fmt(svg,
               "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" "
               "stroke=\"black\"/>\n",
               kMarginLeft, kMarginTop, plot_w, plot_h);
    append_fmt(svg,
               "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"13\" "
               "text-anchor=\"middle\">time [s]</text>\n",
               kMarginLeft + plot_w / 2.0, kHeight - 14.0);
    append_fmt(svg,
               "<text x=\"18\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"13\" "
               "text-anchor=\"middle\" transform=\"rotate(-90 18 %.1f)\">track speed "
               "[mm/s]</text>\n",
               kMarginTop + plot_h / 2.0, kMarginTop + plot_h / 2.0);

    const std::size_t stride = records.empty() ? 1 : std::max<std::size_t>(1, records.size() / kMaxPoints);
    for (int pass = 0; pass < 2; ++pass) {  // 0 = required (dashed), 1 = simulated
        for (int i = 0; i < kTrackCount; ++i) {
            std::string points;
            for (std::size_t r = 0; r < records.size(); r += stride) {
                const double v = pass == 0 ? records[r].required_speed_mm_s[i]
                                           : records[r].track_speed_mm_s[i];
                append_fmt(points, "%.1f,%.1f ", x_of(records[r].t_s), y_of(v));
            }
            if (points.empty()) continue;
            append_fmt(svg, "<polyline fill=\"none\" stroke=\"%s\" stroke-width=\"%.1f\"%s points=\"",
                       kTrackColor[i], pass == 0 ? 1.0 : 1.6,
                       pass == 0 ? " stroke-dasharray=\"6 4\" opacity=\"0.55\"" : "");
            svg += points;
            svg += "\"/>\n";
        }
    }

    for (int i = 0; i < kTrackCount; ++i) {
        const double lx = kMarginLeft + 12.0 + 150.0 * i;
        const double ly = kMarginTop + 14.0;
        append_fmt(svg, "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"%s\" "
                        "stroke-width=\"2\"/>\n",
                   lx, ly, lx + 26.0, ly, kTrackColor[i]);
        append_fmt(svg,
                   "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" "
                   "font-size=\"12\">track %s (dashed: required)</text>\n",
                   lx + 32.0, ly + 4.0, track_name(static_cast<Track>(i)));
    }
    svg += "</svg>\n";
    return svg;
}

void write_velocity_svg(const std::filesystem::path& path, const SimTrace& trace,
                        const std::string& title) {
    atomic_write_file(path, velocity_svg(trace, title));
}

} // namespace pipeclimb
