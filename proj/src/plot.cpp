#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "ratrec/scenario_io.hpp"

namespace ratrec {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 20.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 60.0;
constexpr int kTicks = 5;

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += ch;
        }
    }
    return out;
}

}  // namespace

std::string emit_plot(const Trajectory& traj, std::string_view title) {
    if (traj.values.size() < 2) throw Error(ErrorKind::TooFewPoints, "a plot needs at least two points");

    std::vector<double> ys;
    ys.reserve(traj.values.size());
    for (const auto& v : traj.values) ys.push_back(v.to_double());

    double lo = 0.0, hi = 0.0;
    bool any_finite = false;
    for (double y : ys) {
        if (!std::isfinite(y)) continue;
        lo = any_finite ? std::min(lo, y) : y;
        hi = any_finite ? std::max(hi, y) : y;
        any_finite = true;
    }
    if (!any_finite || hi - lo == 0.0) {
        lo -= 1.0;
        hi += 1.0;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;

    const double x0 = static_cast<double>(Trajectory::start_index);
    const double x1 = static_cast<double>(traj.last_index());
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double n) { return kLeft + (n - x0) / (x1 - x0) * plot_w; };
    auto py = [&](double y) {
        if (std::isnan(y) || y == HUGE_VAL) return kTop;
        if (y == -HUGE_VAL) return kTop + plot_h;
        return kTop + (hi - y) / (hi - lo) * plot_h;
    };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt("%.0f", kWidth) +
           "\" height=\"" + fmt("%.0f", kHeight) + "\" viewBox=\"0 0 " + fmt("%.0f", kWidth) + " " +
           fmt("%.0f", kHeight) + "\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + fmt("%.1f", kWidth / 2) + "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"16\">" + xml_escape(title) + "</text>\n";

    // frame and grid
    svg += "<rect x=\"" + fmt("%.1f", kLeft) + "\" y=\"" + fmt("%.1f", kTop) + "\" width=\"" + fmt("%.1f", plot_w) +
           "\" height=\"" + fmt("%.1f", plot_h) + "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= kTicks; ++i) {
        double t = static_cast<double>(i) / kTicks;
        double xv = x0 + t * (x1 - x0);
        double yv = lo + t * (hi - lo);
        svg += "<line x1=\"" + fmt("%.2f", px(xv)) + "\" y1=\"" + fmt("%.2f", kTop + plot_h) + "\" x2=\"" +
               fmt("%.2f", px(xv)) + "\" y2=\"" + fmt("%.2f", kTop + plot_h + 5) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fmt("%.2f", px(xv)) + "\" y=\"" + fmt("%.2f", kTop + plot_h + 20) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + fmt("%.0f", xv) +
               "</text>\n";
        svg += "<line x1=\"" + fmt("%.2f", kLeft - 5) + "\" y1=\"" + fmt("%.2f", py(yv)) + "\" x2=\"" +
               fmt("%.2f", kLeft) + "\" y2=\"" + fmt("%.2f", py(yv)) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fmt("%.2f", kLeft - 8) + "\" y=\"" + fmt("%.2f", py(yv) + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + fmt("%.3g", yv) +
               "</text>\n";
    }
    if (lo < 0.0 && hi > 0.0) {
        svg += "<line x1=\"" + fmt("%.2f", kLeft) + "\" y1=\"" + fmt("%.2f", py(0.0)) + "\" x2=\"" +
               fmt("%.2f", kLeft + plot_w) + "\" y2=\"" + fmt("%.2f", py(0.0)) +
               "\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 3\"/>\n";
    }
    svg += "<text x=\"" + fmt("%.1f", kLeft + plot_w / 2) + "\" y=\"" + fmt("%.1f", kHeight - 15) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">n</text>\n";
    svg += "<text x=\"18\" y=\"" + fmt("%.1f", kTop + plot_h / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 18 " +
           fmt("%.1f", kTop + plot_h / 2) + ")\">x(n)</text>\n";

    svg += "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < ys.size(); ++i) {
        if (i) svg += ' ';
        svg += fmt("%.2f", px(x0 + static_cast<double>(i))) + "," + fmt("%.2f", py(ys[i]));
    }
    svg += "\"/>\n";

    for (std::size_t i = 0; i < ys.size(); ++i) {
        const bool clipped = !std::isfinite(ys[i]);
        svg += "<circle cx=\"" + fmt("%.2f", px(x0 + static_cast<double>(i))) + "\" cy=\"" + fmt("%.2f", py(ys[i])) +
               "\" r=\"2\" fill=\"" + (clipped ? std::string("#d62728") : std::string("#1f77b4")) + "\"" +
               (clipped ? " class=\"clipped\"" : "") + "/>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace ratrec
