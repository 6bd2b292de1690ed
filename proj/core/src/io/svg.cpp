#include "dtc/io/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "json.hpp"

namespace dtc::io {
namespace {

constexpr double kWidth = 680, kHeight = 520;
constexpr double kLeft = 80, kRight = 560, kTop = 60, kBottom = 460;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// viridis anchors at t = 0, 0.1, ..., 1.0
constexpr double kViridis[11][3] = {
    {0.267, 0.005, 0.329}, {0.283, 0.141, 0.458}, {0.254, 0.265, 0.530},
    {0.207, 0.372, 0.553}, {0.164, 0.471, 0.558}, {0.128, 0.567, 0.551},
    {0.135, 0.659, 0.518}, {0.267, 0.749, 0.441}, {0.478, 0.821, 0.318},
    {0.741, 0.873, 0.150}, {0.993, 0.906, 0.144}};

std::string viridis(double t) {
    if (!std::isfinite(t)) return "#999999";
    t = std::clamp(t, 0.0, 1.0);
    const double pos = t * 10.0;
    const int i = std::min(9, static_cast<int>(pos));
    const double f = pos - i;
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                  static_cast<int>(std::lround(
                      255 * (kViridis[i][0] + f * (kViridis[i + 1][0] - kViridis[i][0])))),
                  static_cast<int>(std::lround(
                      255 * (kViridis[i][1] + f * (kViridis[i + 1][1] - kViridis[i][1])))),
                  static_cast<int>(std::lround(
                      255 * (kViridis[i][2] + f * (kViridis[i + 1][2] - kViridis[i][2])))));
    return buf;
}

std::string metadata_block(const std::string& json) {
    std::string safe = json;
    // split any "]]>" so the CDATA section stays well-formed
    for (std::size_t pos = 0; (pos = safe.find("]]>", pos)) != std::string::npos;)
        safe.replace(pos, 3, "]]]]><![CDATA[>"), pos += 15;
    return "  <metadata id=\"provenance\"><![CDATA[" + safe + "]]></metadata>\n";
}

std::string svg_open(const std::string& title, const std::string& metadata_json) {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) +
           "\" height=\"" + num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " +
           num(kHeight) + "\">\n";
    out += metadata_block(metadata_json);
    out += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "  <text x=\"" + num((kLeft + kRight) / 2) +
           "\" y=\"30\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"16\">" +
           title + "</text>\n";
    return out;
}

std::string text_at(double x, double y, const std::string& s, const char* anchor,
                    int size = 12, const char* extra = "") {
    return "  <text x=\"" + num(x) + "\" y=\"" + num(y) + "\" text-anchor=\"" + anchor +
           "\" font-family=\"sans-serif\" font-size=\"" + std::to_string(size) + "\"" +
           extra + ">" + s + "</text>\n";
}

std::string axes_frame(const std::string& x_label, const std::string& y_label) {
    std::string out = "  <rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" +
                      num(kRight - kLeft) + "\" height=\"" + num(kBottom - kTop) +
                      "\" fill=\"none\" stroke=\"black\"/>\n";
    out += text_at((kLeft + kRight) / 2, kBottom + 40, x_label, "middle", 13);
    out += text_at(24, (kTop + kBottom) / 2, y_label, "middle", 13,
                   " transform=\"rotate(-90 24 260)\"");
    return out;
}

struct Range {
    double lo = 0.0, hi = 1.0;

    double unit(double v) const { return hi > lo ? (v - lo) / (hi - lo) : 0.5; }
};

Range finite_range(const std::vector<double>& values, double pad_fraction) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double v : values)
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    if (!(lo <= hi)) return {0.0, 1.0};
    if (lo == hi) return {lo - 0.5, hi + 0.5};
    const double pad = (hi - lo) * pad_fraction;
    return {lo - pad, hi + pad};
}

std::string x_ticks(const Range& r) {
    std::string out;
    for (int i = 0; i <= 4; ++i) {
        const double f = i / 4.0;
        const double px = kLeft + f * (kRight - kLeft);
        out += "  <line x1=\"" + num(px) + "\" y1=\"" + num(kBottom) + "\" x2=\"" +
               num(px) + "\" y2=\"" + num(kBottom + 5) + "\" stroke=\"black\"/>\n";
        out += text_at(px, kBottom + 20, label(r.lo + f * (r.hi - r.lo)), "middle");
    }
    return out;
}

std::string y_ticks(const Range& r) {
    std::string out;
    for (int i = 0; i <= 4; ++i) {
        const double f = i / 4.0;
        const double py = kBottom - f * (kBottom - kTop);
        out += "  <line x1=\"" + num(kLeft - 5) + "\" y1=\"" + num(py) + "\" x2=\"" +
               num(kLeft) + "\" y2=\"" + num(py) + "\" stroke=\"black\"/>\n";
        out += text_at(kLeft - 10, py + 4, label(r.lo + f * (r.hi - r.lo)), "end");
    }
    return out;
}

std::string heatmap(const PhaseDiagram& diagram, const std::string& title,
                    const std::string& metadata_json) {
    const Range scale = finite_range(diagram.values, 0.0);
    std::string out = svg_open(title, metadata_json);
    out += axes_frame(diagram.x_param, diagram.y_param);

    const std::size_t nx = diagram.nx(), ny = diagram.ny();
    const double cw = (kRight - kLeft) / static_cast<double>(nx);
    const double ch = (kBottom - kTop) / static_cast<double>(ny);
    for (std::size_t iy = 0; iy < ny; ++iy)
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const double v = diagram.value_at(ix, iy);
            const std::string color =
                std::isfinite(v) ? viridis(scale.unit(v)) : "#999999";
            out += "  <rect x=\"" + num(kLeft + ix * cw) + "\" y=\"" +
                   num(kBottom - (iy + 1) * ch) + "\" width=\"" + num(cw + 0.5) +
                   "\" height=\"" + num(ch + 0.5) + "\" fill=\"" + color + "\"/>\n";
        }

    out += x_ticks({diagram.x_values.front(), diagram.x_values.back()});
    out += y_ticks({diagram.y_values.front(), diagram.y_values.back()});

    // colorbar
    const double bx = kRight + 20, bw = 18;
    for (int i = 0; i < 40; ++i) {
        const double f0 = i / 40.0;
        out += "  <rect x=\"" + num(bx) + "\" y=\"" +
               num(kBottom - (i + 1) * (kBottom - kTop) / 40.0) + "\" width=\"" +
               num(bw) + "\" height=\"" + num((kBottom - kTop) / 40.0 + 0.5) +
               "\" fill=\"" + viridis(f0 + 0.0125) + "\"/>\n";
    }
    out += "  <rect x=\"" + num(bx) + "\" y=\"" + num(kTop) + "\" width=\"" + num(bw) +
           "\" height=\"" + num(kBottom - kTop) +
           "\" fill=\"none\" stroke=\"black\"/>\n";
    out += text_at(bx + bw + 6, kBottom + 4, label(scale.lo), "start");
    out += text_at(bx + bw + 6, kTop + 4, label(scale.hi), "start");
    out += "</svg>\n";
    return out;
}

const char* kLineColors[4] = {"#000000", "#d62728", "#1f77b4", "#2ca02c"};

std::string polyline(const std::vector<std::pair<double, double>>& pts,
                     const char* color, double width) {
    if (pts.empty()) return "";
    std::string out = "  <polyline fill=\"none\" stroke=\"";
    out += color;
    out += "\" stroke-width=\"" + num(width) + "\" points=\"";
    bool first = true;
    for (const auto& [x, y] : pts) {
        if (!std::isfinite(x) || !std::isfinite(y)) continue;
        if (!first) out += ' ';
        out += num(x) + "," + num(y);
        first = false;
    }
    out += "\"/>\n";
    return out;
}

std::string line_plot(const PhaseDiagram& diagram, const std::string& title,
                      const std::string& metadata_json) {
    const Range xr{diagram.x_values.front(), diagram.x_values.back()};
    Range yr = finite_range(diagram.values, 0.05);
    std::string out = svg_open(title, metadata_json);
    out += axes_frame(diagram.x_param, diagram.observable);
    out += x_ticks(xr);
    out += y_ticks(yr);

    const auto px = [&](double x) { return kLeft + xr.unit(x) * (kRight - kLeft); };
    const auto py = [&](double y) { return kBottom - yr.unit(y) * (kBottom - kTop); };

    for (std::size_t iy = 0; iy < diagram.ny(); ++iy) {
        const char* color = kLineColors[iy % 4];
        std::vector<std::pair<double, double>> pts;
        for (std::size_t ix = 0; ix < diagram.nx(); ++ix) {
            const double v = diagram.value_at(ix, iy);
            if (!std::isfinite(v)) continue;
            pts.emplace_back(px(diagram.x_values[ix]), py(v));
            const double se = diagram.error_at(ix, iy);
            if (std::isfinite(se) && se > 0.0)
                out += "  <line x1=\"" + num(px(diagram.x_values[ix])) + "\" y1=\"" +
                       num(py(v - se)) + "\" x2=\"" + num(px(diagram.x_values[ix])) +
                       "\" y2=\"" + num(py(v + se)) + "\" stroke=\"" + color +
                       "\" stroke-width=\"1\"/>\n";
        }
        out += polyline(pts, color, 1.8);
        if (diagram.ny() > 1 && !diagram.y_param.empty()) {
            const std::string text =
                diagram.y_param + " = " + label(diagram.y_values[iy]);
            out += "  <line x1=\"" + num(kRight - 150) + "\" y1=\"" +
                   num(kTop + 16 + 18 * static_cast<double>(iy)) + "\" x2=\"" +
                   num(kRight - 125) + "\" y2=\"" +
                   num(kTop + 16 + 18 * static_cast<double>(iy)) + "\" stroke=\"" +
                   color + "\" stroke-width=\"2\"/>\n";
            out += text_at(kRight - 118, kTop + 20 + 18 * static_cast<double>(iy), text,
                           "start");
        }
    }
    out += "</svg>\n";
    return out;
}

}  // namespace

std::string diagram_svg(const PhaseDiagram& diagram, const std::string& title,
                        const std::string& metadata_json) {
    std::string meta = metadata_json;
    {
        // record the color/value scale bounds alongside the provenance
        nlohmann::ordered_json doc = nlohmann::ordered_json::parse(metadata_json);
        const Range scale = finite_range(diagram.values, 0.0);
        doc["scale"] = {{"min", scale.lo}, {"max", scale.hi}};
        meta = doc.dump(2) + "\n";
    }
    if (diagram.ny() >= 3) return heatmap(diagram, title, meta);
    return line_plot(diagram, title, meta);
}

std::string trajectory_svg(const TrajectoryRecord& record, const std::string& title,
                           const std::string& metadata_json) {
    double max_period = 1.0;
    for (const TrajectorySample& s : record.samples)
        max_period = std::max(max_period, static_cast<double>(s.period_index));
    const Range xr{0.0, max_period};
    const Range yr{-1.05, 1.05};

    std::string out = svg_open(title, metadata_json);
    out += axes_frame("period", "site-1 spin components");
    out += x_ticks(xr);
    out += y_ticks(yr);

    const auto sample_x = [&](const TrajectorySample& s) {
        double t = static_cast<double>(s.period_index);
        if (s.tag == SampleTag::PrePulse) t -= 0.02;
        if (s.tag == SampleTag::SegmentBoundary) t -= 0.5;  // mid-period marker
        return kLeft + xr.unit(t) * (kRight - kLeft);
    };
    const auto py = [&](double y) { return kBottom - yr.unit(y) * (kBottom - kTop); };

    const char* labels[4] = {"s1_x", "s1_y", "s1_z", "|s1|"};
    const char* colors[4] = {"#1f77b4", "#2ca02c", "#d62728", "#000000"};
    for (int series = 0; series < 4; ++series) {
        std::vector<std::pair<double, double>> pts;
        for (const TrajectorySample& s : record.samples) {
            const double v = series < 3 ? s.spins[0][static_cast<std::size_t>(series)]
                                        : s.end_length;
            pts.emplace_back(sample_x(s), py(v));
        }
        out += polyline(pts, colors[series], series == 3 ? 2.2 : 1.4);
        out += "  <line x1=\"" + num(kRight - 150) + "\" y1=\"" +
               num(kTop + 16 + 18 * series) + "\" x2=\"" + num(kRight - 125) +
               "\" y2=\"" + num(kTop + 16 + 18 * series) + "\" stroke=\"" +
               colors[series] + "\" stroke-width=\"2\"/>\n";
        out += text_at(kRight - 118, kTop + 20 + 18 * series, labels[series], "start");
    }
    out += "</svg>\n";
    return out;
}

}  // namespace dtc::io
