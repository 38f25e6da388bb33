#include "physnet/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "physnet/errors.hpp"
#include "physnet/metrics.hpp"
#include "physnet/network_io.hpp"

namespace physnet {

namespace {

/// Short fixed-precision number for SVG attributes; trailing noise in the
/// 12th digit would bloat the files without visible effect.
std::string svg_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

void write_file(const std::string& content, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write svg file " + path);
    out << content;
    if (!out.flush()) throw IoError("failed writing svg file " + path);
}

/// Uniform world-to-canvas mapping with the y axis flipped (SVG grows
/// downward).
struct Viewport {
    double x0, y0;     // world origin
    double scale;      // px per world unit
    double size, margin;

    double px(double x) const { return margin + (x - x0) * scale; }
    double py(double y) const { return size - margin - (y - y0) * scale; }
};

Viewport fit_viewport(const Rect& box, int size_px, double margin_px) {
    const double w = box.x1 - box.x0;
    const double h = box.y1 - box.y0;
    const double span = std::max({w, h, 1e-9});
    const double usable = static_cast<double>(size_px) - 2.0 * margin_px;
    Viewport vp{};
    vp.scale = usable / span;
    vp.size = static_cast<double>(size_px);
    vp.margin = margin_px;
    // Center the shorter world dimension inside the square canvas.
    vp.x0 = box.x0 - (span - w) / 2.0;
    vp.y0 = box.y0 - (span - h) / 2.0;
    return vp;
}

}  // namespace

std::string render_svg_string(const SpatialNetwork& net, const RenderOptions& options) {
    if (options.size_px < 10) throw ConfigError("canvas size too small");
    if (!(options.margin_px >= 0.0) ||
        2.0 * options.margin_px >= static_cast<double>(options.size_px))
        throw ConfigError("margin leaves no drawing area");

    Rect box = net.node_count() > 0 ? net.bounding_box() : unit_square();
    // A density backdrop is defined over the unit square; include it.
    if (options.background != nullptr) {
        box.x0 = std::min(box.x0, 0.0);
        box.y0 = std::min(box.y0, 0.0);
        box.x1 = std::max(box.x1, 1.0);
        box.y1 = std::max(box.y1, 1.0);
    }
    const Viewport vp = fit_viewport(box, options.size_px, options.margin_px);

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.size_px
        << "\" height=\"" << options.size_px << "\" viewBox=\"0 0 " << options.size_px << ' '
        << options.size_px << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    if (options.background != nullptr) {
        const DensityRaster& bg = *options.background;
        if (bg.resolution > 0) {
            double vmax = 0.0;
            for (const double v : bg.values) vmax = std::max(vmax, v);
            if (vmax <= 0.0) vmax = 1.0;
            const double cell = 1.0 / static_cast<double>(bg.resolution);
            for (int iy = 0; iy < bg.resolution; ++iy) {
                for (int ix = 0; ix < bg.resolution; ++ix) {
                    const int gray =
                        255 - static_cast<int>(std::lround(170.0 * bg.at(ix, iy) / vmax));
                    if (gray >= 255) continue;  // skip invisible cells
                    const double wx = ix * cell;
                    const double wy = iy * cell;
                    svg << "<rect x=\"" << svg_num(vp.px(wx)) << "\" y=\""
                        << svg_num(vp.py(wy + cell)) << "\" width=\""
                        << svg_num(cell * vp.scale + 0.5) << "\" height=\""
                        << svg_num(cell * vp.scale + 0.5) << "\" fill=\"rgb(" << gray << ','
                        << gray << ',' << gray << ")\"/>\n";
                }
            }
        }
    }

    double d_max = 0.0;
    for (const Edge& e : net.edges()) d_max = std::max(d_max, e.diameter);

    for (const Edge& e : net.edges()) {
        const Point a = net.node(e.src).pos;
        const Point b = net.node(e.dst).pos;
        const double width =
            d_max > 0.0
                ? std::max(options.min_stroke_px, options.max_stroke_px * e.diameter / d_max)
                : 0.25 * options.max_stroke_px;  // topology-only network
        svg << "<line x1=\"" << svg_num(vp.px(a.x)) << "\" y1=\"" << svg_num(vp.py(a.y))
            << "\" x2=\"" << svg_num(vp.px(b.x)) << "\" y2=\"" << svg_num(vp.py(b.y))
            << "\" stroke=\"#44484c\" stroke-width=\"" << svg_num(width)
            << "\" stroke-linecap=\"round\"/>\n";
    }

    // Regular nodes first so the centers stay on top.
    for (const Node& n : net.nodes()) {
        if (n.kind == NodeKind::Center) continue;
        svg << "<circle cx=\"" << svg_num(vp.px(n.pos.x)) << "\" cy=\"" << svg_num(vp.py(n.pos.y))
            << "\" r=\"" << svg_num(options.node_radius_px) << "\" fill=\"#9aa0a6\"/>\n";
    }
    for (const Node& n : net.nodes()) {
        if (n.kind != NodeKind::Center) continue;
        svg << "<circle cx=\"" << svg_num(vp.px(n.pos.x)) << "\" cy=\"" << svg_num(vp.py(n.pos.y))
            << "\" r=\"" << svg_num(options.center_radius_px)
            << "\" fill=\"#d62728\" stroke=\"white\" stroke-width=\"1.5\"/>\n";
    }

    svg << "</svg>\n";
    return svg.str();
}

void render_svg(const SpatialNetwork& net, const std::string& path,
                const RenderOptions& options) {
    write_file(render_svg_string(net, options), path);
}

namespace {

const char* generator_color(Generator g) {
    switch (g) {
        case Generator::Complete:
            return "#d62728";
        case Generator::Tree:
            return "#1f77b4";
        case Generator::Slime:
            return "#2ca02c";
    }
    return "#000000";
}

/// Rounds a raw step to 1, 2 or 5 times a power of ten.
double nice_step(double raw) {
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double m = raw / mag;
    if (m <= 1.0) return mag;
    if (m <= 2.0) return 2.0 * mag;
    if (m <= 5.0) return 5.0 * mag;
    return 10.0 * mag;
}

std::string tick_label(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

std::string render_pareto_svg_string(std::span<const RunRecord> records,
                                     const ParetoRenderOptions& options) {
    if (options.size_px < 10) throw ConfigError("canvas size too small");

    std::vector<const RunRecord*> shown;
    for (const RunRecord& r : records)
        if (r.valid) shown.push_back(&r);

    double x_lo = 0.0, x_hi = 1.0, y_lo = 0.0, y_hi = 1.0;
    double g_lo = 0.0, g_hi = 0.0;
    if (!shown.empty()) {
        x_lo = x_hi = shown[0]->length_rel;
        y_lo = y_hi = shown[0]->perf_rel;
        g_lo = g_hi = shown[0]->gamma;
        for (const RunRecord* r : shown) {
            x_lo = std::min(x_lo, r->length_rel);
            x_hi = std::max(x_hi, r->length_rel);
            y_lo = std::min(y_lo, r->perf_rel);
            y_hi = std::max(y_hi, r->perf_rel);
            g_lo = std::min(g_lo, r->gamma);
            g_hi = std::max(g_hi, r->gamma);
        }
    }
    // Pad the data range so the extreme points do not sit on the frame.
    const double x_pad = std::max(0.05 * (x_hi - x_lo), 1e-6);
    const double y_pad = std::max(0.05 * (y_hi - y_lo), 1e-6);
    x_lo -= x_pad;
    x_hi += x_pad;
    y_lo -= y_pad;
    y_hi += y_pad;

    const double size = static_cast<double>(options.size_px);
    const double m = options.margin_px;
    const double plot_w = size - 2.0 * m;
    const double plot_h = size - 2.0 * m;
    if (plot_w <= 0.0) throw ConfigError("margin leaves no drawing area");
    const auto px = [&](double x) { return m + (x - x_lo) / (x_hi - x_lo) * plot_w; };
    const auto py = [&](double y) { return size - m - (y - y_lo) / (y_hi - y_lo) * plot_h; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.size_px
        << "\" height=\"" << options.size_px << "\" viewBox=\"0 0 " << options.size_px << ' '
        << options.size_px << "\" font-family=\"sans-serif\" font-size=\"13\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<rect x=\"" << svg_num(m) << "\" y=\"" << svg_num(m) << "\" width=\""
        << svg_num(plot_w) << "\" height=\"" << svg_num(plot_h)
        << "\" fill=\"none\" stroke=\"#333333\"/>\n";

    // Axis ticks and labels.
    const double x_step = nice_step((x_hi - x_lo) / 5.0);
    for (double t = std::ceil(x_lo / x_step) * x_step; t <= x_hi + 1e-12 * x_step; t += x_step) {
        const double X = px(t);
        svg << "<line x1=\"" << svg_num(X) << "\" y1=\"" << svg_num(size - m) << "\" x2=\""
            << svg_num(X) << "\" y2=\"" << svg_num(size - m + 6.0)
            << "\" stroke=\"#333333\"/>\n";
        svg << "<text x=\"" << svg_num(X) << "\" y=\"" << svg_num(size - m + 22.0)
            << "\" text-anchor=\"middle\">" << tick_label(t) << "</text>\n";
    }
    const double y_step = nice_step((y_hi - y_lo) / 5.0);
    for (double t = std::ceil(y_lo / y_step) * y_step; t <= y_hi + 1e-12 * y_step; t += y_step) {
        const double Y = py(t);
        svg << "<line x1=\"" << svg_num(m - 6.0) << "\" y1=\"" << svg_num(Y) << "\" x2=\""
            << svg_num(m) << "\" y2=\"" << svg_num(Y) << "\" stroke=\"#333333\"/>\n";
        svg << "<text x=\"" << svg_num(m - 9.0) << "\" y=\"" << svg_num(Y + 4.0)
            << "\" text-anchor=\"end\">" << tick_label(t) << "</text>\n";
    }
    svg << "<text x=\"" << svg_num(m + plot_w / 2.0) << "\" y=\"" << svg_num(size - m + 44.0)
        << "\" text-anchor=\"middle\">relative length</text>\n";
    svg << "<text x=\"" << svg_num(18.0) << "\" y=\"" << svg_num(m + plot_h / 2.0)
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << svg_num(m + plot_h / 2.0)
        << ")\">relative performance</text>\n";

    // Data points; slime markers grow with gamma.
    for (const RunRecord* r : shown) {
        double radius = 3.5;
        if (r->generator == Generator::Slime) {
            const double span = g_hi - g_lo;
            const double rel = span > 0.0 ? (r->gamma - g_lo) / span : 0.5;
            radius = 2.5 + 3.0 * rel;
        }
        svg << "<circle cx=\"" << svg_num(px(r->length_rel)) << "\" cy=\""
            << svg_num(py(r->perf_rel)) << "\" r=\"" << svg_num(radius) << "\" fill=\""
            << generator_color(r->generator) << "\" fill-opacity=\"0.65\"/>\n";
    }

    if (options.show_front && !shown.empty()) {
        for (const RunRecord& r : extract_pareto(records)) {
            svg << "<circle cx=\"" << svg_num(px(r.length_rel)) << "\" cy=\""
                << svg_num(py(r.perf_rel))
                << "\" r=\"8\" fill=\"none\" stroke=\"#111111\" stroke-width=\"1.5\"/>\n";
        }
    }

    // Legend, top right inside the frame.
    const Generator legend[3] = {Generator::Complete, Generator::Slime, Generator::Tree};
    for (int i = 0; i < 3; ++i) {
        const double ly = m + 20.0 + 20.0 * i;
        svg << "<circle cx=\"" << svg_num(size - m - 110.0) << "\" cy=\"" << svg_num(ly)
            << "\" r=\"4\" fill=\"" << generator_color(legend[i]) << "\"/>\n";
        svg << "<text x=\"" << svg_num(size - m - 98.0) << "\" y=\"" << svg_num(ly + 4.0)
            << "\">" << to_string(legend[i]) << "</text>\n";
    }

    svg << "</svg>\n";
    return svg.str();
}

void render_pareto_svg(std::span<const RunRecord> records, const std::string& path,
                       const ParetoRenderOptions& options) {
    write_file(render_pareto_svg_string(records, options), path);
}

}  // namespace physnet
