#pragma once

#include <span>
#include <string>

#include "physnet/experiment.hpp"
#include "physnet/generators.hpp"
#include "physnet/spatial_network.hpp"

namespace physnet {

struct RenderOptions {
    int size_px = 800;              // square canvas edge
    double margin_px = 40.0;        // padding inside the canvas
    double max_stroke_px = 6.0;     // stroke width of the thickest edge
    double min_stroke_px = 0.6;     // visibility floor for thin edges
    double node_radius_px = 2.5;    // regular nodes
    double center_radius_px = 6.0;  // center nodes
    /// Optional density field painted as a grayscale backdrop (not owned).
    const DensityRaster* background = nullptr;
};

/// Deterministic SVG view of a network: edges as lines with width scaled by
/// diameter, nodes as circles, centers filled red.
std::string render_svg_string(const SpatialNetwork& net, const RenderOptions& options = {});
void render_svg(const SpatialNetwork& net, const std::string& path,
                const RenderOptions& options = {});

struct ParetoRenderOptions {
    int size_px = 800;
    double margin_px = 70.0;
    /// Ring the records on the Pareto front of the valid points.
    bool show_front = true;
};

/// Scatter of length_rel (x) against perf_rel (y), colored by generator,
/// slime markers scaled by gamma. Invalid records are omitted.
std::string render_pareto_svg_string(std::span<const RunRecord> records,
                                     const ParetoRenderOptions& options = {});
void render_pareto_svg(std::span<const RunRecord> records, const std::string& path,
                       const ParetoRenderOptions& options = {});

}  // namespace physnet
