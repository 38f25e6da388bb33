#pragma once

#include <span>

#include "physnet/spatial_network.hpp"

namespace physnet {

/// Regular rows x cols lattice with horizontal, vertical and both diagonal
/// links per cell. Node ids are row-major (id = row * cols + col), lengths
/// Euclidean, diameters 0 until a simulation seeds them.
SpatialNetwork build_grid(int rows, int cols, const Rect& extent = unit_square());

/// Flag the grid node nearest to each requested position as a center
/// (ties broken by lowest node id). Two positions snapping to one node is a
/// ConfigError naming the collision.
SpatialNetwork snap_centers(SpatialNetwork net, std::span<const Point> centers);

}  // namespace physnet
