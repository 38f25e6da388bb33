#pragma once

#include <string>

#include "physnet/spatial_network.hpp"

namespace physnet {

/// Fixed-point-free float formatting with 12 significant digits, used by
/// every CSV writer so files round-trip identically.
std::string format_double(double value);

/// Node CSV: header `id,x,y,kind`, kind in {regular, center}.
/// Edge CSV: header `src,dst,length,impedance`; an empty length means
/// Euclidean distance, an empty impedance means 1. Simulation state
/// (diameter, flow) is not part of the file format. Malformed content
/// raises ParseError with the offending line number.
SpatialNetwork load_network(const std::string& nodes_path, const std::string& edges_path);

/// Writes the two CSV files. Nodes ascending by id, edges in storage
/// order; length/impedance cells the loader can reconstruct stay empty.
void save_network(const SpatialNetwork& net, const std::string& nodes_path,
                  const std::string& edges_path);

}  // namespace physnet
