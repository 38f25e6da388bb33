#pragma once

#include "physnet/spatial_network.hpp"

namespace physnet {

inline constexpr double kDefaultPruneEps = 0.05;

/// Drops edges with diameter < eps, then regular nodes left isolated.
/// Centers are always retained. Idempotent.
SpatialNetwork prune(const SpatialNetwork& net, double eps = kDefaultPruneEps);

struct ComponentFilterResult {
    SpatialNetwork net;
    bool connected = false;  // true iff all centers share one component
};

/// Keeps only connected components containing at least one center.
ComponentFilterResult keep_center_components(const SpatialNetwork& net);

/// Replaces every maximal chain of degree-2 regular nodes by a single edge:
/// length is the chain total, diameter the series equivalent
/// L_total / sum(L_i / D_i). Chains that close on themselves are dropped,
/// and parallel duplicates keep the shorter edge (ties: larger diameter).
/// Centers are never contracted. Idempotent.
SpatialNetwork contract_degree2(const SpatialNetwork& net);

struct PostprocessResult {
    SpatialNetwork net;
    bool connected = false;
};

/// prune -> keep_center_components -> contract_degree2.
PostprocessResult postprocess_pipeline(const SpatialNetwork& net,
                                       double eps = kDefaultPruneEps);

}  // namespace physnet
