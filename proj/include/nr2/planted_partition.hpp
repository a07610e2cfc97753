#pragma once

#include <cstdint>

#include "nr2/graph.hpp"

namespace nr2 {

/// Parameters of a planted-partition random graph: `clusters` communities of
/// `size` nodes each, intra-cluster edges with probability p_in and
/// inter-cluster edges with probability p_out.
struct PlantedPartitionSpec {
    int clusters = 1;
    int size = 1;
    double p_in = 0.0;
    double p_out = 0.0;
    std::uint64_t seed = 0;
};

/**
 * Generates an undirected planted-partition graph. Every node gets a unit
 * self edge and a `cluster` attribute holding its community index. All edge
 * weights are 1. The output is a deterministic function of the parameters,
 * independent of platform.
 */
Graph generate_planted_partition(const PlantedPartitionSpec& spec);

} // namespace nr2
