#include "nr2/planted_partition.hpp"

#include <random>

#include "nr2/errors.hpp"

namespace nr2 {
namespace {

// mt19937 output mapped to [0, 1) by hand; the stream does not depend on
// the standard library's distribution implementation.
double uniform01(std::mt19937& gen) {
    return static_cast<double>(gen()) * 0x1.0p-32;
}

} // namespace

Graph generate_planted_partition(const PlantedPartitionSpec& spec) {
    if (spec.clusters < 1 || spec.size < 1) {
        throw ParameterError("clusters and size must be >= 1");
    }
    if (!(spec.p_out >= 0.0 && spec.p_out <= spec.p_in && spec.p_in <= 1.0)) {
        throw ParameterError("need 0 <= p_out <= p_in <= 1");
    }

    const int n = spec.clusters * spec.size;
    Graph g(n);
    for (int u = 0; u < n; ++u) {
        g.add_attribute(u, "cluster", std::to_string(u / spec.size));
        g.add_edge(u, u, 1.0);
    }

    // the engine takes a 32-bit seed; fold the high half in so it matters
    std::mt19937 gen(static_cast<std::uint32_t>(spec.seed ^ (spec.seed >> 32)));
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            const bool same = (u / spec.size) == (v / spec.size);
            const double p = same ? spec.p_in : spec.p_out;
            // one draw per pair keeps the stream aligned for any p
            const double roll = uniform01(gen);
            if (roll < p) {
                g.add_undirected_edge(u, v, 1.0);
            }
        }
    }
    return g;
}

} // namespace nr2
