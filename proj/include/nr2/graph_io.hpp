#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nr2/graph.hpp"

namespace nr2 {

/**
 * Loads a graph from a TSV edge list: `src<TAB>dst<TAB>weight`, one edge
 * per line. Lines starting with '#' and blank lines are skipped. By default
 * each line adds its weight in both directions; repeated (u, v) lines
 * accumulate. Pass directed = true to add only the stated direction.
 * An attribute file (`node<TAB>attr_name<TAB>attr_value`) may be supplied.
 */
Graph load_edge_list(const std::string& path,
                     const std::optional<std::string>& attrs_path = std::nullopt,
                     bool directed = false);

/// Applies attribute lines from a TSV file to an existing graph.
void load_attributes(Graph& g, const std::string& path);

/**
 * Loads a preference vector from a TSV file: `node<TAB>weight`. Weights
 * must be nonnegative; nodes absent from the file get 0. The result is
 * normalized to unit sum.
 */
std::vector<double> load_prior(const Graph& g, const std::string& path);

/// Writes the graph's directed edge entries as a TSV edge list.
void write_edge_list(const Graph& g, const std::string& path);

/// Writes all node attributes as a TSV attribute file.
void write_attributes(const Graph& g, const std::string& path);

} // namespace nr2
