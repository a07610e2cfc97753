#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace nr2 {

/**
 * Weighted directed graph with string node identifiers, optional per-node
 * attribute labels and an optional absorbing-node marker.
 *
 * Edge weights are nonnegative similarities. Undirected graphs are stored
 * with both directions present. Weights added for an existing (u, v) pair
 * accumulate. Instances are immutable once handed to the ranking layer;
 * concurrent readers are safe.
 */
class Graph {
public:
    Graph() = default;

    /// Creates n nodes with decimal ids "0".."n-1".
    explicit Graph(int n);

    /// Adds a node and returns its index. The id must be new.
    int add_node(const std::string& id);

    /// Index of an id, or -1 when absent.
    int index_of(const std::string& id) const;

    /// Adds w to the weight of (u, v). w must be >= 0.
    void add_edge(int u, int v, double w);

    /// Adds w to (u, v) and (v, u); a self edge (u == v) is added once.
    void add_undirected_edge(int u, int v, double w);

    void add_attribute(int node, const std::string& name, const std::string& value);

    int size() const { return static_cast<int>(adjacency_.size()); }

    /// Number of stored directed (u, v) entries.
    std::size_t edge_count() const;

    /// Weight of (u, v), 0 when the edge is absent.
    double weight(int u, int v) const;

    /// Out-edges of u, ordered by target index.
    const std::map<int, double>& neighbors(int u) const;

    const std::string& node_id(int u) const { return node_ids_.at(u); }
    const std::vector<std::string>& node_ids() const { return node_ids_; }

    std::optional<int> absorbing() const { return absorbing_; }
    void set_absorbing(int node);

    /// Values of an attribute on a node; nullptr when the node has none.
    const std::set<std::string>* attribute_values(int node, const std::string& name) const;

    bool has_attribute(const std::string& name) const;

    /// All attribute names present anywhere in the graph, sorted.
    std::vector<std::string> attribute_names() const;

private:
    void check_node(int u) const;

    std::vector<std::string> node_ids_;
    std::map<std::string, int> index_;
    std::vector<std::map<int, double>> adjacency_;
    std::vector<std::map<std::string, std::set<std::string>>> attributes_;
    std::set<std::string> attribute_names_;
    std::optional<int> absorbing_;
};

/**
 * Row-stochastic transition matrix derived from a graph, stored as CSR.
 * Every row sums to 1; dangling rows are repaired with a unit self edge
 * before normalization.
 */
class TransitionMatrix {
public:
    explicit TransitionMatrix(const Graph& g);

    int size() const { return n_; }

    double entry(int i, int j) const;

    /// out = W^T x  (push each row's mass along its edges).
    void apply_transpose(const std::vector<double>& x, std::vector<double>& out) const;

    std::vector<double> row_sums() const;

    const std::vector<int>& row_offsets() const { return row_offsets_; }
    const std::vector<int>& cols() const { return cols_; }
    const std::vector<double>& values() const { return values_; }

private:
    int n_ = 0;
    std::vector<int> row_offsets_;
    std::vector<int> cols_;
    std::vector<double> values_;
};

/// Row-normalizes the similarity weights of g.
TransitionMatrix row_normalize(const Graph& g);

/// Returns g plus one absorbing node holding a unit self edge and nothing else.
Graph augment_absorbing(const Graph& g);

/// Subgraph on the given nodes, keeping edges with both endpoints inside.
/// Nodes are re-indexed in ascending order of their original index.
Graph induced_subgraph(const Graph& g, const std::vector<int>& nodes);

} // namespace nr2
