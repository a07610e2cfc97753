#include "nr2/graph.hpp"

#include <algorithm>
#include <cmath>

#include "nr2/errors.hpp"

namespace nr2 {

Graph::Graph(int n) {
    if (n < 0) {
        throw ParameterError("node count must be nonnegative");
    }
    for (int i = 0; i < n; ++i) {
        add_node(std::to_string(i));
    }
}

int Graph::add_node(const std::string& id) {
    if (index_.count(id) != 0) {
        throw ValidationError("duplicate node id: " + id);
    }
    const int idx = size();
    index_.emplace(id, idx);
    node_ids_.push_back(id);
    adjacency_.emplace_back();
    attributes_.emplace_back();
    return idx;
}

int Graph::index_of(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? -1 : it->second;
}

void Graph::check_node(int u) const {
    if (u < 0 || u >= size()) {
        throw ValidationError("node index out of range: " + std::to_string(u));
    }
}

void Graph::add_edge(int u, int v, double w) {
    check_node(u);
    check_node(v);
    if (!std::isfinite(w) || w < 0.0) {
        throw ValidationError("edge weight must be finite and nonnegative");
    }
    adjacency_[u][v] += w;
}

void Graph::add_undirected_edge(int u, int v, double w) {
    add_edge(u, v, w);
    if (u != v) {
        add_edge(v, u, w);
    }
}

void Graph::add_attribute(int node, const std::string& name, const std::string& value) {
    check_node(node);
    attributes_[node][name].insert(value);
    attribute_names_.insert(name);
}

std::size_t Graph::edge_count() const {
    std::size_t total = 0;
    for (const auto& row : adjacency_) {
        total += row.size();
    }
    return total;
}

double Graph::weight(int u, int v) const {
    check_node(u);
    check_node(v);
    const auto& row = adjacency_[u];
    auto it = row.find(v);
    return it == row.end() ? 0.0 : it->second;
}

const std::map<int, double>& Graph::neighbors(int u) const {
    check_node(u);
    return adjacency_[u];
}

void Graph::set_absorbing(int node) {
    check_node(node);
    absorbing_ = node;
}

const std::set<std::string>* Graph::attribute_values(int node, const std::string& name) const {
    check_node(node);
    auto it = attributes_[node].find(name);
    return it == attributes_[node].end() ? nullptr : &it->second;
}

bool Graph::has_attribute(const std::string& name) const {
    return attribute_names_.count(name) != 0;
}

std::vector<std::string> Graph::attribute_names() const {
    return {attribute_names_.begin(), attribute_names_.end()};
}

TransitionMatrix::TransitionMatrix(const Graph& g) : n_(g.size()) {
    if (n_ < 1) {
        throw ParameterError("cannot normalize an empty graph");
    }
    row_offsets_.reserve(n_ + 1);
    row_offsets_.push_back(0);
    for (int u = 0; u < n_; ++u) {
        const auto& row = g.neighbors(u);
        double sum = 0.0;
        for (const auto& [v, w] : row) {
            sum += w;
        }
        if (sum <= 0.0) {
            // dangling node: unit self edge, then normalize
            cols_.push_back(u);
            values_.push_back(1.0);
        } else {
            for (const auto& [v, w] : row) {
                if (w > 0.0) {
                    cols_.push_back(v);
                    values_.push_back(w / sum);
                }
            }
        }
        row_offsets_.push_back(static_cast<int>(cols_.size()));
    }
}

double TransitionMatrix::entry(int i, int j) const {
    for (int p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p) {
        if (cols_[p] == j) {
            return values_[p];
        }
    }
    return 0.0;
}

void TransitionMatrix::apply_transpose(const std::vector<double>& x, std::vector<double>& out) const {
    out.assign(n_, 0.0);
    for (int u = 0; u < n_; ++u) {
        const double xu = x[u];
        if (xu == 0.0) {
            continue;
        }
        for (int p = row_offsets_[u]; p < row_offsets_[u + 1]; ++p) {
            out[cols_[p]] += values_[p] * xu;
        }
    }
}

std::vector<double> TransitionMatrix::row_sums() const {
    std::vector<double> sums(n_, 0.0);
    for (int u = 0; u < n_; ++u) {
        for (int p = row_offsets_[u]; p < row_offsets_[u + 1]; ++p) {
            sums[u] += values_[p];
        }
    }
    return sums;
}

TransitionMatrix row_normalize(const Graph& g) {
    return TransitionMatrix(g);
}

Graph augment_absorbing(const Graph& g) {
    if (g.absorbing().has_value()) {
        throw ValidationError("graph already has an absorbing node");
    }
    Graph out;
    for (int u = 0; u < g.size(); ++u) {
        out.add_node(g.node_id(u));
    }
    std::string absorbing_id = "__absorbing__";
    while (out.index_of(absorbing_id) != -1) {
        absorbing_id += "_";
    }
    const int d = out.add_node(absorbing_id);
    for (int u = 0; u < g.size(); ++u) {
        for (const auto& [v, w] : g.neighbors(u)) {
            out.add_edge(u, v, w);
        }
        for (const auto& name : g.attribute_names()) {
            if (const auto* vals = g.attribute_values(u, name)) {
                for (const auto& val : *vals) {
                    out.add_attribute(u, name, val);
                }
            }
        }
    }
    out.add_edge(d, d, 1.0);
    out.set_absorbing(d);
    return out;
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& nodes) {
    std::vector<int> sorted = nodes;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    std::vector<int> remap(g.size(), -1);
    Graph out;
    for (int u : sorted) {
        if (u < 0 || u >= g.size()) {
            throw ValidationError("induced_subgraph: unknown node " + std::to_string(u));
        }
        remap[u] = out.add_node(g.node_id(u));
    }
    for (int u : sorted) {
        for (const auto& [v, w] : g.neighbors(u)) {
            if (remap[v] != -1) {
                out.add_edge(remap[u], remap[v], w);
            }
        }
        for (const auto& name : g.attribute_names()) {
            if (const auto* vals = g.attribute_values(u, name)) {
                for (const auto& val : *vals) {
                    out.add_attribute(remap[u], name, val);
                }
            }
        }
    }
    if (g.absorbing().has_value() && remap[*g.absorbing()] != -1) {
        out.set_absorbing(remap[*g.absorbing()]);
    }
    return out;
}

} // namespace nr2
