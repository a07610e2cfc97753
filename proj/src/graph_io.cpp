#include "nr2/graph_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "nr2/errors.hpp"
#include "nr2/format.hpp"

namespace nr2 {
namespace {

bool skippable(const std::string& line) {
    return line.empty() || line[0] == '#';
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

double parse_weight(const std::string& text, const std::string& path, int line_no) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw ParseError(path + ":" + std::to_string(line_no) + ": bad weight '" + text + "'");
    }
    return value;
}

int ensure_node(Graph& g, const std::string& id) {
    const int idx = g.index_of(id);
    return idx != -1 ? idx : g.add_node(id);
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open file: " + path);
    }
    return in;
}

// Strips a trailing '\r' so CRLF files parse like LF files.
void chomp(std::string& line) {
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
}

} // namespace

Graph load_edge_list(const std::string& path, const std::optional<std::string>& attrs_path,
                     bool directed) {
    std::ifstream in = open_or_throw(path);
    Graph g;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        chomp(line);
        if (skippable(line)) {
            continue;
        }
        const auto fields = split_tabs(line);
        if (fields.size() != 3) {
            throw ParseError(path + ":" + std::to_string(line_no) +
                             ": expected src<TAB>dst<TAB>weight");
        }
        const double w = parse_weight(fields[2], path, line_no);
        if (!std::isfinite(w) || w < 0.0) {
            throw ValidationError(path + ":" + std::to_string(line_no) +
                                  ": negative or non-finite weight");
        }
        const int u = ensure_node(g, fields[0]);
        const int v = ensure_node(g, fields[1]);
        if (directed) {
            g.add_edge(u, v, w);
        } else {
            g.add_undirected_edge(u, v, w);
        }
    }
    if (attrs_path.has_value()) {
        load_attributes(g, *attrs_path);
    }
    return g;
}

void load_attributes(Graph& g, const std::string& path) {
    std::ifstream in = open_or_throw(path);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        chomp(line);
        if (skippable(line)) {
            continue;
        }
        const auto fields = split_tabs(line);
        if (fields.size() != 3) {
            throw ParseError(path + ":" + std::to_string(line_no) +
                             ": expected node<TAB>attr_name<TAB>attr_value");
        }
        const int node = g.index_of(fields[0]);
        if (node == -1) {
            throw ValidationError(path + ":" + std::to_string(line_no) +
                                  ": attribute references unknown node '" + fields[0] + "'");
        }
        g.add_attribute(node, fields[1], fields[2]);
    }
}

std::vector<double> load_prior(const Graph& g, const std::string& path) {
    std::ifstream in = open_or_throw(path);
    std::vector<double> prior(g.size(), 0.0);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        chomp(line);
        if (skippable(line)) {
            continue;
        }
        const auto fields = split_tabs(line);
        if (fields.size() != 2) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": expected node<TAB>weight");
        }
        const int node = g.index_of(fields[0]);
        if (node == -1) {
            throw ValidationError(path + ":" + std::to_string(line_no) +
                                  ": prior references unknown node '" + fields[0] + "'");
        }
        const double w = parse_weight(fields[1], path, line_no);
        if (!std::isfinite(w) || w < 0.0) {
            throw ValidationError(path + ":" + std::to_string(line_no) +
                                  ": prior weights must be nonnegative");
        }
        prior[node] += w;
    }
    double sum = 0.0;
    for (double w : prior) {
        sum += w;
    }
    if (sum <= 0.0) {
        throw ValidationError(path + ": prior has zero total mass");
    }
    for (double& w : prior) {
        w /= sum;
    }
    return prior;
}

void write_edge_list(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write file: " + path);
    }
    for (int u = 0; u < g.size(); ++u) {
        for (const auto& [v, w] : g.neighbors(u)) {
            // one line per undirected pair; self edges and directed-only
            // entries are written as stored
            if (v < u && g.weight(v, u) == w) {
                continue;
            }
            out << g.node_id(u) << '\t' << g.node_id(v) << '\t' << format_double(w) << '\n';
        }
    }
}

void write_attributes(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write file: " + path);
    }
    for (int u = 0; u < g.size(); ++u) {
        for (const auto& name : g.attribute_names()) {
            if (const auto* vals = g.attribute_values(u, name)) {
                for (const auto& val : *vals) {
                    out << g.node_id(u) << '\t' << name << '\t' << val << '\n';
                }
            }
        }
    }
}

} // namespace nr2
