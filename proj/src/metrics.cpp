#include "nr2/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

#include "nr2/errors.hpp"

namespace nr2 {

double density(const Graph& g, const std::vector<int>& s) {
    std::vector<int> nodes = s;
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    if (nodes.size() < 2) {
        throw ParameterError("density needs at least 2 distinct nodes");
    }
    for (int u : nodes) {
        if (u < 0 || u >= g.size()) {
            throw ValidationError("density: unknown node " + std::to_string(u));
        }
        if (g.absorbing().has_value() && u == *g.absorbing()) {
            throw ParameterError("density: node set must exclude the absorbing node");
        }
    }
    long long present = 0;
    for (int u : nodes) {
        for (int v : nodes) {
            if (u != v && g.weight(u, v) > 0.0) {
                ++present;
            }
        }
    }
    const long long possible =
        static_cast<long long>(nodes.size()) * (static_cast<long long>(nodes.size()) - 1);
    return static_cast<double>(present) / static_cast<double>(possible);
}

CoverageReport attribute_coverage(const Graph& g, const std::vector<int>& s,
                                  const std::string& attribute) {
    if (!g.has_attribute(attribute)) {
        throw ParameterError("unknown attribute: " + attribute);
    }
    std::set<std::string> covered;
    for (int u : s) {
        if (u < 0 || u >= g.size()) {
            throw ValidationError("coverage: unknown node " + std::to_string(u));
        }
        if (const auto* vals = g.attribute_values(u, attribute)) {
            covered.insert(vals->begin(), vals->end());
        }
    }
    CoverageReport report;
    report.k = static_cast<int>(s.size());
    report.unique_values = static_cast<int>(covered.size());
    report.attribute = attribute;
    return report;
}

std::vector<std::string> rouge_tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::string current;
    for (unsigned char c : text) {
        if (std::isalnum(c)) {
            current.push_back(static_cast<char>(std::tolower(c)));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) {
        tokens.push_back(std::move(current));
    }
    return tokens;
}

RougeScore rouge1_recall(const std::string& candidate,
                         const std::vector<std::string>& references) {
    std::unordered_map<std::string, long long> candidate_counts;
    for (auto& tok : rouge_tokenize(candidate)) {
        ++candidate_counts[tok];
    }

    RougeScore score;
    double recall_sum = 0.0;
    int scored_references = 0;
    for (const auto& reference : references) {
        std::unordered_map<std::string, long long> reference_counts;
        long long total = 0;
        for (auto& tok : rouge_tokenize(reference)) {
            ++reference_counts[tok];
            ++total;
        }
        if (total == 0) {
            continue; // vacuous reference
        }
        long long overlap = 0;
        for (const auto& [tok, count] : reference_counts) {
            auto it = candidate_counts.find(tok);
            if (it != candidate_counts.end()) {
                overlap += std::min(count, it->second);
            }
        }
        score.overlap += overlap;
        score.reference_total += total;
        recall_sum += static_cast<double>(overlap) / static_cast<double>(total);
        ++scored_references;
    }
    if (scored_references == 0) {
        throw ParameterError("rouge1 needs at least one non-empty reference");
    }
    score.recall = recall_sum / scored_references;
    return score;
}

} // namespace nr2
