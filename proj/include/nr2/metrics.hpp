#pragma once

#include <string>
#include <vector>

#include "nr2/graph.hpp"

namespace nr2 {

struct CoverageReport {
    int k = 0;                 ///< length of the evaluated node list
    int unique_values = 0;     ///< distinct attribute values covered
    std::string attribute;
};

struct RougeScore {
    double recall = 0.0;     ///< mean per-reference unigram recall
    long long overlap = 0;       ///< clipped matching unigrams, summed over references
    long long reference_total = 0; ///< reference unigrams, summed over references
};

/**
 * Subgraph density: the fraction of ordered pairs (u, v), u != v, of `s`
 * joined by a positive-weight edge. Self edges never count. Requires
 * |s| >= 2 and that s excludes the absorbing node.
 */
double density(const Graph& g, const std::vector<int>& s);

/// Number of distinct values of `attribute` covered by the listed nodes.
CoverageReport attribute_coverage(const Graph& g, const std::vector<int>& s,
                                  const std::string& attribute);

/**
 * ROUGE-1 recall of a candidate text against one or more references.
 * Tokenization lowercases and splits on non-alphanumeric runs; per
 * reference, the clipped unigram overlap is divided by the reference
 * length, and the final score averages over the non-empty references.
 */
RougeScore rouge1_recall(const std::string& candidate, const std::vector<std::string>& references);

/// Lowercased alphanumeric-run tokens of a text.
std::vector<std::string> rouge_tokenize(const std::string& text);

} // namespace nr2
