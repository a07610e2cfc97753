#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nr2/graph.hpp"
#include "nr2/rankers.hpp"

namespace nr2 {

struct Document {
    std::string id;
    std::string text;
};

struct Sentence {
    std::string doc_id;
    int position = 1; // 1-based index within the document
    std::string raw;
    std::vector<std::string> tokens;
};

/**
 * Sentence-similarity graph. Node i corresponds to sentences[i] and carries
 * the id "<doc_id>:<position>" plus a "doc" attribute. Edges hold the cosine
 * similarity of the tf-idf vectors; every node has a unit self edge.
 */
struct SentenceGraph {
    Graph graph;
    std::vector<Sentence> sentences;
    std::vector<std::map<std::string, double>> vectors;
    double threshold = 0.1;
};

/**
 * Splits text at '.', '!' or '?' followed by whitespace. Splits are
 * suppressed after known abbreviations ("Dr.", "U.S.", ...) and after
 * single-letter initials ("J. Smith"). Positions are assigned 1..m.
 */
std::vector<Sentence> split_sentences(const std::string& text, const std::string& doc_id);

/// Embedded English stopword list.
const std::set<std::string>& default_stopwords();

/// One word per line; blank lines and '#' comments are skipped.
std::set<std::string> load_stopwords(const std::string& path);

/**
 * Fills s.tokens: lowercased alphanumeric runs of the raw text, minus
 * stopwords, each reduced to its stem.
 */
void preprocess(Sentence& s, const std::set<std::string>& stopwords);

/**
 * Builds tf-idf vectors (idf = ln(m / df)) and connects sentence pairs whose
 * cosine similarity is positive and at least `threshold`. A threshold of 0
 * keeps every positive-similarity pair.
 */
SentenceGraph build_sentence_graph(std::vector<Sentence> sentences, double threshold);

/// Prior over sentences proportional to position^(-gamma); gamma must be >= 0.
std::vector<double> position_prior(const std::vector<Sentence>& sentences, double gamma);

/**
 * Walks the ranking in order, keeping each sentence whose whitespace word
 * count fits the remaining budget and skipping those that do not. Selected
 * sentences are joined with single spaces.
 */
std::string extract_summary(const SentenceGraph& sg, const RankingResult& ranking, int budget);

struct SummarizeOptions {
    std::string algorithm = "nr2";
    RankParams params;
    double gamma = 1.0;
    double threshold = 0.1;
    int budget = 100;
    /// Rank only this many candidates when positive; 0 ranks every sentence.
    int candidate_cap = 0;
    /// Overrides the embedded stopword list when set.
    std::optional<std::set<std::string>> stopwords;
};

struct SummarizeOutcome {
    std::string summary;
    SentenceGraph graph;
    RankingResult ranking;
};

/// split -> preprocess -> graph -> position prior -> rank -> extract, with
/// the intermediate graph and ranking exposed for inspection.
SummarizeOutcome summarize_cluster_detailed(const std::vector<Document>& docs,
                                            const SummarizeOptions& opts);

std::string summarize_cluster(const std::vector<Document>& docs, const SummarizeOptions& opts);

} // namespace nr2
