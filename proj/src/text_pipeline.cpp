#include "nr2/text_pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "nr2/errors.hpp"
#include "nr2/stemmer.hpp"

namespace nr2 {

namespace {

bool space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && space(s[b])) ++b;
    while (e > b && space(s[e - 1])) --e;
    return s.substr(b, e - b);
}

const std::set<std::string>& abbreviations() {
    static const std::set<std::string> set = {
        "mr.",   "mrs.",  "ms.",   "dr.",   "prof.", "sr.",   "jr.",  "st.",
        "mt.",   "vs.",   "etc.",  "e.g.",  "i.e.",  "u.s.",  "u.k.", "u.n.",
        "inc.",  "ltd.",  "co.",   "corp.", "fig.",  "figs.", "no.",  "vol.",
        "pp.",   "dept.", "approx.", "est.", "al.",  "jan.",  "feb.", "mar.",
        "apr.",  "jun.",  "jul.",  "aug.",  "sep.",  "sept.", "oct.", "nov.",
        "dec.",
    };
    return set;
}

std::string lowercase(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

// The whitespace-delimited word that ends at text[i] (inclusive), minus any
// leading punctuation.
std::string word_ending_at(const std::string& text, std::size_t i, std::size_t start) {
    std::size_t b = i;
    while (b > start && !space(text[b - 1])) --b;
    while (b <= i && !alnum(text[b])) ++b;
    return text.substr(b, i - b + 1);
}

bool suppresses_split(const std::string& text, std::size_t i, std::size_t start) {
    const std::string word = word_ending_at(text, i, start);
    if (word.size() == 2 && word[1] == '.' &&
        std::isupper(static_cast<unsigned char>(word[0])))
        return true; // an initial, as in "J. Smith"
    return abbreviations().count(lowercase(word)) != 0;
}

int word_count(const std::string& s) {
    std::istringstream in(s);
    std::string w;
    int n = 0;
    while (in >> w) ++n;
    return n;
}

} // namespace

std::vector<Sentence> split_sentences(const std::string& text, const std::string& doc_id) {
    std::vector<Sentence> out;
    auto emit = [&](std::size_t b, std::size_t e) {
        std::string raw = trim(text.substr(b, e - b));
        if (raw.empty()) return;
        Sentence s;
        s.doc_id = doc_id;
        s.position = static_cast<int>(out.size()) + 1;
        s.raw = std::move(raw);
        out.push_back(std::move(s));
    };

    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c != '.' && c != '!' && c != '?') continue;
        if (i + 1 < text.size() && !space(text[i + 1])) continue;
        if (c == '.' && suppresses_split(text, i, start)) continue;
        emit(start, i + 1);
        start = i + 1;
    }
    emit(start, text.size());
    return out;
}

const std::set<std::string>& default_stopwords() {
    static const std::set<std::string> set = {
        "a",       "about",   "above",    "after",   "again",     "against",
        "all",     "also",    "am",       "an",      "and",       "any",
        "are",     "as",      "at",       "be",      "because",   "been",
        "before",  "being",   "below",    "between", "both",      "but",
        "by",      "can",     "cannot",   "could",   "did",       "do",
        "does",    "doing",   "don",      "down",    "during",    "each",
        "few",     "for",     "from",     "further", "had",       "has",
        "have",    "having",  "he",       "her",     "here",      "hers",
        "herself", "him",     "himself",  "his",     "how",       "i",
        "if",      "in",      "into",     "is",      "it",        "its",
        "itself",  "just",    "may",      "me",      "might",     "more",
        "most",    "must",    "my",       "myself",  "no",        "nor",
        "not",     "now",     "of",       "off",     "on",        "once",
        "only",    "or",      "other",    "our",     "ours",      "ourselves",
        "out",     "over",    "own",      "s",       "same",      "shall",
        "she",     "should",  "so",       "some",    "such",      "t",
        "than",    "that",    "the",      "their",   "theirs",    "them",
        "themselves", "then", "there",    "these",   "they",      "this",
        "those",   "through", "to",       "too",     "under",     "until",
        "up",      "upon",    "very",     "was",     "we",        "were",
        "what",    "when",    "where",    "which",   "while",     "who",
        "whom",    "why",     "will",     "with",    "won",       "would",
        "you",     "your",    "yours",    "yourself", "yourselves",
    };
    return set;
}

std::set<std::string> load_stopwords(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open stopword file: " + path);
    std::set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        words.insert(lowercase(line));
    }
    return words;
}

void preprocess(Sentence& s, const std::set<std::string>& stopwords) {
    s.tokens.clear();
    std::string run;
    auto flush = [&] {
        if (run.empty()) return;
        if (stopwords.count(run) == 0) s.tokens.push_back(porter_stem(run));
        run.clear();
    };
    for (char c : s.raw) {
        if (alnum(c))
            run.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        else
            flush();
    }
    flush();
}

SentenceGraph build_sentence_graph(std::vector<Sentence> sentences, double threshold) {
    if (sentences.empty()) throw ParameterError("at least one sentence is required");
    if (!std::isfinite(threshold) || threshold < 0.0)
        throw ParameterError("similarity threshold must be finite and nonnegative");

    const int m = static_cast<int>(sentences.size());
    std::map<std::string, int> df;
    for (const Sentence& s : sentences) {
        std::set<std::string> seen(s.tokens.begin(), s.tokens.end());
        for (const std::string& t : seen) ++df[t];
    }

    std::vector<std::map<std::string, double>> vectors(sentences.size());
    std::vector<double> norms(sentences.size(), 0.0);
    for (std::size_t i = 0; i < sentences.size(); ++i) {
        std::map<std::string, int> tf;
        for (const std::string& t : sentences[i].tokens) ++tf[t];
        double sq = 0.0;
        for (const auto& [term, count] : tf) {
            double w = count * std::log(static_cast<double>(m) / df.at(term));
            if (w > 0.0) {
                vectors[i][term] = w;
                sq += w * w;
            }
        }
        norms[i] = std::sqrt(sq);
    }

    SentenceGraph sg;
    sg.threshold = threshold;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
        const Sentence& s = sentences[i];
        int node = sg.graph.add_node(s.doc_id + ":" + std::to_string(s.position));
        sg.graph.add_attribute(node, "doc", s.doc_id);
        sg.graph.add_edge(node, node, 1.0);
    }
    for (std::size_t i = 0; i < sentences.size(); ++i) {
        if (norms[i] == 0.0) continue;
        for (std::size_t j = i + 1; j < sentences.size(); ++j) {
            if (norms[j] == 0.0) continue;
            const auto& small = vectors[i].size() <= vectors[j].size() ? vectors[i] : vectors[j];
            const auto& large = vectors[i].size() <= vectors[j].size() ? vectors[j] : vectors[i];
            double dot = 0.0;
            for (const auto& [term, w] : small) {
                auto it = large.find(term);
                if (it != large.end()) dot += w * it->second;
            }
            double cos = std::min(dot / (norms[i] * norms[j]), 1.0);
            if (cos > 0.0 && cos >= threshold)
                sg.graph.add_undirected_edge(static_cast<int>(i), static_cast<int>(j), cos);
        }
    }
    sg.sentences = std::move(sentences);
    sg.vectors = std::move(vectors);
    return sg;
}

std::vector<double> position_prior(const std::vector<Sentence>& sentences, double gamma) {
    if (sentences.empty()) throw ParameterError("at least one sentence is required");
    if (!std::isfinite(gamma) || gamma < 0.0)
        throw ParameterError("gamma must be finite and nonnegative");
    std::vector<double> prior(sentences.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
        prior[i] = std::pow(static_cast<double>(sentences[i].position), -gamma);
        sum += prior[i];
    }
    for (double& p : prior) p /= sum;
    return prior;
}

std::string extract_summary(const SentenceGraph& sg, const RankingResult& ranking, int budget) {
    if (budget < 1) throw ParameterError("summary budget must be at least 1 word");
    int remaining = budget;
    std::string summary;
    for (const RankEntry& entry : ranking.entries) {
        if (entry.node < 0 || entry.node >= static_cast<int>(sg.sentences.size()))
            throw ValidationError("ranked node is not a sentence: " + std::to_string(entry.node));
        const std::string& raw = sg.sentences[entry.node].raw;
        int words = word_count(raw);
        if (words > remaining) continue;
        if (!summary.empty()) summary += ' ';
        summary += raw;
        remaining -= words;
    }
    return summary;
}

SummarizeOutcome summarize_cluster_detailed(const std::vector<Document>& docs,
                                            const SummarizeOptions& opts) {
    if (opts.candidate_cap < 0) throw ParameterError("candidate cap must be nonnegative");
    const std::set<std::string>& stopwords =
        opts.stopwords ? *opts.stopwords : default_stopwords();

    std::vector<Sentence> sentences;
    for (const Document& doc : docs) {
        std::vector<Sentence> split = split_sentences(doc.text, doc.id);
        for (Sentence& s : split) {
            preprocess(s, stopwords);
            sentences.push_back(std::move(s));
        }
    }
    if (sentences.empty()) throw ParameterError("no sentences found in input documents");

    SummarizeOutcome outcome;
    outcome.graph = build_sentence_graph(std::move(sentences), opts.threshold);
    std::vector<double> prior = position_prior(outcome.graph.sentences, opts.gamma);

    RankParams params = opts.params;
    params.k = static_cast<int>(outcome.graph.sentences.size());
    if (opts.candidate_cap > 0) params.k = std::min(params.k, opts.candidate_cap);

    outcome.ranking = rank(opts.algorithm, outcome.graph.graph, prior, params);
    outcome.summary = extract_summary(outcome.graph, outcome.ranking, opts.budget);
    return outcome;
}

std::string summarize_cluster(const std::vector<Document>& docs, const SummarizeOptions& opts) {
    return summarize_cluster_detailed(docs, opts).summary;
}

} // namespace nr2
