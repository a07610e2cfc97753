#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "nr2/errors.hpp"
#include "nr2/format.hpp"
#include "nr2/graph.hpp"
#include "nr2/graph_io.hpp"
#include "nr2/metrics.hpp"
#include "nr2/planted_partition.hpp"
#include "nr2/rankers.hpp"
#include "nr2/text_pipeline.hpp"

namespace {

using nlohmann::json;

double ms_between(std::chrono::steady_clock::time_point a,
                  std::chrono::steady_clock::time_point b) {
    return std::chrono::duration<double, std::milli>(b - a).count();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw nr2::IoError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw nr2::IoError("cannot open output file: " + out_path);
    out << text;
    if (!out) throw nr2::IoError("failed writing output file: " + out_path);
}

std::vector<nr2::Document> load_documents(const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) throw nr2::IoError("not a directory: " + dir);
    std::vector<fs::path> paths;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::string name = entry.path().filename().string();
        if (name.empty() || name[0] == '.') continue;
        paths.push_back(entry.path());
    }
    std::sort(paths.begin(), paths.end());
    std::vector<nr2::Document> docs;
    for (const auto& p : paths) docs.push_back({p.filename().string(), read_file(p.string())});
    if (docs.empty()) throw nr2::ParameterError("no documents found in: " + dir);
    return docs;
}

std::vector<double> make_prior(const nr2::Graph& g, const std::string& spec) {
    if (spec == "uniform")
        return std::vector<double>(g.size(), g.size() > 0 ? 1.0 / g.size() : 0.0);
    return nr2::load_prior(g, spec);
}

std::string resolve_attribute(const nr2::Graph& g, const std::string& requested) {
    if (!requested.empty()) return requested;
    std::vector<std::string> names = g.attribute_names();
    if (names.empty())
        throw nr2::ParameterError("graph has no node attributes; pass --attribute");
    return names.front();
}

json ranking_to_json(const nr2::Graph& g, const nr2::RankingResult& result) {
    json entries = json::array();
    for (const nr2::RankEntry& e : result.entries)
        entries.push_back({{"node", g.node_id(e.node)}, {"score", e.score}});
    return json{{"algorithm", result.algorithm},
                {"entries", entries},
                {"params",
                 {{"alpha", result.params.alpha},
                  {"beta", result.params.beta},
                  {"divrank_iters", result.params.divrank_iters},
                  {"k", result.params.k},
                  {"lambda", result.params.lambda},
                  {"lambda_mmr", result.params.lambda_mmr}}}};
}

std::string ranking_to_tsv(const nr2::Graph& g, const nr2::RankingResult& result) {
    std::string out;
    for (const nr2::RankEntry& e : result.entries) {
        out += g.node_id(e.node);
        out += '\t';
        out += nr2::format_double(e.score);
        out += '\n';
    }
    return out;
}

struct RankOpts {
    std::string input;
    std::string attrs;
    std::string algo = "nr2";
    std::string prior = "uniform";
    std::string format = "json";
    std::string out;
    bool directed = false;
    nr2::RankParams params;
};

int run_rank(const RankOpts& o) {
    std::optional<std::string> attrs;
    if (!o.attrs.empty()) attrs = o.attrs;
    nr2::Graph g = nr2::load_edge_list(o.input, attrs, o.directed);
    std::vector<double> prior = make_prior(g, o.prior);
    nr2::RankingResult result = nr2::rank(o.algo, g, std::move(prior), o.params);
    if (o.format == "tsv")
        write_text(ranking_to_tsv(g, result), o.out);
    else
        write_text(ranking_to_json(g, result).dump(2) + "\n", o.out);
    return 0;
}

struct SweepOpts {
    std::string input;
    std::string attrs;
    std::string docs;
    std::string stopwords;
    std::string algo = "nr2";
    std::string prior = "uniform";
    std::string param = "alpha";
    std::string attribute;
    std::string out;
    std::vector<double> values;
    int k = 10;
    double gamma = 1.0;
    double threshold = 0.1;
    bool directed = false;
    bool timing = false;
    nr2::RankParams params;
};

void set_rank_param(nr2::RankParams& p, const std::string& name, double value) {
    if (name == "alpha")
        p.alpha = value;
    else if (name == "beta")
        p.beta = value;
    else if (name == "lambda")
        p.lambda = value;
    else
        throw nr2::ParameterError("unknown sweep parameter: " + name);
}

int run_sweep(const SweepOpts& o) {
    if (o.input.empty() == o.docs.empty())
        throw nr2::ParameterError("pass exactly one of --input and --docs");
    if (o.values.empty()) throw nr2::ParameterError("sweep needs at least one value");

    nr2::Graph graph;
    std::vector<nr2::Sentence> sentences;
    std::vector<double> base_prior;
    if (!o.input.empty()) {
        if (o.param == "gamma")
            throw nr2::ParameterError("gamma sweeps need --docs (gamma shapes the sentence prior)");
        std::optional<std::string> attrs;
        if (!o.attrs.empty()) attrs = o.attrs;
        graph = nr2::load_edge_list(o.input, attrs, o.directed);
        base_prior = make_prior(graph, o.prior);
    } else {
        std::set<std::string> stopwords =
            o.stopwords.empty() ? nr2::default_stopwords() : nr2::load_stopwords(o.stopwords);
        std::vector<nr2::Sentence> all;
        for (const nr2::Document& doc : load_documents(o.docs)) {
            std::vector<nr2::Sentence> split = nr2::split_sentences(doc.text, doc.id);
            for (nr2::Sentence& s : split) {
                nr2::preprocess(s, stopwords);
                all.push_back(std::move(s));
            }
        }
        nr2::SentenceGraph sg = nr2::build_sentence_graph(std::move(all), o.threshold);
        sentences = std::move(sg.sentences);
        graph = std::move(sg.graph);
        base_prior = nr2::position_prior(sentences, o.gamma);
    }

    const std::string attribute = resolve_attribute(graph, o.attribute);
    std::string csv = "param_value,k,density,coverage,wall_time_ms\n";
    for (double value : o.values) {
        nr2::RankParams params = o.params;
        params.k = o.k;
        std::vector<double> prior = base_prior;
        if (o.param == "gamma")
            prior = nr2::position_prior(sentences, value);
        else
            set_rank_param(params, o.param, value);

        auto t0 = std::chrono::steady_clock::now();
        nr2::RankingResult result = nr2::rank(o.algo, graph, std::move(prior), params);
        auto t1 = std::chrono::steady_clock::now();

        std::vector<int> nodes;
        for (const nr2::RankEntry& e : result.entries) nodes.push_back(e.node);
        double dens = nr2::density(graph, nodes);
        int coverage = nr2::attribute_coverage(graph, nodes, attribute).unique_values;

        csv += nr2::format_double(value);
        csv += ',';
        csv += std::to_string(o.k);
        csv += ',';
        csv += nr2::format_double(dens);
        csv += ',';
        csv += std::to_string(coverage);
        csv += ',';
        csv += o.timing ? nr2::format_double(ms_between(t0, t1)) : "0";
        csv += '\n';
    }
    write_text(csv, o.out);
    return 0;
}

struct SynthOpts {
    nr2::PlantedPartitionSpec spec;
    std::string out_prefix;
};

int run_synth(const SynthOpts& o) {
    nr2::Graph g = nr2::generate_planted_partition(o.spec);
    nr2::write_edge_list(g, o.out_prefix + ".edges.tsv");
    nr2::write_attributes(g, o.out_prefix + ".attrs.tsv");
    return 0;
}

struct SummarizeOpts {
    std::string docs;
    std::string stopwords;
    std::string out;
    std::string emit_graph;
    nr2::SummarizeOptions options;
};

int run_summarize(const SummarizeOpts& o) {
    nr2::SummarizeOptions options = o.options;
    if (!o.stopwords.empty()) options.stopwords = nr2::load_stopwords(o.stopwords);
    nr2::SummarizeOutcome outcome = nr2::summarize_cluster_detailed(load_documents(o.docs), options);
    if (!o.emit_graph.empty()) nr2::write_edge_list(outcome.graph.graph, o.emit_graph);
    write_text(outcome.summary + "\n", o.out);
    return 0;
}

struct EvalOpts {
    std::string ranking;
    std::string input;
    std::string attrs;
    std::string summary;
    std::string refs;
    std::vector<std::string> attributes;
    bool directed = false;
    std::string out;
};

json parse_ranking_file(const std::string& path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw nr2::ParseError("invalid ranking JSON in " + path + ": " + e.what());
    }
}

int run_eval(const EvalOpts& o) {
    if (!o.summary.empty()) {
        if (o.refs.empty())
            throw nr2::ParameterError("--summary needs --refs with reference texts");
        std::string candidate = read_file(o.summary);
        std::vector<std::string> references;
        for (const nr2::Document& doc : load_documents(o.refs)) references.push_back(doc.text);
        nr2::RougeScore score = nr2::rouge1_recall(candidate, references);
        json report{{"overlap", score.overlap},
                    {"reference_total", score.reference_total},
                    {"rouge1_recall", score.recall}};
        write_text(report.dump(2) + "\n", o.out);
        return 0;
    }
    if (o.ranking.empty() || o.input.empty())
        throw nr2::ParameterError("eval needs --ranking and --input, or --summary and --refs");

    std::optional<std::string> attrs;
    if (!o.attrs.empty()) attrs = o.attrs;
    nr2::Graph g = nr2::load_edge_list(o.input, attrs, o.directed);

    json ranking = parse_ranking_file(o.ranking);
    if (!ranking.contains("entries") || !ranking["entries"].is_array())
        throw nr2::ParseError("ranking JSON has no entries array: " + o.ranking);
    std::vector<int> nodes;
    for (const json& entry : ranking["entries"]) {
        std::string id = entry.at("node").get<std::string>();
        int idx = g.index_of(id);
        if (idx < 0) throw nr2::ValidationError("ranked node not in graph: " + id);
        nodes.push_back(idx);
    }

    std::vector<std::string> attributes = o.attributes;
    if (attributes.empty()) attributes = g.attribute_names();
    json coverage = json::object();
    for (const std::string& name : attributes)
        coverage[name] = nr2::attribute_coverage(g, nodes, name).unique_values;

    json report{{"coverage", coverage},
                {"density", nr2::density(g, nodes)},
                {"k", nodes.size()}};
    write_text(report.dump(2) + "\n", o.out);
    return 0;
}

void add_rank_param_flags(CLI::App* cmd, nr2::RankParams& p) {
    cmd->add_option("--lambda", p.lambda, "damping factor, in [0, 1)")->capture_default_str();
    cmd->add_option("--alpha", p.alpha, "negative-reinforcement strength, >= 0")
        ->capture_default_str();
    cmd->add_option("--beta", p.beta, "absorbing-node prior weight, in [0, 1]")
        ->capture_default_str();
    cmd->add_option("--lambda-mmr", p.lambda_mmr, "MMR relevance/novelty trade-off, in [0, 1]")
        ->capture_default_str();
    cmd->add_option("--divrank-iters", p.divrank_iters, "vertex-reinforced walk iterations")
        ->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Diversity-aware graph ranking toolkit"};
    app.require_subcommand(1);

    RankOpts ro;
    std::uint64_t unused_seed = 0;
    CLI::App* rank_cmd = app.add_subcommand("rank", "Rank nodes of an edge-list graph");
    rank_cmd->add_option("--input", ro.input, "edge list TSV (src<TAB>dst<TAB>weight)")
        ->required();
    rank_cmd->add_option("--attrs", ro.attrs, "node attribute TSV");
    rank_cmd
        ->add_option("--algo", ro.algo,
                     "nr2 | pagerank | ppr | mmr | grasshopper | divrank")
        ->capture_default_str();
    rank_cmd->add_option("--k", ro.params.k, "number of nodes to rank")->capture_default_str();
    rank_cmd->add_option("--prior", ro.prior, "'uniform' or a node<TAB>weight TSV file")
        ->capture_default_str();
    rank_cmd->add_option("--format", ro.format, "output format")
        ->check(CLI::IsMember({"json", "tsv"}))
        ->capture_default_str();
    rank_cmd->add_option("--out", ro.out, "output file (default: stdout)");
    rank_cmd->add_flag("--directed", ro.directed, "treat edge lines as one-directional");
    rank_cmd->add_option("--seed", unused_seed, "accepted for script symmetry; ranking is deterministic");
    add_rank_param_flags(rank_cmd, ro.params);

    SweepOpts so;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "Rank repeatedly over a parameter range, emit CSV");
    sweep_cmd->add_option("--input", so.input, "edge list TSV (graph mode)");
    sweep_cmd->add_option("--attrs", so.attrs, "node attribute TSV");
    sweep_cmd->add_option("--docs", so.docs, "document directory (sentence-graph mode)");
    sweep_cmd->add_option("--stopwords", so.stopwords, "stopword file overriding the default list");
    sweep_cmd->add_option("--algo", so.algo, "ranking algorithm")->capture_default_str();
    sweep_cmd->add_option("--prior", so.prior, "'uniform' or a prior TSV (graph mode)")
        ->capture_default_str();
    sweep_cmd->add_option("--param", so.param, "swept parameter")
        ->check(CLI::IsMember({"alpha", "beta", "lambda", "gamma"}))
        ->capture_default_str();
    sweep_cmd->add_option("--values", so.values, "comma-separated parameter values")
        ->delimiter(',')
        ->required();
    sweep_cmd->add_option("--k", so.k, "ranking depth per sweep point")->capture_default_str();
    sweep_cmd->add_option("--attribute", so.attribute,
                          "coverage attribute (default: first attribute in the graph)");
    sweep_cmd->add_option("--gamma", so.gamma, "position-prior decay (sentence-graph mode)")
        ->capture_default_str();
    sweep_cmd->add_option("--threshold", so.threshold, "cosine threshold (sentence-graph mode)")
        ->capture_default_str();
    sweep_cmd->add_flag("--directed", so.directed, "treat edge lines as one-directional");
    sweep_cmd->add_flag("--timing", so.timing,
                        "fill wall_time_ms with measured times (off: 0 for reproducible bytes)");
    sweep_cmd->add_option("--out", so.out, "output file (default: stdout)");
    sweep_cmd->add_option("--seed", unused_seed,
                          "accepted for script symmetry; sweeps are deterministic");
    add_rank_param_flags(sweep_cmd, so.params);

    SynthOpts yo;
    CLI::App* synth_cmd =
        app.add_subcommand("synth", "Generate a planted-partition benchmark graph");
    synth_cmd->add_option("--clusters", yo.spec.clusters, "number of planted communities")
        ->required();
    synth_cmd->add_option("--size", yo.spec.size, "nodes per community")->required();
    synth_cmd->add_option("--p-in", yo.spec.p_in, "intra-community edge probability")->required();
    synth_cmd->add_option("--p-out", yo.spec.p_out, "inter-community edge probability")
        ->required();
    synth_cmd->add_option("--seed", yo.spec.seed, "generator seed")->required();
    synth_cmd->add_option("--out-prefix", yo.out_prefix, "writes <prefix>.edges.tsv and <prefix>.attrs.tsv")
        ->required();

    SummarizeOpts mo;
    CLI::App* summarize_cmd =
        app.add_subcommand("summarize", "Extract a budgeted summary from a document directory");
    summarize_cmd->add_option("--docs", mo.docs, "directory of plain-text documents")->required();
    summarize_cmd->add_option("--algo", mo.options.algorithm, "ranking algorithm")
        ->capture_default_str();
    summarize_cmd->add_option("--gamma", mo.options.gamma, "position-prior decay")
        ->capture_default_str();
    summarize_cmd->add_option("--threshold", mo.options.threshold, "cosine edge threshold")
        ->capture_default_str();
    summarize_cmd->add_option("--budget", mo.options.budget, "summary word budget")
        ->capture_default_str();
    summarize_cmd->add_option("--k-cap", mo.options.candidate_cap,
                              "rank at most this many sentences (0: all)")
        ->capture_default_str();
    summarize_cmd->add_option("--stopwords", mo.stopwords, "stopword file overriding the default list");
    summarize_cmd->add_option("--emit-graph", mo.emit_graph, "also write the sentence graph as TSV");
    summarize_cmd->add_option("--out", mo.out, "output file (default: stdout)");
    add_rank_param_flags(summarize_cmd, mo.options.params);

    EvalOpts eo;
    CLI::App* eval_cmd = app.add_subcommand("eval", "Score a ranking or summary");
    eval_cmd->add_option("--ranking", eo.ranking, "ranking JSON produced by rank");
    eval_cmd->add_option("--input", eo.input, "edge list TSV the ranking refers to");
    eval_cmd->add_option("--attrs", eo.attrs, "node attribute TSV");
    eval_cmd->add_option("--attribute", eo.attributes,
                         "coverage attribute, repeatable (default: all attributes)");
    eval_cmd->add_option("--summary", eo.summary, "candidate summary file (ROUGE mode)");
    eval_cmd->add_option("--refs", eo.refs, "directory of reference summaries (ROUGE mode)");
    eval_cmd->add_flag("--directed", eo.directed, "treat edge lines as one-directional");
    eval_cmd->add_option("--out", eo.out, "output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(rank_cmd)) return run_rank(ro);
        if (app.got_subcommand(sweep_cmd)) return run_sweep(so);
        if (app.got_subcommand(synth_cmd)) return run_synth(yo);
        if (app.got_subcommand(summarize_cmd)) return run_summarize(mo);
        if (app.got_subcommand(eval_cmd)) return run_eval(eo);
    } catch (const nr2::SolverError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const nr2::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
