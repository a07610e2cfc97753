#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "doctest.h"
#include "nr2/errors.hpp"
#include "nr2/stemmer.hpp"
#include "nr2/text_pipeline.hpp"
#include "support/run_cli.hpp"

using namespace nr2;

// Expected values are whole-pipeline outputs (all rule steps applied in
// sequence), cross-checked against an independent reference implementation.
TEST_CASE("stemmer plural and participle handling") {
    const std::pair<std::string, std::string> cases[] = {
        {"caresses", "caress"}, {"ponies", "poni"},   {"ties", "ti"},
        {"caress", "caress"},   {"cats", "cat"},      {"feed", "feed"},
        {"agreed", "agre"},     {"plastered", "plaster"}, {"bled", "bled"},
        {"motoring", "motor"},  {"sing", "sing"},     {"conflated", "conflat"},
        {"troubled", "troubl"}, {"sized", "size"},    {"hopping", "hop"},
        {"tanned", "tan"},      {"falling", "fall"},  {"hissing", "hiss"},
        {"fizzed", "fizz"},     {"failing", "fail"},  {"filing", "file"},
        {"happy", "happi"},     {"sky", "sky"},       {"skies", "ski"},
        {"crying", "cry"},      {"dying", "dy"},
    };
    for (const auto& [word, stem] : cases) {
        CAPTURE(word);
        CHECK(porter_stem(word) == stem);
    }
}

TEST_CASE("stemmer suffix stripping across the rule families") {
    const std::pair<std::string, std::string> cases[] = {
        {"relational", "relat"},      {"conditional", "condit"},
        {"rational", "ration"},       {"valenci", "valenc"},
        {"hesitanci", "hesit"},       {"digitizer", "digit"},
        {"conformabli", "conform"},   {"radicalli", "radic"},
        {"differentli", "differ"},    {"vileli", "vile"},
        {"analogousli", "analog"},    {"vietnamization", "vietnam"},
        {"predication", "predic"},    {"operator", "oper"},
        {"feudalism", "feudal"},      {"decisiveness", "decis"},
        {"hopefulness", "hope"},      {"callousness", "callous"},
        {"formaliti", "formal"},      {"sensitiviti", "sensit"},
        {"sensibiliti", "sensibl"},   {"triplicate", "triplic"},
        {"formative", "form"},        {"formalize", "formal"},
        {"electriciti", "electr"},    {"electrical", "electr"},
        {"hopeful", "hope"},          {"goodness", "good"},
        {"revival", "reviv"},         {"allowance", "allow"},
        {"inference", "infer"},       {"airliner", "airlin"},
        {"gyroscopic", "gyroscop"},   {"adjustable", "adjust"},
        {"defensible", "defens"},     {"irritant", "irrit"},
        {"replacement", "replac"},    {"adjustment", "adjust"},
        {"dependent", "depend"},      {"adoption", "adopt"},
        {"communism", "commun"},      {"activate", "activ"},
        {"angulariti", "angular"},    {"homologous", "homolog"},
        {"effective", "effect"},      {"bowdlerize", "bowdler"},
        {"probate", "probat"},        {"rate", "rate"},
        {"cease", "ceas"},            {"controll", "control"},
        {"roll", "roll"},             {"connected", "connect"},
        {"connection", "connect"},    {"relativity", "rel"},
    };
    for (const auto& [word, stem] : cases) {
        CAPTURE(word);
        CHECK(porter_stem(word) == stem);
    }
}

TEST_CASE("stemmer whole-word pipelines") {
    CHECK(porter_stem("generalizations") == "gener");
    CHECK(porter_stem("oscillators") == "oscil");
    CHECK(porter_stem("running") == "run");
    CHECK(porter_stem("dogs") == "dog");
    CHECK(porter_stem("libraries") == "librari");
    CHECK(porter_stem("funding") == "fund");
}

TEST_CASE("stemmer leaves short or non-alphabetic input alone") {
    CHECK(porter_stem("at") == "at");
    CHECK(porter_stem("a") == "a");
    CHECK(porter_stem("") == "");
    CHECK(porter_stem("c3po") == "c3po");
    CHECK(porter_stem("mixedCase") == "mixedCase");
}

TEST_CASE("sentence splitting") {
    SUBCASE("plain terminators") {
        const auto s = split_sentences("First one. Second one! Third one?", "d");
        REQUIRE(s.size() == 3);
        CHECK(s[0].raw == "First one.");
        CHECK(s[1].raw == "Second one!");
        CHECK(s[2].raw == "Third one?");
        CHECK(s[0].position == 1);
        CHECK(s[1].position == 2);
        CHECK(s[2].position == 3);
        CHECK(s[0].doc_id == "d");
    }
    SUBCASE("abbreviations do not split") {
        const auto s = split_sentences("Dr. Smith arrived late. Everyone waited.", "d");
        REQUIRE(s.size() == 2);
        CHECK(s[0].raw == "Dr. Smith arrived late.");
    }
    SUBCASE("single-letter initials do not split") {
        const auto s = split_sentences("J. Smith spoke first. Then silence.", "d");
        REQUIRE(s.size() == 2);
        CHECK(s[0].raw == "J. Smith spoke first.");
    }
    SUBCASE("a period mid-token does not split") {
        const auto s = split_sentences("Version 2.5 shipped today. It works.", "d");
        REQUIRE(s.size() == 2);
    }
    SUBCASE("trailing text without a terminator still counts") {
        const auto s = split_sentences("Complete sentence. trailing fragment", "d");
        REQUIRE(s.size() == 2);
        CHECK(s[1].raw == "trailing fragment");
    }
    SUBCASE("empty text gives no sentences") {
        CHECK(split_sentences("", "d").empty());
        CHECK(split_sentences("   \n ", "d").empty());
    }
}

TEST_CASE("token preprocessing") {
    Sentence s;
    s.raw = "The running dogs chased THE car, quickly.";
    preprocess(s, default_stopwords());
    CHECK(s.tokens == std::vector<std::string>{"run", "dog", "chase", "car", "quickli"});
}

TEST_CASE("stopword handling") {
    SUBCASE("defaults include the usual suspects") {
        const auto& stop = default_stopwords();
        for (const char* w : {"the", "a", "of", "and", "is", "to"}) {
            CAPTURE(w);
            CHECK(stop.count(w) == 1);
        }
        CHECK(stop.count("cat") == 0);
    }
    SUBCASE("custom lists load from disk") {
        const auto path = cli::fresh_path("stopwords");
        cli::write_file(path, "# comment\nfoo\nbar\n\n");
        const auto stop = load_stopwords(path.string());
        CHECK(stop == std::set<std::string>{"foo", "bar"});
    }
}

namespace {

std::vector<Sentence> toy_sentences() {
    std::vector<Sentence> ss(3);
    ss[0] = {"d1", 1, "apple banana.", {"appl", "banana"}};
    ss[1] = {"d2", 1, "apple banana again.", {"appl", "banana"}};
    ss[2] = {"d3", 1, "cherry pie.", {"cherri", "pie"}};
    return ss;
}

} // namespace

TEST_CASE("sentence graph construction") {
    SUBCASE("identical token vectors get cosine one") {
        SentenceGraph sg = build_sentence_graph(toy_sentences(), 0.1);
        REQUIRE(sg.graph.size() == 3);
        CHECK(sg.graph.node_id(0) == "d1:1");
        CHECK(sg.graph.node_id(1) == "d2:1");
        CHECK(sg.graph.node_id(2) == "d3:1");
        CHECK(sg.graph.weight(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(sg.graph.weight(1, 0) == doctest::Approx(1.0).epsilon(1e-12));
        // unrelated sentence stays isolated apart from its self edge
        CHECK(sg.graph.weight(0, 2) == 0.0);
        CHECK(sg.graph.weight(2, 2) == 1.0);
        // the doc attribute carries the source document
        REQUIRE(sg.graph.has_attribute("doc"));
        CHECK(*sg.graph.attribute_values(0, "doc") == std::set<std::string>{"d1"});
    }
    SUBCASE("terms in every sentence carry zero idf") {
        // 'appl' appears in both sentences, so idf = ln(2/2) = 0 and the
        // only remaining weights are on the distinct tokens
        std::vector<Sentence> ss(2);
        ss[0] = {"d1", 1, "apple banana.", {"appl", "banana"}};
        ss[1] = {"d2", 1, "apple cherry.", {"appl", "cherri"}};
        SentenceGraph sg = build_sentence_graph(ss, 0.0);
        CHECK(sg.graph.weight(0, 1) == 0.0);
        CHECK(sg.vectors[0].count("appl") == 0);
        CHECK(sg.vectors[0].count("banana") == 1);
    }
    SUBCASE("threshold filters weak pairs") {
        // every term has df = 2, so all idf weights are equal and each
        // sentence pair shares exactly one of its two terms: cosine = 0.5
        std::vector<Sentence> ss(3);
        ss[0] = {"d1", 1, "x.", {"alpha", "beta"}};
        ss[1] = {"d2", 1, "y.", {"alpha", "gamma"}};
        ss[2] = {"d3", 1, "z.", {"beta", "gamma"}};
        SentenceGraph strict = build_sentence_graph(ss, 0.6);
        CHECK(strict.graph.weight(0, 1) == 0.0);
        SentenceGraph loose = build_sentence_graph(ss, 0.4);
        CHECK(loose.graph.weight(0, 1) == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(loose.graph.weight(0, 2) == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(loose.graph.weight(1, 2) == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("invalid inputs are rejected") {
        CHECK_THROWS_AS(build_sentence_graph({}, 0.1), ParameterError);
        CHECK_THROWS_AS(build_sentence_graph(toy_sentences(), -0.5), ParameterError);
    }
    SUBCASE("a threshold above every cosine keeps only self edges") {
        SentenceGraph sg = build_sentence_graph(toy_sentences(), 1.5);
        CHECK(sg.graph.weight(0, 1) == 0.0);
        CHECK(sg.graph.weight(0, 0) == 1.0);
    }
}

TEST_CASE("position prior") {
    std::vector<Sentence> ss(2);
    ss[0] = {"d", 1, "a.", {}};
    ss[1] = {"d", 2, "b.", {}};

    SUBCASE("gamma one weights by inverse position") {
        const std::vector<double> r = position_prior(ss, 1.0);
        CHECK(r[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
        CHECK(r[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    }
    SUBCASE("gamma zero is uniform") {
        const std::vector<double> r = position_prior(ss, 0.0);
        CHECK(r[0] == doctest::Approx(0.5));
        CHECK(r[1] == doctest::Approx(0.5));
    }
    SUBCASE("negative gamma is rejected") {
        CHECK_THROWS_AS(position_prior(ss, -1.0), ParameterError);
    }
    SUBCASE("empty sentence list is rejected") {
        CHECK_THROWS_AS(position_prior({}, 1.0), ParameterError);
    }
}

TEST_CASE("summary extraction walks the ranking under a word budget") {
    std::vector<Sentence> ss(2);
    ss[0] = {"d", 1, "one two three four five six seven eight nine.", {"tok"}};
    ss[1] = {"d", 2, "alpha beta gamma delta.", {"tok"}};
    SentenceGraph sg = build_sentence_graph(ss, 0.0);

    RankingResult ranking;
    ranking.entries = {{0, 1.0}, {1, 0.5}};

    SUBCASE("an oversized sentence is skipped, not truncated") {
        CHECK(extract_summary(sg, ranking, 5) == "alpha beta gamma delta.");
    }
    SUBCASE("a large budget takes both in rank order") {
        CHECK(extract_summary(sg, ranking, 100) ==
              "one two three four five six seven eight nine. alpha beta gamma delta.");
    }
    SUBCASE("budget below every sentence gives an empty summary") {
        CHECK(extract_summary(sg, ranking, 3).empty());
    }
    SUBCASE("budget must be positive") {
        CHECK_THROWS_AS(extract_summary(sg, ranking, 0), ParameterError);
    }
}

TEST_CASE("cluster summarization") {
    const std::vector<Document> docs = {
        {"a.txt", "The economy grew fast this year. Analysts were surprised by the pace."},
        {"b.txt", "The economy grew fast this year again. Transport strikes continued."},
        {"c.txt", "Weather stayed calm across the region. Farmers expected strong harvests."},
    };

    SUBCASE("produces a budgeted summary") {
        SummarizeOptions opts;
        opts.budget = 20;
        const std::string summary = summarize_cluster(docs, opts);
        CHECK_FALSE(summary.empty());
        int words = 0;
        for (std::size_t i = 0; i < summary.size(); ++i) {
            if (summary[i] != ' ' && (i == 0 || summary[i - 1] == ' ')) {
                ++words;
            }
        }
        CHECK(words <= 20);
    }
    SUBCASE("exposes the graph and ranking") {
        SummarizeOptions opts;
        opts.candidate_cap = 2;
        const SummarizeOutcome out = summarize_cluster_detailed(docs, opts);
        CHECK(out.graph.graph.size() == 6);
        CHECK(out.ranking.entries.size() == 2);
        CHECK(out.ranking.algorithm == "nr2");
    }
    SUBCASE("candidate cap limits the ranking, not the graph") {
        SummarizeOptions opts;
        opts.candidate_cap = 1;
        const SummarizeOutcome out = summarize_cluster_detailed(docs, opts);
        CHECK(out.graph.graph.size() == 6);
        CHECK(out.ranking.entries.size() == 1);
    }
    SUBCASE("all ranking algorithms run end to end") {
        for (const char* algo :
             {"pagerank", "ppr", "mmr", "grasshopper", "divrank", "nr2"}) {
            CAPTURE(algo);
            SummarizeOptions opts;
            opts.algorithm = algo;
            opts.budget = 30;
            CHECK_FALSE(summarize_cluster(docs, opts).empty());
        }
    }
    SUBCASE("empty input is rejected") {
        SummarizeOptions opts;
        CHECK_THROWS_AS(summarize_cluster({}, opts), ParameterError);
        CHECK_THROWS_AS(summarize_cluster({{"e.txt", "   "}}, opts), ParameterError);
    }
    SUBCASE("negative candidate cap is rejected") {
        SummarizeOptions opts;
        opts.candidate_cap = -2;
        CHECK_THROWS_AS(summarize_cluster(docs, opts), ParameterError);
    }
}
