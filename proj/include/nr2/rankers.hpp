#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nr2/graph.hpp"
#include "nr2/solver.hpp"

namespace nr2 {

/// Parameters shared by the ranking algorithms. Fields unused by a given
/// algorithm are ignored by it.
struct RankParams {
    double lambda = 0.85;    ///< damping factor, [0, 1)
    double alpha = 0.5;      ///< negative-reinforcement strength, >= 0
    double beta = 0.1;       ///< absorbing-node prior weight, [0, 1]
    int k = 1;               ///< number of nodes to rank
    double lambda_mmr = 0.5; ///< MMR relevance/novelty trade-off, [0, 1]
    int divrank_iters = 100; ///< vertex-reinforced walk iteration budget
};

struct RankEntry {
    int node = -1;      ///< node index in the input graph
    double score = 0.0; ///< score at the moment the node was selected
};

struct RankingResult {
    std::string algorithm;
    RankParams params;
    std::vector<RankEntry> entries;
};

/// Per-iteration record of an NR2 run, for inspection and tests.
struct Nr2Trace {
    /// Sum of the reinforced prior at each solve, first solve included.
    std::vector<double> prior_sums;
    /// Smallest reinforced-prior entry over the ranked set, per reselection.
    std::vector<double> min_ranked_prior;
    double factorize_ms = 0.0; ///< one-time factorization cost
    double solve_ms = 0.0;     ///< total time spent in the k solves + argmaxes
};

/// PageRank scores: personalized PageRank under the uniform prior.
std::vector<double> pagerank(const TransitionMatrix& w, double lambda);

/**
 * Personalized PageRank via the linear-system form: solves
 * (I - lambda*W^T) p = (1 - lambda) r with a sparse factorization.
 * The prior is normalized to unit sum; it must be nonnegative.
 */
std::vector<double> personalized_pagerank(const TransitionMatrix& w, std::vector<double> prior,
                                          double lambda);

/**
 * Maximal Marginal Relevance. The first pick is the most relevant node;
 * each later pick maximizes
 *   lambda_mmr * relevance(v) - (1 - lambda_mmr) * max_{s in S} sim(v, s)
 * where sim is the raw graph weight. Ties break to the lowest index.
 */
RankingResult mmr_rank(const std::vector<double>& relevance, const Graph& g, double lambda_mmr,
                       int k);

/**
 * GRASSHOPPER-style absorbing-walk ranking. The first pick is the top
 * personalized-PageRank node; afterwards ranked nodes become absorbing
 * states of the teleport-inclusive walk P = lambda*W + (1-lambda)*1*r^T and
 * each step picks the transient node with the most expected visits,
 * averaged over a uniform start.
 */
RankingResult grasshopper_rank(const TransitionMatrix& w, std::vector<double> prior, double lambda,
                               int k, const std::vector<std::uint8_t>* candidate = nullptr);

/**
 * Expected visits to each transient node of the absorbing walk, i.e. the
 * column averages of the fundamental matrix (I - Q)^-1 over a uniform
 * start. Entries of `absorbed` get 0.
 */
std::vector<double> grasshopper_expected_visits(const TransitionMatrix& w,
                                                const std::vector<double>& prior, double lambda,
                                                const std::vector<int>& absorbed);

/**
 * DivRank: vertex-reinforced random walk with cumulative visit counts
 * N_{T+1} = N_T + pi_{T+1}, N_0 = 1, run for a fixed iteration budget.
 * Nodes are ranked by the final walk distribution.
 */
RankingResult divrank_rank(const TransitionMatrix& w, std::vector<double> prior, double lambda,
                           int iters, int k, const std::vector<std::uint8_t>* candidate = nullptr);

/// Final walk distribution of the vertex-reinforced walk after `iters` steps.
std::vector<double> divrank_distribution(const TransitionMatrix& w, std::vector<double> prior,
                                         double lambda, int iters);

/**
 * Negative Reinforcement Ranking (NR2).
 *
 * The graph is augmented with an absorbing node d, (I - lambda*W^T) is
 * factored once, and the first pick is a plain personalized-PageRank solve
 * (d gets prior 0). Each later pick rebuilds the prior from the original
 * one: the ranked and unranked blocks are normalized separately, the ranked
 * block is flipped to -alpha, the unranked block is scaled by
 * (1 + alpha - beta), and d receives beta, so the prior always sums to 1.
 * The absorbing node is never a candidate.
 */
RankingResult nr2_rank(const Graph& g, std::vector<double> prior, const RankParams& params,
                       Nr2Trace* trace = nullptr);

/**
 * The reinforced prior of one NR2 iteration: size n+1, built from the
 * original prior and the ranked-set mask. A block whose original mass is
 * zero falls back to the uniform distribution over that block.
 */
std::vector<double> nr2_reinforced_prior(const std::vector<double>& prior,
                                         const std::vector<std::uint8_t>& ranked, double alpha,
                                         double beta);

/**
 * Uniform dispatch over {pagerank, ppr, mmr, grasshopper, divrank, nr2}.
 * The prior is normalized on entry; a graph-level absorbing node is never
 * ranked. MMR's relevance is the PageRank score vector.
 */
RankingResult rank(const std::string& algorithm, const Graph& g, std::vector<double> prior,
                   const RankParams& params, Nr2Trace* trace = nullptr);

/// Indices of the k best scores among candidates, ties to the lowest index.
std::vector<int> top_k_by_score(const std::vector<double>& scores, int k,
                                const std::vector<std::uint8_t>& candidate);

} // namespace nr2
