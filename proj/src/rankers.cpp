#include "nr2/rankers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "nr2/errors.hpp"

namespace nr2 {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<double> normalize_prior(std::vector<double> prior, int n) {
    if (static_cast<int>(prior.size()) != n) {
        throw ValidationError("prior length does not match graph size");
    }
    double sum = 0.0;
    for (double v : prior) {
        if (!std::isfinite(v) || v < 0.0) {
            throw ValidationError("prior entries must be finite and nonnegative");
        }
        sum += v;
    }
    if (sum <= 0.0) {
        throw ValidationError("prior has zero total mass");
    }
    for (double& v : prior) {
        v /= sum;
    }
    return prior;
}

std::vector<std::uint8_t> all_candidates(int n) {
    return std::vector<std::uint8_t>(n, 1);
}

int argmax(const std::vector<double>& scores, const std::vector<std::uint8_t>& candidate) {
    int best = -1;
    double best_score = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < static_cast<int>(scores.size()); ++i) {
        if (candidate[i] && scores[i] > best_score) {
            best = i;
            best_score = scores[i];
        }
    }
    if (best == -1) {
        throw ParameterError("no candidate nodes left to rank");
    }
    return best;
}

void check_k(int k, int candidates) {
    if (k < 1 || k > candidates) {
        throw ParameterError("k must satisfy 1 <= k <= " + std::to_string(candidates));
    }
}

} // namespace

std::vector<int> top_k_by_score(const std::vector<double>& scores, int k,
                                const std::vector<std::uint8_t>& candidate) {
    std::vector<int> order;
    order.reserve(scores.size());
    for (int i = 0; i < static_cast<int>(scores.size()); ++i) {
        if (candidate[i]) {
            order.push_back(i);
        }
    }
    check_k(k, static_cast<int>(order.size()));
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (scores[a] != scores[b]) {
            return scores[a] > scores[b];
        }
        return a < b;
    });
    order.resize(k);
    return order;
}

std::vector<double> pagerank(const TransitionMatrix& w, double lambda) {
    std::vector<double> uniform(w.size(), 1.0 / w.size());
    return personalized_pagerank(w, std::move(uniform), lambda);
}

std::vector<double> personalized_pagerank(const TransitionMatrix& w, std::vector<double> prior,
                                          double lambda) {
    prior = normalize_prior(std::move(prior), w.size());
    Factorization f(w, lambda);
    return f.solve(prior);
}

RankingResult mmr_rank(const std::vector<double>& relevance, const Graph& g, double lambda_mmr,
                       int k) {
    if (!(lambda_mmr >= 0.0 && lambda_mmr <= 1.0)) {
        throw ParameterError("lambda_mmr must lie in [0, 1]");
    }
    const int n = g.size();
    if (static_cast<int>(relevance.size()) != n) {
        throw ValidationError("relevance length does not match graph size");
    }
    std::vector<std::uint8_t> candidate = all_candidates(n);
    if (g.absorbing().has_value()) {
        candidate[*g.absorbing()] = 0;
    }
    const int pool = static_cast<int>(std::count(candidate.begin(), candidate.end(), 1));
    check_k(k, pool);

    RankingResult result;
    result.algorithm = "mmr";
    result.params.lambda_mmr = lambda_mmr;
    result.params.k = k;

    const int first = argmax(relevance, candidate);
    candidate[first] = 0;
    result.entries.push_back({first, relevance[first]});
    std::vector<int> selected{first};

    while (static_cast<int>(result.entries.size()) < k) {
        int best = -1;
        double best_score = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i) {
            if (!candidate[i]) {
                continue;
            }
            double max_sim = 0.0;
            for (int s : selected) {
                max_sim = std::max(max_sim, g.weight(i, s));
            }
            const double score = lambda_mmr * relevance[i] - (1.0 - lambda_mmr) * max_sim;
            if (score > best_score) {
                best = i;
                best_score = score;
            }
        }
        candidate[best] = 0;
        selected.push_back(best);
        result.entries.push_back({best, best_score});
    }
    return result;
}

std::vector<double> grasshopper_expected_visits(const TransitionMatrix& w,
                                                const std::vector<double>& prior, double lambda,
                                                const std::vector<int>& absorbed) {
    const int n = w.size();
    std::vector<std::uint8_t> is_absorbed(n, 0);
    for (int a : absorbed) {
        if (a < 0 || a >= n) {
            throw ValidationError("absorbed node index out of range");
        }
        is_absorbed[a] = 1;
    }

    std::vector<int> transient;
    std::vector<int> position(n, -1);
    for (int i = 0; i < n; ++i) {
        if (!is_absorbed[i]) {
            position[i] = static_cast<int>(transient.size());
            transient.push_back(i);
        }
    }
    const int t = static_cast<int>(transient.size());
    if (t == 0) {
        return std::vector<double>(n, 0.0);
    }

    // M = I - Q^T with Q(i,j) = lambda*W(i,j) + (1-lambda)*r(j) on the
    // transient block of P = lambda*W + (1-lambda)*1*r^T.
    Eigen::MatrixXd m(t, t);
    for (int a = 0; a < t; ++a) {
        m.row(a).setConstant(-(1.0 - lambda) * prior[transient[a]]);
    }
    const auto& offsets = w.row_offsets();
    const auto& cols = w.cols();
    const auto& vals = w.values();
    for (int b = 0; b < t; ++b) {
        const int u = transient[b];
        for (int p = offsets[u]; p < offsets[u + 1]; ++p) {
            const int v = cols[p];
            if (position[v] != -1) {
                m(position[v], b) -= lambda * vals[p];
            }
        }
    }
    m.diagonal().array() += 1.0;

    // expected visits averaged over a uniform transient start:
    // (1/t) * N^T * 1 with N = (I - Q)^-1
    Eigen::VectorXd rhs = Eigen::VectorXd::Constant(t, 1.0 / t);
    Eigen::VectorXd y = m.partialPivLu().solve(rhs);
    if (!y.allFinite()) {
        throw SolverError("absorbing-walk system is singular");
    }

    std::vector<double> visits(n, 0.0);
    for (int a = 0; a < t; ++a) {
        visits[transient[a]] = y[a];
    }
    return visits;
}

RankingResult grasshopper_rank(const TransitionMatrix& w, std::vector<double> prior, double lambda,
                               int k, const std::vector<std::uint8_t>* candidate_in) {
    const int n = w.size();
    prior = normalize_prior(std::move(prior), n);

    RankingResult result;
    result.algorithm = "grasshopper";
    result.params.lambda = lambda;
    result.params.k = k;

    std::vector<std::uint8_t> candidate =
        candidate_in != nullptr ? *candidate_in : all_candidates(n);
    check_k(k, static_cast<int>(std::count(candidate.begin(), candidate.end(), 1)));

    const std::vector<double> ppr = personalized_pagerank(w, prior, lambda);
    const int first = argmax(ppr, candidate);
    candidate[first] = 0;
    result.entries.push_back({first, ppr[first]});
    std::vector<int> absorbed{first};

    while (static_cast<int>(result.entries.size()) < k) {
        const std::vector<double> visits = grasshopper_expected_visits(w, prior, lambda, absorbed);
        const int pick = argmax(visits, candidate);
        candidate[pick] = 0;
        absorbed.push_back(pick);
        result.entries.push_back({pick, visits[pick]});
    }
    return result;
}

std::vector<double> divrank_distribution(const TransitionMatrix& w, std::vector<double> prior,
                                         double lambda, int iters) {
    if (iters < 1) {
        throw ParameterError("divrank needs iters >= 1");
    }
    if (!(lambda >= 0.0 && lambda < 1.0)) {
        throw ParameterError("damping factor must satisfy 0 <= lambda < 1");
    }
    const int n = w.size();
    prior = normalize_prior(std::move(prior), n);

    const auto& offsets = w.row_offsets();
    const auto& cols = w.cols();
    const auto& vals = w.values();

    std::vector<double> pi = prior;
    std::vector<double> visits(n, 1.0); // N_0
    std::vector<double> degree_norm(n);
    std::vector<double> next(n);
    for (int step = 0; step < iters; ++step) {
        for (int u = 0; u < n; ++u) {
            double d = 0.0;
            for (int p = offsets[u]; p < offsets[u + 1]; ++p) {
                d += vals[p] * visits[cols[p]];
            }
            degree_norm[u] = d;
        }
        std::fill(next.begin(), next.end(), 0.0);
        for (int u = 0; u < n; ++u) {
            const double coef = lambda * pi[u] / degree_norm[u];
            if (coef == 0.0) {
                continue;
            }
            for (int p = offsets[u]; p < offsets[u + 1]; ++p) {
                next[cols[p]] += coef * vals[p] * visits[cols[p]];
            }
        }
        for (int v = 0; v < n; ++v) {
            next[v] += (1.0 - lambda) * prior[v];
            visits[v] += next[v];
        }
        pi.swap(next);
    }
    return pi;
}

RankingResult divrank_rank(const TransitionMatrix& w, std::vector<double> prior, double lambda,
                           int iters, int k, const std::vector<std::uint8_t>* candidate) {
    const std::vector<double> pi = divrank_distribution(w, std::move(prior), lambda, iters);

    RankingResult result;
    result.algorithm = "divrank";
    result.params.lambda = lambda;
    result.params.divrank_iters = iters;
    result.params.k = k;
    const std::vector<std::uint8_t> mask =
        candidate != nullptr ? *candidate : all_candidates(w.size());
    for (int i : top_k_by_score(pi, k, mask)) {
        result.entries.push_back({i, pi[i]});
    }
    return result;
}

std::vector<double> nr2_reinforced_prior(const std::vector<double>& prior,
                                         const std::vector<std::uint8_t>& ranked, double alpha,
                                         double beta) {
    const int n = static_cast<int>(prior.size());
    if (static_cast<int>(ranked.size()) != n) {
        throw ValidationError("ranked mask length does not match prior length");
    }
    double sum_ranked = 0.0;
    double sum_unranked = 0.0;
    int n_ranked = 0;
    for (int i = 0; i < n; ++i) {
        if (ranked[i]) {
            sum_ranked += prior[i];
            ++n_ranked;
        } else {
            sum_unranked += prior[i];
        }
    }
    const int n_unranked = n - n_ranked;

    std::vector<double> out(n + 1, 0.0);
    for (int i = 0; i < n; ++i) {
        if (ranked[i]) {
            // normalize within the ranked block, then flip to -alpha
            const double base = sum_ranked > 0.0 ? prior[i] / sum_ranked : 1.0 / n_ranked;
            out[i] = -alpha * base;
        } else {
            const double base = sum_unranked > 0.0 ? prior[i] / sum_unranked : 1.0 / n_unranked;
            out[i] = (1.0 + alpha - beta) * base;
        }
    }
    out[n] = beta; // absorbing node
    return out;
}

RankingResult nr2_rank(const Graph& g, std::vector<double> prior, const RankParams& params,
                       Nr2Trace* trace) {
    if (g.absorbing().has_value()) {
        throw ValidationError("nr2 expects a graph without an absorbing node");
    }
    if (params.alpha < 0.0) {
        throw ParameterError("alpha must be >= 0");
    }
    if (!(params.beta >= 0.0 && params.beta <= 1.0)) {
        throw ParameterError("beta must lie in [0, 1]");
    }
    const int n = g.size();
    check_k(params.k, n);
    prior = normalize_prior(std::move(prior), n);

    const Graph augmented = augment_absorbing(g);
    const int d = n;
    const TransitionMatrix w = row_normalize(augmented);

    auto t0 = Clock::now();
    const Factorization f(w, params.lambda);
    if (trace != nullptr) {
        trace->factorize_ms = elapsed_ms(t0);
    }

    RankingResult result;
    result.algorithm = "nr2";
    result.params = params;

    std::vector<std::uint8_t> ranked(n, 0);
    std::vector<std::uint8_t> candidate(n + 1, 1);
    candidate[d] = 0;

    auto record_sum = [&](const std::vector<double>& r) {
        if (trace != nullptr) {
            trace->prior_sums.push_back(std::accumulate(r.begin(), r.end(), 0.0));
        }
    };

    t0 = Clock::now();
    // first solve: the original prior, absorbing node at 0
    std::vector<double> extended = prior;
    extended.push_back(0.0);
    record_sum(extended);
    std::vector<double> p = f.solve(extended);
    int pick = argmax(p, candidate);
    ranked[pick] = 1;
    candidate[pick] = 0;
    result.entries.push_back({pick, p[pick]});

    for (int j = 2; j <= params.k; ++j) {
        const std::vector<double> reinforced =
            nr2_reinforced_prior(prior, ranked, params.alpha, params.beta);
        record_sum(reinforced);
        if (trace != nullptr) {
            double min_ranked = std::numeric_limits<double>::infinity();
            for (int i = 0; i < n; ++i) {
                if (ranked[i]) {
                    min_ranked = std::min(min_ranked, reinforced[i]);
                }
            }
            trace->min_ranked_prior.push_back(min_ranked);
        }
        p = f.solve(reinforced);
        pick = argmax(p, candidate);
        ranked[pick] = 1;
        candidate[pick] = 0;
        result.entries.push_back({pick, p[pick]});
    }
    if (trace != nullptr) {
        trace->solve_ms = elapsed_ms(t0);
    }
    return result;
}

RankingResult rank(const std::string& algorithm, const Graph& g, std::vector<double> prior,
                   const RankParams& params, Nr2Trace* trace) {
    const int n = g.size();
    std::vector<std::uint8_t> candidate = all_candidates(n);
    if (g.absorbing().has_value()) {
        candidate[*g.absorbing()] = 0;
    }

    if (algorithm == "nr2") {
        return nr2_rank(g, std::move(prior), params, trace);
    }

    const TransitionMatrix w = row_normalize(g);
    if (algorithm == "pagerank" || algorithm == "ppr") {
        std::vector<double> scores = algorithm == "pagerank"
                                         ? pagerank(w, params.lambda)
                                         : personalized_pagerank(w, std::move(prior), params.lambda);
        RankingResult result;
        result.algorithm = algorithm;
        result.params = params;
        for (int i : top_k_by_score(scores, params.k, candidate)) {
            result.entries.push_back({i, scores[i]});
        }
        return result;
    }
    if (algorithm == "mmr") {
        RankingResult result = mmr_rank(pagerank(w, params.lambda), g, params.lambda_mmr, params.k);
        result.params = params;
        return result;
    }
    if (algorithm == "grasshopper") {
        RankingResult result =
            grasshopper_rank(w, std::move(prior), params.lambda, params.k, &candidate);
        result.params = params;
        return result;
    }
    if (algorithm == "divrank") {
        RankingResult result = divrank_rank(w, std::move(prior), params.lambda,
                                            params.divrank_iters, params.k, &candidate);
        result.params = params;
        return result;
    }
    throw ParameterError("unknown algorithm: " + algorithm);
}

} // namespace nr2
