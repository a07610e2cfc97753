#pragma once

#include <memory>
#include <vector>

#include "nr2/graph.hpp"

namespace nr2 {

/**
 * Reusable triangular factorization of (I - lambda * W^T) for a
 * row-stochastic W. The factorization is computed once; any number of
 * right-hand sides can then be solved against it, including concurrently.
 *
 * The matrix is strictly diagonally dominant by columns for lambda < 1, so
 * the factorization cannot break down; partial pivoting guards against
 * float accumulation anyway.
 */
class Factorization {
public:
    Factorization(const TransitionMatrix& w, double lambda);
    ~Factorization();

    Factorization(Factorization&&) noexcept;
    Factorization& operator=(Factorization&&) noexcept;
    Factorization(const Factorization&) = delete;
    Factorization& operator=(const Factorization&) = delete;

    int size() const { return n_; }
    double lambda() const { return lambda_; }

    /**
     * Solves (I - lambda * W^T) p = (1 - lambda) * r.
     *
     * r must sum to 1 within 1e-9; signed entries are allowed. For a
     * nonnegative r the result is a probability vector.
     */
    std::vector<double> solve(const std::vector<double>& prior) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    int n_ = 0;
    double lambda_ = 0.0;
};

/// Factors (I - lambda * W^T). Requires 0 <= lambda < 1.
Factorization factorize(const TransitionMatrix& w, double lambda);

struct PowerIterationResult {
    std::vector<double> scores;
    int iterations = 0;
    bool converged = false;
};

/**
 * Iterates p <- (1 - lambda) * r + lambda * W^T p from p0 = r until the L1
 * change drops to tol or max_iter is reached. Non-convergence is reported in
 * the result, which still carries the last iterate.
 */
PowerIterationResult power_iteration(const TransitionMatrix& w, const std::vector<double>& prior,
                                     double lambda, double tol = 1e-10, int max_iter = 10000);

} // namespace nr2
