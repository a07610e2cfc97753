#include "nr2/solver.hpp"

#include <cmath>
#include <string>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "nr2/errors.hpp"

namespace nr2 {
namespace {

void check_lambda(double lambda) {
    if (!(lambda >= 0.0 && lambda < 1.0)) {
        throw ParameterError("damping factor must satisfy 0 <= lambda < 1, got " +
                             std::to_string(lambda));
    }
}

void check_prior(const std::vector<double>& prior, int n, bool require_nonnegative) {
    if (static_cast<int>(prior.size()) != n) {
        throw ValidationError("prior length " + std::to_string(prior.size()) +
                              " does not match dimension " + std::to_string(n));
    }
    double sum = 0.0;
    for (double v : prior) {
        if (!std::isfinite(v)) {
            throw ValidationError("prior has a non-finite entry");
        }
        if (require_nonnegative && v < 0.0) {
            throw ValidationError("prior has a negative entry");
        }
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw ValidationError("prior must sum to 1, got " + std::to_string(sum));
    }
}

} // namespace

struct Factorization::Impl {
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
};

Factorization::Factorization(const TransitionMatrix& w, double lambda)
    : impl_(std::make_unique<Impl>()), n_(w.size()), lambda_(lambda) {
    check_lambda(lambda);

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(w.cols().size() + n_);
    const auto& offsets = w.row_offsets();
    const auto& cols = w.cols();
    const auto& vals = w.values();
    for (int u = 0; u < n_; ++u) {
        for (int p = offsets[u]; p < offsets[u + 1]; ++p) {
            // entry (v, u) of -lambda * W^T
            triplets.emplace_back(cols[p], u, -lambda * vals[p]);
        }
    }
    for (int i = 0; i < n_; ++i) {
        triplets.emplace_back(i, i, 1.0);
    }
    Eigen::SparseMatrix<double> a(n_, n_);
    a.setFromTriplets(triplets.begin(), triplets.end());
    a.makeCompressed();

    impl_->lu.compute(a);
    if (impl_->lu.info() != Eigen::Success) {
        throw SolverError("factorization of (I - lambda*W') failed");
    }
}

Factorization::~Factorization() = default;
Factorization::Factorization(Factorization&&) noexcept = default;
Factorization& Factorization::operator=(Factorization&&) noexcept = default;

std::vector<double> Factorization::solve(const std::vector<double>& prior) const {
    check_prior(prior, n_, /*require_nonnegative=*/false);
    Eigen::VectorXd rhs(n_);
    for (int i = 0; i < n_; ++i) {
        rhs[i] = (1.0 - lambda_) * prior[i];
    }
    Eigen::VectorXd p = impl_->lu.solve(rhs);
    if (impl_->lu.info() != Eigen::Success || !p.allFinite()) {
        throw SolverError("linear solve failed");
    }
    return {p.data(), p.data() + n_};
}

Factorization factorize(const TransitionMatrix& w, double lambda) {
    return Factorization(w, lambda);
}

PowerIterationResult power_iteration(const TransitionMatrix& w, const std::vector<double>& prior,
                                     double lambda, double tol, int max_iter) {
    check_lambda(lambda);
    check_prior(prior, w.size(), /*require_nonnegative=*/true);
    if (tol < 0.0 || max_iter < 1) {
        throw ParameterError("power iteration needs tol >= 0 and max_iter >= 1");
    }

    const int n = w.size();
    PowerIterationResult result;
    result.scores = prior;
    std::vector<double> pushed(n);
    std::vector<double> next(n);
    for (int it = 1; it <= max_iter; ++it) {
        w.apply_transpose(result.scores, pushed);
        double diff = 0.0;
        for (int i = 0; i < n; ++i) {
            next[i] = (1.0 - lambda) * prior[i] + lambda * pushed[i];
            diff += std::abs(next[i] - result.scores[i]);
        }
        result.scores.swap(next);
        result.iterations = it;
        if (diff <= tol) {
            result.converged = true;
            break;
        }
    }
    return result;
}

} // namespace nr2
