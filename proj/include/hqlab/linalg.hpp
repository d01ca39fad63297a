// Matrix-free spectral estimators shared by the grid operators and the
// finite-dimensional models: power iteration for the operator norm, shifted
// power iteration for the top signed eigenvalue of a symmetric map, and
// dense assembly + eigensolve for exact work at small dimension.
//
// Defaults: tol 1e-8, max_iter 5000, fixed seed 0x5EED.

#pragma once

#include <Eigen/Dense>

#include "hqlab/rng.hpp"

namespace hqlab {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct NormEstimate {
    double value = 0.0;
    bool converged = true;
    int iterations = 0;
};

struct PowerIterOptions {
    double tol = 1e-8;
    int max_iter = 5000;
    std::uint64_t seed = 0x5EED;
};

using RealLinearMap = std::function<VectorXd(const VectorXd&)>;

namespace detail {

inline VectorXd random_unit_vector(int dim, std::uint64_t seed) {
    Rng rng(seed);
    VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v[i] = rng.normal();
    const double n = v.norm();
    return n > 0.0 ? VectorXd(v / n) : VectorXd::Unit(dim, 0);
}

inline MatrixXd random_orthonormal_block(int dim, int block, std::uint64_t seed) {
    Rng rng(seed);
    MatrixXd x(dim, block);
    for (int j = 0; j < block; ++j)
        for (int i = 0; i < dim; ++i) x(i, j) = rng.normal();
    Eigen::HouseholderQR<MatrixXd> qr(x);
    return qr.householderQ() * MatrixXd::Identity(dim, block);
}

inline MatrixXd thin_q(const MatrixXd& y) {
    Eigen::HouseholderQR<MatrixXd> qr(y);
    return qr.householderQ() * MatrixXd::Identity(y.rows(), y.cols());
}

}  // namespace detail

// Largest singular value of A via block power (subspace) iteration on A^T A.
// A small block absorbs degenerate or clustered top eigenvalues, which
// single-vector iteration cannot resolve; stopping is residual-based, so the
// returned value is within ~tol of the true norm (Weyl bound for the top
// Ritz pair) rather than merely stationary.
inline NormEstimate operator_norm_power(const RealLinearMap& apply,
                                        const RealLinearMap& apply_transpose, int dim,
                                        const PowerIterOptions& opt = {}) {
    if (!(opt.tol > 0.0)) throw std::invalid_argument("operator_norm_power: tol must be > 0");
    const int block = std::min(dim, 8);
    MatrixXd x = detail::random_orthonormal_block(dim, block, opt.seed);
    NormEstimate est;
    double sigma = 0.0;
    for (int it = 1; it <= opt.max_iter; ++it) {
        MatrixXd y(dim, block);
        for (int j = 0; j < block; ++j) y.col(j) = apply_transpose(apply(x.col(j)));
        est.iterations = it;
        if (y.norm() <= 1e-300) {
            est.value = 0.0;
            return est;
        }
        MatrixXd h = x.transpose() * y;
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (h + h.transpose()));
        const double theta = es.eigenvalues()(block - 1);
        const VectorXd u = es.eigenvectors().col(block - 1);
        const VectorXd ritz = x * u;
        const double resid = (y * u - theta * ritz).norm();
        sigma = std::sqrt(std::max(theta, 0.0));
        if (resid <= 2.0 * opt.tol * std::max(1.0, sigma) * std::max(sigma, 1e-12)) {
            est.value = sigma;
            return est;
        }
        x = detail::thin_q(y);
    }
    est.value = sigma;
    est.converged = false;
    return est;
}

// top signed eigenvalue of a symmetric map via shifted block power iteration
inline NormEstimate top_eigenvalue_power(const RealLinearMap& sym_apply, int dim,
                                         const PowerIterOptions& opt = {}) {
    if (!(opt.tol > 0.0)) throw std::invalid_argument("top_eigenvalue_power: tol must be > 0");
    NormEstimate est;
    const int block = std::min(dim, 8);

    // stage 1: rough dominant magnitude, used only to pick the shift
    VectorXd v = detail::random_unit_vector(dim, opt.seed);
    double mu = 0.0;
    const int warmup = std::min(opt.max_iter, 200);
    for (int it = 1; it <= warmup; ++it) {
        VectorXd w = sym_apply(v);
        const double lam = v.dot(w);
        const double wn = w.norm();
        est.iterations = it;
        if (wn <= 1e-300) {
            est.value = 0.0;
            return est;
        }
        v = w / wn;
        if (it > 1 && std::abs(std::abs(lam) - mu) <= 1e-3 * std::max(1.0, std::abs(lam))) {
            mu = std::abs(lam);
            break;
        }
        mu = std::abs(lam);
    }

    // stage 2: shifted subspace iteration; the top Ritz residual bounds the
    // eigenvalue error
    const double shift = mu + std::max(1.0, mu);
    MatrixXd x = detail::random_orthonormal_block(dim, block,
                                                  opt.seed ^ 0x9E3779B97F4A7C15ull);
    double lam = 0.0;
    for (int it = 1; it <= opt.max_iter; ++it) {
        MatrixXd sy(dim, block);
        for (int j = 0; j < block; ++j) sy.col(j) = sym_apply(x.col(j));
        est.iterations += 1;
        MatrixXd h = x.transpose() * sy;
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (h + h.transpose()));
        const double theta = es.eigenvalues()(block - 1);
        const VectorXd u = es.eigenvectors().col(block - 1);
        const VectorXd ritz = x * u;
        const double resid = (sy * u - theta * ritz).norm();
        lam = theta;
        if (resid <= opt.tol * std::max(1.0, std::abs(lam))) {
            est.value = lam;
            return est;
        }
        MatrixXd y = sy + shift * x;
        if (y.norm() <= 1e-300) {
            est.value = -shift;
            return est;
        }
        x = detail::thin_q(y);
    }
    est.value = lam;
    est.converged = false;
    return est;
}

inline MatrixXd assemble_dense(const RealLinearMap& apply, int dim) {
    MatrixXd m(dim, dim);
    for (int j = 0; j < dim; ++j) m.col(j) = apply(VectorXd::Unit(dim, j));
    return m;
}

}  // namespace hqlab
