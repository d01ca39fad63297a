// Minimum-norm machinery: the energy of Q w = f under min ||w||^2, Lagrange
// multiplier recovery, X_Q norms, and two-sided X_Q* bounds.
//
// Everything is written against an abstract quadratic problem so the same
// solver serves the grid quantities and the finite-dimensional models.  The
// constrained solve is an augmented Lagrangian: outer multiplier updates
// lambda += rho (Qw - f) with rho doubling on slow progress, inner plain
// gradient descent with backtracking.  The inner gradient uses the duality
// identity grad_w <g, Qw> = 2 T_g w.  The solver only certifies local
// minimality; energies are upper bounds except on eigen-constructed
// instances where the multiplier chain certifies optimality.

#pragma once

#include "hqlab/operators.hpp"

namespace hqlab {

class QuadraticProblem {
public:
    virtual ~QuadraticProblem() = default;

    virtual int h_dim() const = 0;
    virtual int x_dim() const = 0;

    virtual VectorXd eval_q(const VectorXd& w) const = 0;
    virtual VectorXd apply_t(const VectorXd& b, const VectorXd& w) const = 0;

    // inner product on H and the X-X* pairing (both carry any volume weights)
    virtual double ip_h(const VectorXd& a, const VectorXd& b) const = 0;
    virtual double pair_x(const VectorXd& b, const VectorXd& f) const = 0;

    // sup_{|w|=1} <b, Qw> via the spectral machinery of the concrete model
    virtual NormEstimate xq_norm_of(const VectorXd& b, double tol, int max_iter) const = 0;

    virtual VectorXd random_h(std::uint64_t seed) const = 0;
    virtual VectorXd random_x(std::uint64_t seed) const = 0;

    // deterministic representative of the phase/sign orbit
    virtual VectorXd phase_fix(VectorXd w) const = 0;

    double h_norm(const VectorXd& w) const { return std::sqrt(std::max(0.0, ip_h(w, w))); }
    double x_norm2(const VectorXd& f) const { return std::sqrt(std::max(0.0, pair_x(f, f))); }
};

struct MinNormOptions {
    double tol = 1e-6;        // relative constraint residual target
    int max_outer = 60;
    int max_inner = 500;
    double rho0 = 1.0;
    int restarts = 3;         // additional random starts beyond the data-driven one
    std::uint64_t seed = 1;
    double inner_grad_tol = 1e-9;
};

struct VecMinNormResult {
    VectorXd solution;
    VectorXd multiplier;
    double energy = 0.0;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

namespace detail {

struct AlRun {
    VectorXd omega, lambda;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

inline double al_objective(const QuadraticProblem& p, const VectorXd& f, const VectorXd& lam,
                           double rho, const VectorXd& w, VectorXd* q_out) {
    VectorXd q = p.eval_q(w);
    VectorXd viol = q - f;
    const double val =
        p.ip_h(w, w) + p.pair_x(lam, viol) + 0.5 * rho * p.pair_x(viol, viol);
    if (q_out) *q_out = std::move(q);
    return val;
}

inline AlRun augmented_lagrangian(const QuadraticProblem& p, const VectorXd& f,
                                  VectorXd omega0, const MinNormOptions& opt) {
    AlRun run;
    run.omega = std::move(omega0);
    run.lambda = VectorXd::Zero(p.x_dim());
    double rho = opt.rho0;
    const double fnorm = p.x_norm2(f);

    VectorXd q = p.eval_q(run.omega);
    double prev_resid = std::numeric_limits<double>::infinity();
    for (int outer = 0; outer < opt.max_outer; ++outer) {
        // inner: gradient descent with backtracking; the trial step is seeded
        // by the Barzilai-Borwein quotient of the previous accepted move
        double val = al_objective(p, f, run.lambda, rho, run.omega, &q);
        VectorXd prev_omega, prev_grad;
        double step = 1.0;
        const double inner_tol =
            std::max(opt.inner_grad_tol, 1e-3 * opt.tol * std::max(1.0, fnorm));
        for (int inner = 0; inner < opt.max_inner; ++inner) {
            VectorXd g_field = run.lambda + rho * (q - f);
            VectorXd grad = 2.0 * run.omega + 2.0 * p.apply_t(g_field, run.omega);
            const double gn2 = grad.squaredNorm();
            ++run.iterations;
            if (std::sqrt(gn2) <= inner_tol * std::max(1.0, run.omega.norm())) break;

            if (prev_grad.size() > 0) {
                const VectorXd ds = run.omega - prev_omega;
                const VectorXd dy = grad - prev_grad;
                const double dyy = dy.squaredNorm();
                if (dyy > 1e-300) step = std::clamp(ds.dot(dy) / dyy, 1e-12, 1e4);
            }
            prev_omega = run.omega;
            prev_grad = grad;

            bool accepted = false;
            while (step > 1e-18) {
                VectorXd trial = run.omega - step * grad;
                VectorXd q_trial;
                const double val_trial =
                    al_objective(p, f, run.lambda, rho, trial, &q_trial);
                if (val_trial <= val - 1e-4 * step * gn2) {
                    run.omega = std::move(trial);
                    q = std::move(q_trial);
                    val = val_trial;
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if (!accepted) break;
        }

        const double resid =
            std::sqrt(std::max(0.0, p.pair_x(q - f, q - f))) / (fnorm > 0.0 ? fnorm : 1.0);
        run.residual = resid;
        if (resid <= opt.tol) {
            run.converged = true;
            break;
        }
        run.lambda += rho * (q - f);
        // a decrease factor above 1/2 counts as slow and doubles the penalty
        if (resid > 0.5 * prev_resid) rho = std::min(rho * 2.0, 1e9);
        prev_resid = resid;
    }
    // the stationarity field: 2w + 2 T_g w = 0 identifies b = -g as multiplier
    run.lambda += rho * (q - f);
    return run;
}

}  // namespace detail

inline VecMinNormResult min_norm_solve(const QuadraticProblem& p, const VectorXd& f,
                                       const MinNormOptions& opt = {}) {
    VecMinNormResult best;
    best.solution = VectorXd::Zero(p.h_dim());
    best.multiplier = VectorXd::Zero(p.x_dim());

    const double fnorm = p.x_norm2(f);
    if (fnorm == 0.0) {
        best.converged = true;
        return best;
    }

    // candidate starts: one driven by the top eigenvector of T_f, then random
    std::vector<VectorXd> starts;
    {
        VectorXd v = detail::random_unit_vector(p.h_dim(), opt.seed ^ 0xD1F7ull);
        for (int it = 0; it < 120; ++it) {
            VectorXd w = p.apply_t(f, v);
            const double n = w.norm();
            if (n <= 1e-300) break;
            v = w / n;
        }
        if (std::abs(p.ip_h(v, v)) > 0.0) starts.push_back(v);
    }
    for (int r = 0; r < opt.restarts; ++r)
        starts.push_back(p.random_h(opt.seed + 11 * r));

    bool have = false;
    for (std::size_t si = 0; si < starts.size(); ++si) {
        VectorXd w0 = starts[si];
        // scale so that ||Q w0|| matches ||f||
        const double qn = p.x_norm2(p.eval_q(w0));
        if (qn > 0.0) w0 *= std::sqrt(fnorm / qn);
        detail::AlRun run = detail::augmented_lagrangian(p, f, w0, opt);
        const double energy = p.ip_h(run.omega, run.omega);
        const bool better =
            !have ||
            (run.converged && !best.converged) ||
            (run.converged == best.converged && energy < best.energy);
        if (better) {
            best.solution = run.omega;
            best.multiplier = -run.lambda;  // stationarity reads T_{-lambda} w = w
            best.energy = energy;
            best.residual = run.residual;
            best.converged = run.converged;
            have = true;
        }
        best.iterations += run.iterations;
        if (best.converged && si >= 1) break;  // converged and one random start tried
    }
    best.solution = p.phase_fix(best.solution);
    best.energy = p.ip_h(best.solution, best.solution);
    return best;
}

// ---- grid adapter -----------------------------------------------------------

class GridQuantityProblem : public QuadraticProblem {
public:
    explicit GridQuantityProblem(QuantityDescriptor d) : desc_(std::move(d)) {
        if (desc_.kind == QuantityKind::wu_bivector)
            throw std::invalid_argument("GridQuantityProblem: wu_bivector is pairwise-only");
        probe_handle_ = OperatorHandle::for_quantity(desc_, Field(desc_.grid));
    }

    const QuantityDescriptor& descriptor() const { return desc_; }

    int h_dim() const override { return probe_handle_.realified_dim(); }
    int x_dim() const override { return static_cast<int>(desc_.grid.size()); }

    Field h_field(const VectorXd& w) const {
        return unrealify(probe_handle_, w).parts[0];
    }
    VectorXd h_vector(const Field& f) const {
        return realify(probe_handle_, OperatorState(f));
    }
    Field x_field(const VectorXd& v) const {
        Field f(desc_.grid);
        for (std::size_t i = 0; i < f.size(); ++i) f[i] = complex(v[static_cast<int>(i)], 0.0);
        return f;
    }
    VectorXd x_vector(const Field& f) const {
        VectorXd v(x_dim());
        for (std::size_t i = 0; i < f.size(); ++i) v[static_cast<int>(i)] = f[i].real();
        return v;
    }

    VectorXd eval_q(const VectorXd& w) const override {
        return x_vector(eval_quantity(desc_, h_field(w)));
    }
    VectorXd apply_t(const VectorXd& b, const VectorXd& w) const override {
        OperatorHandle h = OperatorHandle::for_quantity(desc_, x_field(b));
        return realify(h, apply_state(h, unrealify(h, w)));
    }
    double ip_h(const VectorXd& a, const VectorXd& b) const override {
        return a.dot(b) * desc_.grid.cell_volume();
    }
    double pair_x(const VectorXd& b, const VectorXd& f) const override {
        return b.dot(f) * desc_.grid.cell_volume();
    }

    NormEstimate xq_norm_of(const VectorXd& b, double tol, int max_iter) const override {
        OperatorHandle h = OperatorHandle::for_quantity(desc_, x_field(b));
        if (!probed_self_adjoint(h)) h = self_adjointify(h);
        return numerical_radius(h, tol, max_iter);
    }

    VectorXd random_h(std::uint64_t seed) const override {
        return h_vector(random_band_limited(seed, !desc_.complex_valued()));
    }
    VectorXd random_x(std::uint64_t seed) const override {
        return x_vector(random_band_limited(seed, true));
    }

    VectorXd phase_fix(VectorXd w) const override {
        Field f = h_field(w);
        spectrum_t s = spectrum(f);
        std::size_t arg = 0;
        double mx = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i)
            if (std::abs(s[i]) > mx * (1.0 + 1e-12)) {
                mx = std::abs(s[i]);
                arg = i;
            }
        if (mx == 0.0) return w;
        if (desc_.complex_valued()) {
            const complex rot = std::conj(s[arg]) / std::abs(s[arg]);
            f = rot * f;
        } else if (s[arg].real() < 0.0 ||
                   (std::abs(s[arg].real()) < 1e-14 * mx && s[arg].imag() < 0.0)) {
            f = -1.0 * f;
        }
        return h_vector(f);
    }

private:
    Field random_band_limited(std::uint64_t seed, bool real_valued) const {
        const GridSpec& g = desc_.grid;
        Rng rng(seed);
        const int kmax = g.n / 4;
        spectrum_t coeffs(g.size(), complex(0.0, 0.0));
        const double sigma = std::max(1.0, 0.5 * kmax);
        auto idx = [&](int k1, int k2) {
            return g.dim == 1 ? static_cast<std::size_t>(g.index_of_mode(k1))
                              : static_cast<std::size_t>(g.index_of_mode(k1)) * g.n +
                                    g.index_of_mode(k2);
        };
        auto fill = [&](int k1, int k2) {
            const complex c =
                rng.normal_complex() * std::exp(-(k1 * k1 + k2 * k2) / (2.0 * sigma * sigma));
            coeffs[idx(k1, k2)] = c;
            if (real_valued)
                coeffs[idx(-k1, -k2)] = std::conj(c);
            else
                coeffs[idx(-k1, -k2)] = rng.normal_complex() *
                                        std::exp(-(k1 * k1 + k2 * k2) / (2.0 * sigma * sigma));
        };
        if (g.dim == 1) {
            for (int k = 1; k <= kmax; ++k) fill(k, 0);
        } else {
            for (int k1 = -kmax; k1 <= kmax; ++k1)
                for (int k2 = -kmax; k2 <= kmax; ++k2) {
                    if (k1 < 0 || (k1 == 0 && k2 <= 0)) continue;
                    fill(k1, k2);
                }
        }
        return synthesize(g, std::move(coeffs));
    }

    bool probed_self_adjoint(const OperatorHandle& h) const {
        const RealLinearMap a = realified_map(h);
        for (std::uint64_t p = 0; p < 2; ++p) {
            VectorXd x = detail::random_unit_vector(h.realified_dim(), 0xBEE5 + p);
            VectorXd y = detail::random_unit_vector(h.realified_dim(), 0xFACE + p);
            const double lhs = y.dot(a(x)), rhs = x.dot(a(y));
            if (std::abs(lhs - rhs) > 1e-8 * std::max({1.0, std::abs(lhs), std::abs(rhs)}))
                return false;
        }
        return true;
    }

    QuantityDescriptor desc_;
    OperatorHandle probe_handle_;
};

// ---- field-level entry points ----------------------------------------------

struct MinNormResult {
    Field solution;
    double energy = 0.0;
    double residual = 0.0;
    Field multiplier;
    int iterations = 0;
    bool converged = false;
};

inline MinNormResult min_norm_solve(const QuantityDescriptor& d, const Field& f,
                                    const MinNormOptions& opt = {}) {
    if (f.grid != d.grid) throw std::invalid_argument("min_norm_solve: grid mismatch");
    require_finite(f, "min_norm_solve");
    for (const complex& v : f.values)
        if (std::abs(v.imag()) > 1e-10 * (1.0 + std::abs(v)))
            throw std::invalid_argument("min_norm_solve: data must be real-valued");
    require_mean_zero(f, 1e-6, "min_norm_solve");

    GridQuantityProblem prob(d);
    VecMinNormResult r = min_norm_solve(prob, prob.x_vector(f), opt);
    MinNormResult out;
    out.solution = prob.h_field(r.solution);
    out.multiplier = prob.x_field(r.multiplier);
    out.energy = r.energy;
    out.residual = r.residual;
    out.iterations = r.iterations;
    out.converged = r.converged;
    return out;
}

// || T_b w - w || / || w ||, zero exactly when w lies in ker(I - T_b)
inline double lagrange_residual(const QuantityDescriptor& d, const Field& b, const Field& w) {
    const double wn = l2_norm(w);
    if (wn == 0.0) throw std::invalid_argument("lagrange_residual: w = 0 leaves the ratio undefined");
    OperatorHandle h = OperatorHandle::for_quantity(d, b);
    return l2_norm(apply_tb(h, w) - w) / wn;
}

inline NormEstimate xq_norm(const QuantityDescriptor& d, const Field& b, double tol = 1e-8,
                            int max_iter = 5000) {
    GridQuantityProblem prob(d);
    return prob.xq_norm_of(prob.x_vector(b), tol, max_iter);
}

struct XqStarBudget {
    int n_samples = 8;          // random dual candidates for the lower bound
    double tol = 1e-3;          // decomposition residual target (relative)
    int max_terms = 50;
    std::uint64_t seed = 17;
    MinNormOptions solver;      // used for the greedy decomposition steps
};

struct XqStarBounds {
    double lower = 0.0;
    double upper = 0.0;
    bool upper_finite = true;
    int terms = 0;
};

inline XqStarBounds xqstar_bounds(const QuadraticProblem& p, const VectorXd& f,
                                  const XqStarBudget& budget = {}) {
    XqStarBounds out;
    const double fnorm = p.x_norm2(f);
    if (fnorm == 0.0) return out;

    // upper bound: greedy decomposition f = sum Q w_j
    VectorXd resid = f;
    std::vector<VectorXd> multipliers;
    double upper = 0.0;
    int stagnant = 0;
    out.upper_finite = false;
    for (int term = 0; term < budget.max_terms; ++term) {
        MinNormOptions sopt = budget.solver;
        sopt.seed = budget.seed + 1000 * term;
        VecMinNormResult r = min_norm_solve(p, resid, sopt);
        upper += r.energy;
        multipliers.push_back(r.multiplier);
        VectorXd next = resid - p.eval_q(r.solution);
        const double before = p.x_norm2(resid), after = p.x_norm2(next);
        resid = std::move(next);
        out.terms = term + 1;
        if (after <= budget.tol * fnorm) {
            out.upper_finite = true;
            break;
        }
        stagnant = after > 0.95 * before ? stagnant + 1 : 0;
        if (stagnant >= 2) break;
    }
    out.upper = out.upper_finite ? upper : std::numeric_limits<double>::infinity();

    // lower bound: best normalized dual candidate
    std::vector<VectorXd> candidates;
    candidates.push_back(f);
    for (const VectorXd& m : multipliers) candidates.push_back(m);
    for (int s = 0; s < budget.n_samples; ++s)
        candidates.push_back(p.random_x(budget.seed + 77 * s));
    for (const VectorXd& b : candidates) {
        if (b.norm() == 0.0) continue;
        NormEstimate xq = p.xq_norm_of(b, 1e-9, 20000);
        if (!(xq.value > 1e-12)) continue;
        out.lower = std::max(out.lower, p.pair_x(b, f) / xq.value);
    }
    return out;
}

inline XqStarBounds xqstar_bounds(const QuantityDescriptor& d, const Field& f,
                                  const XqStarBudget& budget = {}) {
    GridQuantityProblem prob(d);
    return xqstar_bounds(prob, prob.x_vector(f), budget);
}

}  // namespace hqlab
