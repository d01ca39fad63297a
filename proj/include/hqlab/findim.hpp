// Finite-dimensional surrogate: T_b = sum_k b_k A_k with symmetric A_k on
// H = R^n, X = R^m, where the duality-mapping geometry is exactly
// computable.  Chiral models use the block form A_k = [[0, C_k],[C_k^T, 0]],
// whose spectra are symmetric about zero, so lambda_max(T_b) = ||T_b|| holds
// for every b; generic symmetric families are allowed but labeled, since for
// them the numerical radius can fall below the norm.

#pragma once

#include <json.hpp>

#include "hqlab/variational.hpp"

namespace hqlab {

struct FinDimModel {
    int n = 0;  // dim H
    int m = 0;  // dim X
    std::vector<MatrixXd> matrices;
    bool chiral = false;
    std::string label;

    void validate() const {
        if (static_cast<int>(matrices.size()) != m)
            throw std::invalid_argument("FinDimModel: matrix count != m");
        for (const MatrixXd& a : matrices) {
            if (a.rows() != n || a.cols() != n)
                throw std::invalid_argument("FinDimModel: matrix size != n");
            if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12)
                throw std::invalid_argument("FinDimModel: matrices must be symmetric");
            if (chiral) {
                const int h = n / 2;
                if (n % 2 != 0 || a.topLeftCorner(h, h).cwiseAbs().maxCoeff() > 1e-12 ||
                    a.bottomRightCorner(h, h).cwiseAbs().maxCoeff() > 1e-12)
                    throw std::invalid_argument("FinDimModel: chiral blocks must be off-diagonal");
            }
        }
    }

    static FinDimModel build(int n, int m, std::uint64_t seed, bool chiral) {
        if (n < 1 || m < 1) throw std::invalid_argument("FinDimModel::build: bad dims");
        if (chiral && n % 2 != 0)
            throw std::invalid_argument("FinDimModel::build: chiral needs even n");
        FinDimModel model;
        model.n = n;
        model.m = m;
        model.chiral = chiral;
        model.label = chiral ? "chiral" : "generic:assumption-2ii-unchecked";
        Rng rng(seed);
        for (int k = 0; k < m; ++k) {
            MatrixXd a = MatrixXd::Zero(n, n);
            if (chiral) {
                const int h = n / 2;
                MatrixXd c(h, h);
                for (int i = 0; i < h; ++i)
                    for (int j = 0; j < h; ++j) c(i, j) = rng.uniform(-1.0, 1.0);
                a.topRightCorner(h, h) = c;
                a.bottomLeftCorner(h, h) = c.transpose();
            } else {
                MatrixXd g(n, n);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) g(i, j) = rng.uniform(-1.0, 1.0);
                a = 0.5 * (g + g.transpose());
            }
            model.matrices.push_back(std::move(a));
        }
        model.validate();
        return model;
    }

    // T_b = b diag(1,-1): Q w = w_1^2 - w_2^2
    static FinDimModel simple_operator() {
        FinDimModel model;
        model.n = 2;
        model.m = 1;
        model.chiral = false;
        model.label = "simple_operator";
        MatrixXd a(2, 2);
        a << 1.0, 0.0, 0.0, -1.0;
        model.matrices.push_back(a);
        return model;
    }

    // H x H doubling; for a symmetric base this is the chiral model C_k = A_k
    static FinDimModel doubled(const FinDimModel& base) {
        FinDimModel model;
        model.n = 2 * base.n;
        model.m = base.m;
        model.chiral = true;
        model.label = "doubled:" + base.label;
        for (const MatrixXd& a : base.matrices) {
            MatrixXd d = MatrixXd::Zero(model.n, model.n);
            d.topRightCorner(base.n, base.n) = a;
            d.bottomLeftCorner(base.n, base.n) = a.transpose();
            model.matrices.push_back(std::move(d));
        }
        model.validate();
        return model;
    }

    MatrixXd t_matrix(const VectorXd& b) const {
        MatrixXd t = MatrixXd::Zero(n, n);
        for (int k = 0; k < m; ++k) t += b[k] * matrices[k];
        return t;
    }

    VectorXd q_of(const VectorXd& w) const {
        VectorXd q(m);
        for (int k = 0; k < m; ++k) q[k] = w.dot(matrices[k] * w);
        return q;
    }

    VectorXd q_gateaux(const VectorXd& w, const VectorXd& g) const {
        VectorXd q(m);
        for (int k = 0; k < m; ++k) q[k] = 2.0 * w.dot(matrices[k] * g);
        return q;
    }

    double lambda_max(const VectorXd& b) const {
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(t_matrix(b));
        return es.eigenvalues().maxCoeff();
    }
    double lambda_min(const VectorXd& b) const {
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(t_matrix(b));
        return es.eigenvalues().minCoeff();
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["n"] = n;
        j["m"] = m;
        j["chiral"] = chiral;
        j["label"] = label;
        auto& mats = j["matrices"] = nlohmann::json::array();
        for (const MatrixXd& a : matrices) {
            nlohmann::json rows = nlohmann::json::array();
            for (int i = 0; i < n; ++i) {
                nlohmann::json row = nlohmann::json::array();
                for (int c = 0; c < n; ++c) row.push_back(a(i, c));
                rows.push_back(std::move(row));
            }
            mats.push_back(std::move(rows));
        }
        return j;
    }

    static FinDimModel from_json(const nlohmann::json& j) {
        FinDimModel model;
        model.n = j.at("n").get<int>();
        model.m = j.at("m").get<int>();
        model.chiral = j.at("chiral").get<bool>();
        model.label = j.value("label", "");
        for (const auto& rows : j.at("matrices")) {
            MatrixXd a(model.n, model.n);
            for (int i = 0; i < model.n; ++i)
                for (int c = 0; c < model.n; ++c) a(i, c) = rows.at(i).at(c).get<double>();
            model.matrices.push_back(std::move(a));
        }
        model.validate();
        return model;
    }
};

// ---- variational adapter ------------------------------------------------

class FinDimProblem : public QuadraticProblem {
public:
    explicit FinDimProblem(FinDimModel model) : model_(std::move(model)) {}
    const FinDimModel& model() const { return model_; }

    int h_dim() const override { return model_.n; }
    int x_dim() const override { return model_.m; }
    VectorXd eval_q(const VectorXd& w) const override { return model_.q_of(w); }
    VectorXd apply_t(const VectorXd& b, const VectorXd& w) const override {
        return model_.t_matrix(b) * w;
    }
    double ip_h(const VectorXd& a, const VectorXd& b) const override { return a.dot(b); }
    double pair_x(const VectorXd& b, const VectorXd& f) const override { return b.dot(f); }

    NormEstimate xq_norm_of(const VectorXd& b, double, int) const override {
        NormEstimate est;
        est.value = model_.lambda_max(b);
        est.converged = true;
        est.iterations = 0;
        return est;
    }

    VectorXd random_h(std::uint64_t seed) const override {
        return detail::random_unit_vector(model_.n, seed);
    }
    VectorXd random_x(std::uint64_t seed) const override {
        return detail::random_unit_vector(model_.m, seed ^ 0xF00Dull);
    }

    VectorXd phase_fix(VectorXd w) const override {
        int arg = 0;
        w.cwiseAbs().maxCoeff(&arg);
        if (w[arg] < 0.0) w = -w;
        return w;
    }

private:
    FinDimModel model_;
};

// K independent copies sharing the multiplier: Q(w_1..w_K) = sum_j Q(w_j)
class ProductProblem : public QuadraticProblem {
public:
    ProductProblem(const QuadraticProblem& base, int copies)
        : base_(base), copies_(copies) {}

    int h_dim() const override { return copies_ * base_.h_dim(); }
    int x_dim() const override { return base_.x_dim(); }

    VectorXd eval_q(const VectorXd& w) const override {
        VectorXd q = VectorXd::Zero(x_dim());
        for (int j = 0; j < copies_; ++j) q += base_.eval_q(block(w, j));
        return q;
    }
    VectorXd apply_t(const VectorXd& b, const VectorXd& w) const override {
        VectorXd out(h_dim());
        for (int j = 0; j < copies_; ++j)
            out.segment(j * base_.h_dim(), base_.h_dim()) = base_.apply_t(b, block(w, j));
        return out;
    }
    double ip_h(const VectorXd& a, const VectorXd& b) const override {
        double s = 0.0;
        for (int j = 0; j < copies_; ++j) s += base_.ip_h(block(a, j), block(b, j));
        return s;
    }
    double pair_x(const VectorXd& b, const VectorXd& f) const override {
        return base_.pair_x(b, f);
    }
    NormEstimate xq_norm_of(const VectorXd& b, double tol, int max_iter) const override {
        return base_.xq_norm_of(b, tol, max_iter);  // block-diagonal, same spectrum
    }
    VectorXd random_h(std::uint64_t seed) const override {
        VectorXd out(h_dim());
        for (int j = 0; j < copies_; ++j)
            out.segment(j * base_.h_dim(), base_.h_dim()) = base_.random_h(seed + 131 * j);
        return out;
    }
    VectorXd random_x(std::uint64_t seed) const override { return base_.random_x(seed); }
    VectorXd phase_fix(VectorXd w) const override {
        for (int j = 0; j < copies_; ++j)
            w.segment(j * base_.h_dim(), base_.h_dim()) =
                base_.phase_fix(block(w, j));
        return w;
    }

private:
    VectorXd block(const VectorXd& w, int j) const {
        return w.segment(j * base_.h_dim(), base_.h_dim());
    }
    const QuadraticProblem& base_;
    int copies_;
};

// ---- duality face -----------------------------------------------------------

struct DualityFace {
    VectorXd b;
    MatrixXd fixed_basis;             // n x d, orthonormal
    std::vector<VectorXd> samples;    // Q images of unit vectors in the fixed space
    std::vector<int> hull_vertices;   // indices into samples
    int affine_dim = 0;
};

namespace detail {

// deterministic low-discrepancy points on the unit sphere of R^d: an additive
// Kronecker sequence mapped through Box-Muller
inline std::vector<VectorXd> sphere_samples(int d, int count) {
    std::vector<VectorXd> pts;
    if (d == 1) {
        pts.push_back(VectorXd::Constant(1, 1.0));
        pts.push_back(VectorXd::Constant(1, -1.0));
        return pts;
    }
    // alphas from the generalized golden ratio
    double phi = 2.0;
    for (int i = 0; i < 40; ++i) phi = std::pow(1.0 + phi, 1.0 / (d + 1));
    std::vector<double> alpha(2 * d);
    double a = 1.0 / phi;
    for (double& v : alpha) {
        v = a;
        a /= phi;
        a = a < 1e-6 ? 0.5 + a : a;
    }
    std::vector<double> u(2 * d, 0.5);
    for (int s = 0; s < count; ++s) {
        VectorXd x(d);
        for (int i = 0; i < d; ++i) {
            u[2 * i] = std::fmod(u[2 * i] + alpha[2 * i], 1.0);
            u[2 * i + 1] = std::fmod(u[2 * i + 1] + alpha[2 * i + 1], 1.0);
            const double r = std::sqrt(-2.0 * std::log(std::max(1e-300, u[2 * i])));
            x[i] = r * std::cos(2.0 * pi * u[2 * i + 1]);
        }
        const double nrm = x.norm();
        if (nrm > 1e-12) pts.push_back(x / nrm);
    }
    return pts;
}

}  // namespace detail

inline DualityFace duality_face(const FinDimModel& model, const VectorXd& b, int n_samples) {
    const double lmax = model.lambda_max(b);
    if (std::abs(lmax - 1.0) > 1e-9)
        throw std::invalid_argument("duality_face: b must be normalized to lambda_max = 1");

    Eigen::SelfAdjointEigenSolver<MatrixXd> es(model.t_matrix(b));
    std::vector<int> fixed;
    for (int i = 0; i < model.n; ++i)
        if (std::abs(es.eigenvalues()[i] - 1.0) <= 1e-8) fixed.push_back(i);
    const int d = static_cast<int>(fixed.size());

    DualityFace face;
    face.b = b;
    face.fixed_basis.resize(model.n, d);
    for (int i = 0; i < d; ++i) face.fixed_basis.col(i) = es.eigenvectors().col(fixed[i]);

    for (const VectorXd& a : detail::sphere_samples(d, n_samples))
        face.samples.push_back(model.q_of(face.fixed_basis * a));

    // affine dimension: rank of the centered sample matrix
    if (!face.samples.empty()) {
        VectorXd centroid = VectorXd::Zero(model.m);
        for (const VectorXd& s : face.samples) centroid += s;
        centroid /= static_cast<double>(face.samples.size());
        MatrixXd centered(model.m, face.samples.size());
        for (std::size_t i = 0; i < face.samples.size(); ++i)
            centered.col(static_cast<int>(i)) = face.samples[i] - centroid;
        Eigen::JacobiSVD<MatrixXd> svd(centered);
        const auto& sv = svd.singularValues();
        for (int i = 0; i < sv.size(); ++i)
            if (sv[i] > 1e-8 * std::max(1.0, sv[0])) ++face.affine_dim;

        // iterative support-function filtering for hull vertices
        for (std::size_t i = 0; i < face.samples.size(); ++i) {
            const VectorXd dir = face.samples[i] - centroid;
            if (dir.norm() < 1e-12) continue;
            double best = -std::numeric_limits<double>::infinity();
            for (const VectorXd& s : face.samples) best = std::max(best, dir.dot(s));
            if (dir.dot(face.samples[i]) >= best - 1e-10 * std::max(1.0, std::abs(best)))
                face.hull_vertices.push_back(static_cast<int>(i));
        }
    }
    return face;
}

// ---- dual norm program --------------------------------------------------

// sup { <b, f> : lambda_max(T_b) <= 1 }.  By positive homogeneity the
// supremum is max over unit directions u of <u,f> / lambda_max(T_u), a
// smooth low-dimensional problem for m <= 3: coarse scan plus golden-section
// refinement.  (A supergradient ascent whose projection merely rescales by
// lambda_max drifts to the feasible point on the ray of f and underestimates
// the supremum, so it is not used.)
struct DualNormResult {
    double value = 0.0;
    VectorXd maximizer;  // feasible b attaining the value (lambda_max = 1)
    int evaluations = 0;
};

inline DualNormResult xqstar_dual_norm(const FinDimModel& model, const VectorXd& f,
                                       int scan = 720) {
    if (model.m > 3)
        throw std::invalid_argument("xqstar_dual_norm: direction scan needs m <= 3");
    DualNormResult est;
    est.maximizer = VectorXd::Zero(model.m);
    if (f.norm() == 0.0) return est;

    auto value_of = [&](const VectorXd& u) {
        const double l = model.lambda_max(u);
        ++est.evaluations;
        if (!(l > 1e-12)) return -std::numeric_limits<double>::infinity();
        return u.dot(f) / l;
    };
    auto consider = [&](const VectorXd& u) {
        const double v = value_of(u);
        if (v > est.value) {
            est.value = v;
            est.maximizer = u / model.lambda_max(u);
        }
    };

    if (model.m == 1) {
        VectorXd u(1);
        for (double s : {1.0, -1.0}) {
            u << s;
            consider(u);
        }
        return est;
    }

    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    if (model.m == 2) {
        auto dir = [](double th) {
            VectorXd u(2);
            u << std::cos(th), std::sin(th);
            return u;
        };
        double best_th = 0.0, best = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < scan; ++i) {
            const double th = 2.0 * pi * i / scan;
            const double v = value_of(dir(th));
            if (v > best) {
                best = v;
                best_th = th;
            }
        }
        double lo = best_th - 2.0 * pi / scan, hi = best_th + 2.0 * pi / scan;
        double c = hi - gr * (hi - lo), dd = lo + gr * (hi - lo);
        double fc = value_of(dir(c)), fd = value_of(dir(dd));
        for (int it = 0; it < 90; ++it) {
            if (fc > fd) {
                hi = dd;
                dd = c;
                fd = fc;
                c = hi - gr * (hi - lo);
                fc = value_of(dir(c));
            } else {
                lo = c;
                c = dd;
                fc = fd;
                dd = lo + gr * (hi - lo);
                fd = value_of(dir(dd));
            }
        }
        consider(dir(best_th));
        consider(dir(c));
        consider(dir(dd));
        return est;
    }

    // m == 3: spherical Fibonacci scan, then coordinate-wise golden refinement
    auto dir3 = [](double th, double ph) {
        VectorXd u(3);
        u << std::sin(ph) * std::cos(th), std::sin(ph) * std::sin(th), std::cos(ph);
        return u;
    };
    double best = -std::numeric_limits<double>::infinity(), bth = 0.0, bph = 0.0;
    const int count = std::max(scan, 2000);
    const double golden_angle = pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
        const double z = 1.0 - 2.0 * (i + 0.5) / count;
        const double ph = std::acos(std::clamp(z, -1.0, 1.0));
        const double th = golden_angle * i;
        const double v = value_of(dir3(th, ph));
        if (v > best) {
            best = v;
            bth = th;
            bph = ph;
        }
    }
    double span = 2.0 * pi / std::sqrt(static_cast<double>(count));
    for (int round = 0; round < 40; ++round) {
        for (int axis = 0; axis < 2; ++axis) {
            double lo = (axis == 0 ? bth : bph) - span;
            double hi = (axis == 0 ? bth : bph) + span;
            double c = hi - gr * (hi - lo), dd = lo + gr * (hi - lo);
            auto eval = [&](double x) {
                return axis == 0 ? value_of(dir3(x, bph)) : value_of(dir3(bth, x));
            };
            double fc = eval(c), fd = eval(dd);
            for (int it = 0; it < 40; ++it) {
                if (fc > fd) {
                    hi = dd;
                    dd = c;
                    fd = fc;
                    c = hi - gr * (hi - lo);
                    fc = eval(c);
                } else {
                    lo = c;
                    c = dd;
                    fc = fd;
                    dd = lo + gr * (hi - lo);
                    fd = eval(dd);
                }
            }
            const double x = fc > fd ? c : dd;
            const double v = std::max(fc, fd);
            if (v > best) {
                best = v;
                (axis == 0 ? bth : bph) = x;
            }
        }
        span *= 0.5;
    }
    consider(dir3(bth, bph));
    return est;
}

// ---- extreme points -------------------------------------------------------

struct ExtremePointReport {
    bool is_extreme = false;
    double dual_norm = 0.0;
    bool witnessed_midpoint = false;
    double energy = 0.0;       // from solving Q w = f when extreme
    bool in_q_of_a = false;    // energy within tolerance of 1
};

inline ExtremePointReport extreme_point_check(const FinDimModel& model, const VectorXd& f,
                                              double tolerance) {
    ExtremePointReport rep;
    DualNormResult dual = xqstar_dual_norm(model, f);
    rep.dual_norm = dual.value;
    if (std::abs(rep.dual_norm - 1.0) > tolerance)
        throw std::invalid_argument("extreme_point_check: f must lie on the dual unit sphere");

    // Perturbation search for a midpoint representation f = (u + v)/2 with
    // u, v in the ball.  Directions are projected onto the supporting
    // hyperplane <b*, x> = 1 of the attained dual maximizer, since normal
    // components always leave the ball on one side.
    Rng rng(0xE17E);
    const VectorXd normal = dual.maximizer.norm() > 0.0
                                ? VectorXd(dual.maximizer / dual.maximizer.norm())
                                : VectorXd::Zero(model.m);
    for (int trial = 0; trial < 2 * model.m && !rep.witnessed_midpoint; ++trial) {
        VectorXd dir(model.m);
        for (int i = 0; i < model.m; ++i) dir[i] = rng.normal();
        if (normal.size() == dir.size()) dir -= dir.dot(normal) * normal;
        if (dir.norm() < 1e-12) continue;
        dir /= dir.norm();
        for (double t : {16.0 * tolerance, 8.0 * tolerance, 4.0 * tolerance}) {
            VectorXd u = f + t * dir;
            const double un = xqstar_dual_norm(model, u).value;
            if (un > 1.0) u /= un;  // project back to the ball
            VectorXd v = 2.0 * f - u;
            const double vn = xqstar_dual_norm(model, v).value;
            if (vn <= 1.0 + 0.25 * tolerance && (u - v).norm() > t) {
                rep.witnessed_midpoint = true;
                break;
            }
        }
    }
    rep.is_extreme = !rep.witnessed_midpoint;

    if (rep.is_extreme) {
        FinDimProblem prob(model);
        MinNormOptions opt;
        opt.tol = 1e-9;
        opt.restarts = 6;
        opt.max_outer = 80;
        VecMinNormResult r = min_norm_solve(prob, f, opt);
        rep.energy = r.energy;
        rep.in_q_of_a = r.converged && std::abs(r.energy - 1.0) <= tolerance;
    }
    return rep;
}

// ---- assumption 2 search --------------------------------------------------

struct Assumption2Violation {
    VectorXd omega, gamma;
    double q_mismatch = 0.0;   // ||Q omega - Q gamma||
    double deriv_norm = 0.0;   // ||Q'_omega gamma||
    double dual_norm_err = 0.0;  // | ||Q omega||_* - 1 |
};

struct Assumption2Report {
    int trials = 0;
    std::vector<Assumption2Violation> violations;
};

// Search for violating pairs of Assumption 2.  Each trial pins omega to an
// exact member of A (top eigenvector of a normalized T_b, so <b, Q omega> = 1
// certifies ||Q omega||_* = 1 without any dual program) and minimizes
//   ||Q omega - Q gamma||^2 + ||Q'_omega gamma||^2 + (|gamma|^2 - 1)^2
// over gamma alone.  A zero of this objective gives Q gamma = Q omega, hence
// gamma is itself in A, and the pair violates the assumption.
inline Assumption2Report assumption2_search(const FinDimModel& model, int trials,
                                            std::uint64_t seed = 0xA55E) {
    Assumption2Report rep;
    rep.trials = trials;

    for (int trial = 0; trial < trials; ++trial) {
        VectorXd b = detail::random_unit_vector(model.m, seed + 31 * trial);
        const double lmax = model.lambda_max(b);
        if (!(lmax > 1e-10)) continue;
        b /= lmax;
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(model.t_matrix(b));
        const VectorXd w = es.eigenvectors().col(model.n - 1);
        const VectorXd qw = model.q_of(w);

        auto objective = [&](const VectorXd& g, VectorXd* grad_g) {
            const VectorXd dq = qw - model.q_of(g);
            const VectorXd dv = model.q_gateaux(w, g);
            const double pg = g.squaredNorm() - 1.0;
            const double val = dq.squaredNorm() + dv.squaredNorm() + pg * pg;
            if (grad_g) {
                // d<c,Qg>/dg = 2 T_c g and d<c,Q'_w g>/dg = 2 T_c w
                *grad_g = -4.0 * (model.t_matrix(dq) * g) + 4.0 * (model.t_matrix(dv) * w) +
                          4.0 * pg * g;
            }
            return val;
        };

        VectorXd g = detail::random_unit_vector(model.n, seed + 31 * trial + 7);
        VectorXd gg, prev_g, prev_gg;
        double step = 0.1;
        double val = objective(g, &gg);
        for (int it = 0; it < 6000 && val > 1e-24; ++it) {
            const double gn2 = gg.squaredNorm();
            if (gn2 < 1e-28) break;
            if (prev_gg.size() > 0) {
                const VectorXd ds = g - prev_g, dy = gg - prev_gg;
                const double dyy = dy.squaredNorm();
                if (dyy > 1e-300) step = std::clamp(ds.dot(dy) / dyy, 1e-12, 10.0);
            }
            prev_g = g;
            prev_gg = gg;
            bool accepted = false;
            while (step > 1e-16) {
                VectorXd gt = g - step * gg;
                VectorXd ggt;
                const double vt = objective(gt, &ggt);
                if (vt < val - 1e-4 * step * gn2) {
                    g = std::move(gt);
                    gg = std::move(ggt);
                    val = vt;
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if (!accepted) break;
        }

        if (val > 1e-16) continue;
        g /= g.norm();
        Assumption2Violation cand;
        cand.omega = w;
        cand.gamma = g;
        cand.q_mismatch = (qw - model.q_of(g)).norm();
        cand.deriv_norm = model.q_gateaux(w, g).norm();
        cand.dual_norm_err = std::abs(b.dot(qw) - 1.0);  // certificate of omega in A
        const bool verified =
            cand.q_mismatch <= 1e-8 && cand.deriv_norm <= 1e-8 && cand.dual_norm_err <= 1e-8;
        if (!verified) continue;
        bool dup = false;
        for (const auto& v : rep.violations)
            if ((v.omega - w).norm() < 1e-4 && (v.gamma - g).norm() < 1e-4) dup = true;
        if (!dup) rep.violations.push_back(std::move(cand));
    }
    return rep;
}

// structural violating pair on a doubled model whose base commutes with the
// complex structure J: L(f, g) = (J g, J f), with L o L = -id
inline VectorXd structural_partner(const FinDimModel& doubled_model, const MatrixXd& j,
                                   const VectorXd& state) {
    const int h = doubled_model.n / 2;
    VectorXd out(doubled_model.n);
    out.head(h) = j * state.tail(h);
    out.tail(h) = j * state.head(h);
    return out;
}

// ---- norm corollary ---------------------------------------------------------

struct NormCorollaryResult {
    double dual_norm = 0.0;
    bool dual_converged = false;
    double decomposition_norm = 0.0;
    bool decomposition_converged = false;
    int best_terms = 0;
};

inline NormCorollaryResult norm_corollary_check(const FinDimModel& model, const VectorXd& f,
                                                int max_terms = 6,
                                                std::uint64_t seed = 0xC0C0) {
    if (model.n > 4 || model.m > 3)
        throw std::invalid_argument("norm_corollary_check: needs n <= 4 and m <= 3");
    NormCorollaryResult out;
    if (f.norm() == 0.0) {
        out.dual_converged = out.decomposition_converged = true;
        return out;
    }

    DualNormResult dual = xqstar_dual_norm(model, f, 8000);
    out.dual_norm = dual.value;
    out.dual_converged = true;

    FinDimProblem base(model);
    out.decomposition_norm = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= max_terms; ++k) {
        ProductProblem prob(base, k);
        MinNormOptions opt;
        opt.tol = 1e-9;
        opt.restarts = 4;
        opt.max_outer = 80;
        opt.seed = seed + 7 * k;
        VecMinNormResult r = min_norm_solve(prob, f, opt);
        if (r.converged && r.energy < out.decomposition_norm) {
            out.decomposition_norm = r.energy;
            out.best_terms = k;
            out.decomposition_converged = true;
        }
    }
    return out;
}

}  // namespace hqlab
