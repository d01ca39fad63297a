// The linear operators T_b attached to each quadratic quantity, their
// self-adjointifications on H x H, and spectral data (operator norm,
// numerical radius, fixed space ker(I - T_b)).
//
// H is treated as a real Hilbert space with <w,g> = Re sum w conj(g) dV, and
// complex fields are realified (dimension 2 N^dim) for spectral work; real
// kinds use N^dim.  Operators built from singular multipliers act on the
// mean-zero subspace: inputs and outputs are projected, matching the
// "modulo constants" identification of the continuum picture.

#pragma once

#include "hqlab/linalg.hpp"
#include "hqlab/quantities.hpp"

namespace hqlab {

// element of H or of the doubled space H x H
struct OperatorState {
    std::vector<Field> parts;

    OperatorState() = default;
    explicit OperatorState(Field f) { parts.push_back(std::move(f)); }
    OperatorState(Field f, Field g) {
        parts.push_back(std::move(f));
        parts.push_back(std::move(g));
    }
};

inline double inner_real(const OperatorState& a, const OperatorState& b) {
    if (a.parts.size() != b.parts.size())
        throw std::invalid_argument("OperatorState inner product: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.parts.size(); ++i) s += inner_real(a.parts[i], b.parts[i]);
    return s;
}

inline double state_norm(const OperatorState& a) {
    double s = 0.0;
    for (const Field& f : a.parts) {
        const double n = l2_norm(f);
        s += n * n;
    }
    return std::sqrt(s);
}

namespace detail {

// the operators act modulo constants: the zero mode is annihilated
inline Field project_operator_domain(const Field& f) {
    const complex m = mean(f);
    Field out = f;
    for (complex& v : out.values) v -= m;
    return out;
}

}  // namespace detail

struct OperatorHandle {
    QuantityDescriptor descriptor;
    Field symbol_field;  // the b
    bool doubled = false;

    static OperatorHandle for_quantity(const QuantityDescriptor& d, const Field& b) {
        if (d.kind == QuantityKind::wu_bivector)
            throw std::invalid_argument(
                "OperatorHandle: wu_bivector has no single-field operator; "
                "use paracommutator:jacobian_real");
        if (b.grid != d.grid)
            throw std::invalid_argument("OperatorHandle: symbol grid mismatch");
        require_finite(b, "OperatorHandle");
        for (const complex& v : b.values)
            if (std::abs(v.imag()) > 1e-10 * (1.0 + std::abs(v)))
                throw std::invalid_argument("OperatorHandle: symbol field must be real-valued");
        if (d.kind == QuantityKind::paracommutator && spectral_support(b) > d.grid.n / 3)
            throw std::invalid_argument(
                "OperatorHandle: paracommutator symbol support exceeds N/3");
        return {d, b, false};
    }

    int parts() const { return doubled ? 2 : 1; }
    int realified_dim_per_part() const {
        const int m = static_cast<int>(descriptor.grid.size());
        return descriptor.complex_valued() ? 2 * m : m;
    }
    int realified_dim() const { return parts() * realified_dim_per_part(); }
};

namespace detail {

// The named kinds implement T_b as the exact half-Hessian of the grid
// functional w -> <b, Q w>: every product is the same dealiased product the
// quantity uses, with the outer multipliers moved to adjoint position.  This
// makes <T_b w, w> = <b, Q w> and self-adjointness hold to roundoff for every
// field, not merely for band-limited data.
inline Field apply_base(const OperatorHandle& h, const Field& w_in) {
    const QuantityDescriptor& d = h.descriptor;
    const Field& b = h.symbol_field;
    switch (d.kind) {
        case QuantityKind::planar_jacobian: {
            const Field w = project_operator_domain(w_in);
            Field sw = apply_multiplier(w, MultiplierSymbol::beurling());
            Field out = apply_multiplier(dealiased_product(b, sw),
                                         MultiplierSymbol::beurling_conjugate()) -
                        dealiased_product(b, w);
            return project_operator_domain(out);
        }
        case QuantityKind::line_q1: {
            const Field w = project_operator_domain(w_in);
            Field hw = apply_multiplier(w, MultiplierSymbol::hilbert());
            Field out = dealiased_product(b, w) +
                        apply_multiplier(dealiased_product(b, hw), MultiplierSymbol::hilbert());
            return project_operator_domain(out);
        }
        case QuantityKind::line_q2: {
            const Field w = project_operator_domain(w_in);
            Field hw = apply_multiplier(w, MultiplierSymbol::hilbert());
            Field out = dealiased_product(b, hw) -
                        apply_multiplier(dealiased_product(b, w), MultiplierSymbol::hilbert());
            return project_operator_domain(out);
        }
        case QuantityKind::riesz_combination: {
            const Field w = project_operator_domain(w_in);
            Field out = dealiased_product(b, w);
            for (int j = 1; j <= d.grid.dim; ++j) {
                const MultiplierSymbol rj =
                    d.grid.dim == 1 ? MultiplierSymbol::hilbert() : MultiplierSymbol::riesz(j);
                Field rw = apply_multiplier(w, rj);
                out = out + apply_multiplier(dealiased_product(b, rw), rj);
            }
            return project_operator_domain(out);
        }
        case QuantityKind::monge_ampere: {
            const Field w = project_operator_domain(w_in);
            Field r11 = apply_multiplier(w, MultiplierSymbol::riesz2(1, 1));
            Field r22 = apply_multiplier(w, MultiplierSymbol::riesz2(2, 2));
            Field r12 = apply_multiplier(w, MultiplierSymbol::riesz2(1, 2));
            Field out =
                apply_multiplier(dealiased_product(b, r22), MultiplierSymbol::riesz2(1, 1)) +
                apply_multiplier(dealiased_product(b, r11), MultiplierSymbol::riesz2(2, 2)) -
                2.0 * apply_multiplier(dealiased_product(b, r12), MultiplierSymbol::riesz2(1, 2));
            return project_operator_domain(0.5 * out);
        }
        case QuantityKind::paracommutator:
            break;  // handled below
        case QuantityKind::wu_bivector:
            throw std::logic_error("apply_base: wu_bivector handle cannot exist");
    }

    // paracommutator: (T_b w)^(xi) = sum_eta b^(xi-eta) A(xi,eta) w^(eta),
    // with sums falling off the lattice projected away (never wrapped)
    const GridSpec& grid = d.grid;
    spectrum_t bs = spectrum(h.symbol_field);
    spectrum_t ws = spectrum(w_in);
    spectrum_t out(grid.size(), complex(0.0, 0.0));

    struct ModeEntry {
        int k1, k2;
        complex c;
    };
    auto gather = [&grid](const spectrum_t& s) {
        double cmax = 0.0;
        for (const complex& v : s) cmax = std::max(cmax, std::abs(v));
        std::vector<ModeEntry> modes;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (cmax == 0.0 || std::abs(s[i]) <= 1e-15 * cmax) continue;
            if (grid.dim == 1)
                modes.push_back({grid.mode(static_cast<int>(i)), 0, s[i]});
            else
                modes.push_back({grid.mode(static_cast<int>(i) / grid.n),
                                 grid.mode(static_cast<int>(i) % grid.n), s[i]});
        }
        return modes;
    };
    for (const auto& bm : gather(bs))
        for (const auto& wm : gather(ws)) {
            const int k1 = bm.k1 + wm.k1, k2 = bm.k2 + wm.k2;
            if (std::abs(k1) >= grid.n / 2) continue;
            if (std::abs(k2) >= grid.n / 2) continue;
            const std::array<double, 2> xi = {grid.freq(k1), grid.freq(k2)};
            const std::array<double, 2> eta = {grid.freq(wm.k1), grid.freq(wm.k2)};
            const std::size_t idx =
                grid.dim == 1 ? static_cast<std::size_t>(grid.index_of_mode(k1))
                              : static_cast<std::size_t>(grid.index_of_mode(k1)) * grid.n +
                                    grid.index_of_mode(k2);
            out[idx] += bm.c * wm.c * d.symbol(xi, eta);
        }
    return synthesize(grid, std::move(out));
}

inline Field apply_base_adjoint(const OperatorHandle& h, const Field& w) {
    if (h.descriptor.kind != QuantityKind::paracommutator)
        return apply_base(h, w);  // the named kinds are self-adjoint for the real pairing
    // adjoint of a paracommutator has symbol A'(xi,eta) = A(-eta,-xi)
    OperatorHandle adj = h;
    const SymbolA a = h.descriptor.symbol;
    adj.descriptor.symbol = SymbolA::custom(
        "adj:" + a.tag,
        [a](const std::array<double, 2>& xi, const std::array<double, 2>& eta) {
            return a({-eta[0], -eta[1]}, {-xi[0], -xi[1]});
        },
        a.bound);
    return apply_base(adj, w);
}

}  // namespace detail

inline OperatorState apply_state(const OperatorHandle& h, const OperatorState& s) {
    if (static_cast<int>(s.parts.size()) != h.parts())
        throw std::invalid_argument("apply_state: part count mismatch");
    if (!h.doubled) return OperatorState(detail::apply_base(h, s.parts[0]));
    // T~_b(f,g) = (T_b^* g, T_b f)
    return OperatorState(detail::apply_base_adjoint(h, s.parts[1]),
                         detail::apply_base(h, s.parts[0]));
}

inline OperatorState apply_state_adjoint(const OperatorHandle& h, const OperatorState& s) {
    if (!h.doubled) return OperatorState(detail::apply_base_adjoint(h, s.parts[0]));
    return apply_state(h, s);  // the doubled operator is self-adjoint by construction
}

inline Field apply_tb(const OperatorHandle& h, const Field& w) {
    if (h.doubled) throw std::invalid_argument("apply_tb: doubled handle needs a pair state");
    require_finite(w, "apply_tb");
    if (w.grid != h.descriptor.grid) throw std::invalid_argument("apply_tb: grid mismatch");
    if (h.descriptor.kind == QuantityKind::paracommutator &&
        spectral_support(w) > h.descriptor.grid.n / 3)
        throw std::invalid_argument("apply_tb: input support exceeds N/3, would alias");
    return detail::apply_base(h, w);
}

inline OperatorHandle self_adjointify(const OperatorHandle& h) {
    if (h.doubled) throw std::invalid_argument("self_adjointify: handle is already doubled");
    OperatorHandle out = h;
    out.doubled = true;
    return out;
}

// quantity seen by a state: Q(f) for base handles, the full derivative
// Q'_f g for doubled ones (Gateaux formula of the self-adjointification)
inline Field state_quantity(const OperatorHandle& h, const OperatorState& s) {
    if (!h.doubled) return eval_quantity(h.descriptor, s.parts[0]);
    return gateaux(h.descriptor, s.parts[0], s.parts[1]);
}

// ---- realification ----------------------------------------------------------

inline VectorXd realify(const OperatorHandle& h, const OperatorState& s) {
    const int per = h.realified_dim_per_part();
    const std::size_t m = h.descriptor.grid.size();
    VectorXd v(h.realified_dim());
    for (int p = 0; p < h.parts(); ++p) {
        const Field& f = s.parts[p];
        if (h.descriptor.complex_valued()) {
            for (std::size_t i = 0; i < m; ++i) {
                v[p * per + static_cast<int>(i)] = f[i].real();
                v[p * per + static_cast<int>(m + i)] = f[i].imag();
            }
        } else {
            for (std::size_t i = 0; i < m; ++i) v[p * per + static_cast<int>(i)] = f[i].real();
        }
    }
    return v;
}

inline OperatorState unrealify(const OperatorHandle& h, const VectorXd& v) {
    const int per = h.realified_dim_per_part();
    const std::size_t m = h.descriptor.grid.size();
    OperatorState s;
    for (int p = 0; p < h.parts(); ++p) {
        Field f(h.descriptor.grid);
        if (h.descriptor.complex_valued()) {
            for (std::size_t i = 0; i < m; ++i)
                f[i] = complex(v[p * per + static_cast<int>(i)],
                               v[p * per + static_cast<int>(m + i)]);
        } else {
            for (std::size_t i = 0; i < m; ++i)
                f[i] = complex(v[p * per + static_cast<int>(i)], 0.0);
        }
        s.parts.push_back(std::move(f));
    }
    return s;
}

inline RealLinearMap realified_map(const OperatorHandle& h) {
    return [h](const VectorXd& v) { return realify(h, apply_state(h, unrealify(h, v))); };
}

inline RealLinearMap realified_map_adjoint(const OperatorHandle& h) {
    return [h](const VectorXd& v) {
        return realify(h, apply_state_adjoint(h, unrealify(h, v)));
    };
}

// ---- spectral data ----------------------------------------------------------

inline NormEstimate operator_norm(const OperatorHandle& h, double tol = 1e-8,
                                  int max_iter = 5000) {
    PowerIterOptions opt;
    opt.tol = tol;
    opt.max_iter = max_iter;
    return operator_norm_power(realified_map(h), realified_map_adjoint(h), h.realified_dim(),
                               opt);
}

inline NormEstimate numerical_radius(const OperatorHandle& h, double tol = 1e-8,
                                     int max_iter = 5000) {
    PowerIterOptions opt;
    opt.tol = tol;
    opt.max_iter = max_iter;
    const RealLinearMap a = realified_map(h);
    const RealLinearMap at = realified_map_adjoint(h);
    const RealLinearMap sym = [a, at](const VectorXd& v) -> VectorXd {
        return 0.5 * (a(v) + at(v));
    };
    return top_eigenvalue_power(sym, h.realified_dim(), opt);
}

inline constexpr int kDenseCapacity = 4096;

inline MatrixXd assemble_matrix(const OperatorHandle& h) {
    const int dim = h.realified_dim();
    if (dim > kDenseCapacity)
        throw std::runtime_error("assemble_matrix: realified dimension " + std::to_string(dim) +
                                 " exceeds dense capacity " + std::to_string(kDenseCapacity));
    return assemble_dense(realified_map(h), dim);
}

// eigenvectors of the (dense) operator with eigenvalue within eig_tol of 1,
// H-orthonormalized; requires an (almost) self-adjoint handle
inline std::vector<OperatorState> fixed_space(const OperatorHandle& h, double eig_tol = 1e-8) {
    const int dim = h.realified_dim();
    if (dim > kDenseCapacity)
        throw std::runtime_error("fixed_space: realified dimension " + std::to_string(dim) +
                                 " exceeds dense capacity " + std::to_string(kDenseCapacity));

    // symmetry pre-check on probes
    const RealLinearMap a = realified_map(h);
    const RealLinearMap at = realified_map_adjoint(h);
    for (std::uint64_t probe = 0; probe < 3; ++probe) {
        VectorXd x = detail::random_unit_vector(dim, 0x51D0 + probe);
        VectorXd y = detail::random_unit_vector(dim, 0xA0B1 + probe);
        const double lhs = y.dot(a(x)), rhs = x.dot(a(y));
        if (std::abs(lhs - rhs) > 1e-8 * std::max(1.0, std::abs(lhs)))
            throw std::invalid_argument("fixed_space: handle is not self-adjoint on probes");
    }
    (void)at;

    MatrixXd m = assemble_dense(a, dim);
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (m + m.transpose()));
    std::vector<OperatorState> out;
    for (int i = 0; i < dim; ++i) {
        const double lam = es.eigenvalues()[i];
        if (lam >= 1.0 - eig_tol && lam <= 1.0 + eig_tol) {
            OperatorState s = unrealify(h, es.eigenvectors().col(i));
            const double n = state_norm(s);
            for (Field& f : s.parts)
                f = (1.0 / n) * f;
            out.push_back(std::move(s));
        }
    }
    return out;
}

}  // namespace hqlab
