// Quadratic compensated-compactness quantities and their derivatives.
//
// Kinds and their diagonals Q(w):
//   planar_jacobian     |S w|^2 - |w|^2            (complex w, 2-D)
//   line_q1             w^2 - (H w)^2              (real w, 1-D)
//   line_q2             2 w H w                    (real w, 1-D)
//   riesz_combination   |w|^2 - sum_j |R_j w|^2    (dim matches grid)
//   monge_ampere        R11 w R22 w - (R12 w)^2    (real w, 2-D)
//   wu_bivector(j,k)    0 on the diagonal; the bilinear part
//                       R_j w R_k g - R_k w R_j g is exposed via pair_quantity
//   paracommutator(A)   double mode sum with the quantity symbol derived from A
//
// gateaux() returns the full derivative, so gateaux(d, w, w) = 2 Q(w); the
// symmetric bilinear form "omega gamma - H omega H gamma" style objects are
// pair_quantity() = gateaux()/2 for the quadratic kinds.  All products are
// dealiased.  Inputs are required mean-zero where the singular operators
// need decay, and band-limited (support <= N/3) for paracommutator kinds.

#pragma once

#include "hqlab/multiplier.hpp"

namespace hqlab {

enum class QuantityKind {
    planar_jacobian,
    line_q1,
    line_q2,
    riesz_combination,
    wu_bivector,
    monge_ampere,
    paracommutator,
};

struct SymbolA {
    std::string tag;
    // real-valued operator symbol A(xi, eta)
    std::function<double(const std::array<double, 2>&, const std::array<double, 2>&)> evaluator;
    double bound = 0.0;  // |A| <= bound on the admissible lattice band

    double operator()(const std::array<double, 2>& xi, const std::array<double, 2>& eta) const {
        return evaluator(xi, eta);
    }

    static SymbolA constant_one() {
        return {"one", [](const auto&, const auto&) { return 1.0; }, 1.0};
    }

    // A(xi,eta) = 1 - (xi.eta)^m / (|xi| |eta|)^m
    static SymbolA wu(int m) {
        if (m < 1) throw std::invalid_argument("SymbolA::wu: m must be >= 1");
        return {"wu_m" + std::to_string(m),
                [m](const std::array<double, 2>& xi, const std::array<double, 2>& eta) {
                    const double nx = std::hypot(xi[0], xi[1]);
                    const double ne = std::hypot(eta[0], eta[1]);
                    if (nx == 0.0 || ne == 0.0) return 0.0;
                    const double c = (xi[0] * eta[0] + xi[1] * eta[1]) / (nx * ne);
                    return 1.0 - std::pow(c, m);
                },
                2.0};
    }

    // antisymmetric symbol of R_1 [b, R_2] - R_2 [b, R_1]
    static SymbolA jacobian_real() {
        return {"jacobian_real",
                [](const std::array<double, 2>& xi, const std::array<double, 2>& eta) {
                    const double nx = std::hypot(xi[0], xi[1]);
                    const double ne = std::hypot(eta[0], eta[1]);
                    if (nx == 0.0 || ne == 0.0) return 0.0;
                    return (xi[0] * eta[1] - xi[1] * eta[0]) / (nx * ne);
                },
                1.0};
    }

    // A(xi,eta) = xi_j/|xi| - eta_j/|eta|, the [b, R_j] family
    static SymbolA riesz_commutator(int j) {
        if (j != 1 && j != 2) throw std::invalid_argument("SymbolA::riesz_commutator: bad axis");
        return {"riesz_commutator" + std::to_string(j),
                [j](const std::array<double, 2>& xi, const std::array<double, 2>& eta) {
                    const double nx = std::hypot(xi[0], xi[1]);
                    const double ne = std::hypot(eta[0], eta[1]);
                    const double a = nx == 0.0 ? 0.0 : xi[j - 1] / nx;
                    const double b = ne == 0.0 ? 0.0 : eta[j - 1] / ne;
                    return a - b;
                },
                2.0};
    }

    static SymbolA custom(std::string tag,
                          std::function<double(const std::array<double, 2>&,
                                               const std::array<double, 2>&)> fn,
                          double bound) {
        return {std::move(tag), std::move(fn), bound};
    }
};

// quantity symbol associated with an operator symbol: Atilde(xi,eta) = A(-eta, xi)
inline SymbolA quantity_symbol(const SymbolA& a) {
    auto fn = a.evaluator;
    return SymbolA{"tilde:" + a.tag,
                   [fn](const std::array<double, 2>& xi, const std::array<double, 2>& eta) {
                       return fn({-eta[0], -eta[1]}, xi);
                   },
                   a.bound};
}

struct QuantityDescriptor {
    QuantityKind kind = QuantityKind::planar_jacobian;
    GridSpec grid;
    int riesz_dim = 0;     // riesz_combination(n)
    int axis_j = 1, axis_k = 2;  // wu_bivector(j,k)
    SymbolA symbol;        // paracommutator

    static QuantityDescriptor planar_jacobian(const GridSpec& g) {
        if (g.dim != 2) throw std::invalid_argument("planar_jacobian needs a 2-D grid");
        QuantityDescriptor d;
        d.kind = QuantityKind::planar_jacobian;
        d.grid = g;
        return d;
    }
    static QuantityDescriptor line_q1(const GridSpec& g) {
        if (g.dim != 1) throw std::invalid_argument("line_q1 needs a 1-D grid");
        QuantityDescriptor d;
        d.kind = QuantityKind::line_q1;
        d.grid = g;
        return d;
    }
    static QuantityDescriptor line_q2(const GridSpec& g) {
        if (g.dim != 1) throw std::invalid_argument("line_q2 needs a 1-D grid");
        QuantityDescriptor d;
        d.kind = QuantityKind::line_q2;
        d.grid = g;
        return d;
    }
    static QuantityDescriptor riesz_combination(const GridSpec& g, int n) {
        if (n != g.dim)
            throw std::invalid_argument("riesz_combination(n): n must match grid.dim");
        QuantityDescriptor d;
        d.kind = QuantityKind::riesz_combination;
        d.grid = g;
        d.riesz_dim = n;
        return d;
    }
    static QuantityDescriptor wu_bivector(const GridSpec& g, int j, int k) {
        if (g.dim != 2) throw std::invalid_argument("wu_bivector needs a 2-D grid");
        if (j >= k || j < 1 || k > 2)
            throw std::invalid_argument("wu_bivector(j,k): need 1 <= j < k <= 2");
        QuantityDescriptor d;
        d.kind = QuantityKind::wu_bivector;
        d.grid = g;
        d.axis_j = j;
        d.axis_k = k;
        return d;
    }
    static QuantityDescriptor monge_ampere(const GridSpec& g) {
        if (g.dim != 2) throw std::invalid_argument("monge_ampere needs a 2-D grid");
        QuantityDescriptor d;
        d.kind = QuantityKind::monge_ampere;
        d.grid = g;
        return d;
    }
    static QuantityDescriptor paracommutator(const GridSpec& g, SymbolA a) {
        QuantityDescriptor d;
        d.kind = QuantityKind::paracommutator;
        d.grid = g;
        d.symbol = std::move(a);
        return d;
    }

    // config-string form, e.g. "planar_jacobian", "paracommutator:wu_m1"
    std::string config_string() const {
        switch (kind) {
            case QuantityKind::planar_jacobian: return "planar_jacobian";
            case QuantityKind::line_q1: return "line_q1";
            case QuantityKind::line_q2: return "line_q2";
            case QuantityKind::riesz_combination:
                return "riesz_combination" + std::to_string(riesz_dim);
            case QuantityKind::wu_bivector:
                return "wu_bivector" + std::to_string(axis_j) + std::to_string(axis_k);
            case QuantityKind::monge_ampere: return "monge_ampere";
            case QuantityKind::paracommutator: return "paracommutator:" + symbol.tag;
        }
        return "?";
    }

    static QuantityDescriptor parse(const std::string& s, const GridSpec& g) {
        if (s == "planar_jacobian") return planar_jacobian(g);
        if (s == "line_q1") return line_q1(g);
        if (s == "line_q2") return line_q2(g);
        if (s == "riesz_combination1") return riesz_combination(g, 1);
        if (s == "riesz_combination2") return riesz_combination(g, 2);
        if (s == "wu_bivector12") return wu_bivector(g, 1, 2);
        if (s == "monge_ampere") return monge_ampere(g);
        if (s == "paracommutator:one") return paracommutator(g, SymbolA::constant_one());
        if (s == "paracommutator:wu_m1") return paracommutator(g, SymbolA::wu(1));
        if (s == "paracommutator:wu_m2") return paracommutator(g, SymbolA::wu(2));
        if (s == "paracommutator:jacobian_real")
            return paracommutator(g, SymbolA::jacobian_real());
        throw std::invalid_argument("unknown quantity descriptor: " + s);
    }

    // does the kind act on complex scalars (K = C) or real ones (K = R)?
    bool complex_valued() const { return kind == QuantityKind::planar_jacobian; }
};

namespace detail {

inline void check_quantity_input(const QuantityDescriptor& d, const Field& w,
                                 const char* where) {
    if (w.grid != d.grid) throw std::invalid_argument(std::string(where) + ": grid mismatch");
    require_finite(w, where);
    if (d.kind == QuantityKind::paracommutator) {
        if (spectral_support(w) > d.grid.n / 3)
            throw std::invalid_argument(std::string(where) +
                                        ": spectral support exceeds N/3, product would alias");
    } else {
        require_mean_zero(w, 1e-8, where);
    }
}

inline Field riesz_field(const Field& w, int j) {
    return apply_multiplier(w, w.grid.dim == 1 ? MultiplierSymbol::hilbert()
                                               : MultiplierSymbol::riesz(j));
}

}  // namespace detail

// Q_Atilde(w, g): double lattice sum over supported modes, O(M^2) in the
// number of active modes.  The symbol argument is the quantity symbol itself
// (Atilde); use quantity_symbol() to derive it from an operator symbol.
inline Field eval_paracommutator_quantity(const SymbolA& atilde, const Field& w,
                                          const Field& g) {
    require_same_grid(w, g, "eval_paracommutator_quantity");
    require_finite(w, "eval_paracommutator_quantity");
    require_finite(g, "eval_paracommutator_quantity");
    const GridSpec& grid = w.grid;
    if (spectral_support(w) > grid.n / 3 || spectral_support(g) > grid.n / 3)
        throw std::invalid_argument(
            "eval_paracommutator_quantity: spectral support exceeds N/3, would alias");

    struct ModeEntry {
        int k1, k2;
        std::array<double, 2> xi;
        complex c;
    };
    auto gather = [&grid](const Field& f) {
        spectrum_t s = spectrum(f);
        double cmax = 0.0;
        for (const complex& v : s) cmax = std::max(cmax, std::abs(v));
        std::vector<ModeEntry> modes;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (cmax == 0.0 || std::abs(s[i]) <= 1e-15 * cmax) continue;
            ModeEntry e;
            if (grid.dim == 1) {
                e.k1 = grid.mode(static_cast<int>(i));
                e.k2 = 0;
            } else {
                e.k1 = grid.mode(static_cast<int>(i) / grid.n);
                e.k2 = grid.mode(static_cast<int>(i) % grid.n);
            }
            e.xi = freq_at(grid, i);
            e.c = s[i];
            modes.push_back(e);
        }
        return modes;
    };

    const auto wm = gather(w);
    const auto gm = gather(g);
    spectrum_t out(grid.size(), complex(0.0, 0.0));
    for (const auto& a : wm)
        for (const auto& b : gm) {
            const int k1 = a.k1 + b.k1;
            const int k2 = a.k2 + b.k2;
            // project: sums beyond the representable lattice are dropped
            if (std::abs(k1) >= grid.n / 2) continue;
            if (std::abs(k2) >= grid.n / 2) continue;
            const std::size_t idx =
                grid.dim == 1 ? static_cast<std::size_t>(grid.index_of_mode(k1))
                              : static_cast<std::size_t>(grid.index_of_mode(k1)) * grid.n +
                                    grid.index_of_mode(k2);
            out[idx] += a.c * b.c * atilde(a.xi, b.xi);
        }
    return synthesize(grid, std::move(out));
}

inline Field eval_quantity(const QuantityDescriptor& d, const Field& w) {
    detail::check_quantity_input(d, w, "eval_quantity");
    switch (d.kind) {
        case QuantityKind::planar_jacobian: {
            Field sw = apply_multiplier(w, MultiplierSymbol::beurling());
            return real_part(dealiased_product(sw, conjugate(sw)) -
                             dealiased_product(w, conjugate(w)));
        }
        case QuantityKind::line_q1: {
            Field hw = apply_multiplier(w, MultiplierSymbol::hilbert());
            return dealiased_product(w, w) - dealiased_product(hw, hw);
        }
        case QuantityKind::line_q2: {
            Field hw = apply_multiplier(w, MultiplierSymbol::hilbert());
            return 2.0 * dealiased_product(w, hw);
        }
        case QuantityKind::riesz_combination: {
            Field out = real_part(dealiased_product(w, conjugate(w)));
            for (int j = 1; j <= d.grid.dim; ++j) {
                Field rw = detail::riesz_field(w, j);
                out = out - real_part(dealiased_product(rw, conjugate(rw)));
            }
            return out;
        }
        case QuantityKind::wu_bivector:
            // antisymmetric bilinear part; its quadratic diagonal vanishes
            return Field(d.grid);
        case QuantityKind::monge_ampere: {
            Field r11 = apply_multiplier(w, MultiplierSymbol::riesz2(1, 1));
            Field r22 = apply_multiplier(w, MultiplierSymbol::riesz2(2, 2));
            Field r12 = apply_multiplier(w, MultiplierSymbol::riesz2(1, 2));
            return dealiased_product(r11, r22) - dealiased_product(r12, r12);
        }
        case QuantityKind::paracommutator:
            return eval_paracommutator_quantity(quantity_symbol(d.symbol), w, w);
    }
    throw std::logic_error("eval_quantity: unreachable");
}

// Full Gateaux derivative: gateaux(d, w, w) = 2 Q(w).
inline Field gateaux(const QuantityDescriptor& d, const Field& w, const Field& g) {
    detail::check_quantity_input(d, w, "gateaux");
    detail::check_quantity_input(d, g, "gateaux");
    switch (d.kind) {
        case QuantityKind::planar_jacobian: {
            Field sw = apply_multiplier(w, MultiplierSymbol::beurling());
            Field sg = apply_multiplier(g, MultiplierSymbol::beurling());
            Field t = dealiased_product(sw, conjugate(sg)) - dealiased_product(w, conjugate(g));
            return 2.0 * real_part(t);
        }
        case QuantityKind::line_q1: {
            Field hw = apply_multiplier(w, MultiplierSymbol::hilbert());
            Field hg = apply_multiplier(g, MultiplierSymbol::hilbert());
            return 2.0 * (dealiased_product(w, g) - dealiased_product(hw, hg));
        }
        case QuantityKind::line_q2: {
            Field hw = apply_multiplier(w, MultiplierSymbol::hilbert());
            Field hg = apply_multiplier(g, MultiplierSymbol::hilbert());
            return 2.0 * (dealiased_product(w, hg) + dealiased_product(g, hw));
        }
        case QuantityKind::riesz_combination: {
            Field out = real_part(dealiased_product(w, conjugate(g)));
            for (int j = 1; j <= d.grid.dim; ++j) {
                Field rw = detail::riesz_field(w, j);
                Field rg = detail::riesz_field(g, j);
                out = out - real_part(dealiased_product(rw, conjugate(rg)));
            }
            return 2.0 * out;
        }
        case QuantityKind::wu_bivector:
            return Field(d.grid);  // derivative of the identically-zero diagonal
        case QuantityKind::monge_ampere: {
            Field r11w = apply_multiplier(w, MultiplierSymbol::riesz2(1, 1));
            Field r22w = apply_multiplier(w, MultiplierSymbol::riesz2(2, 2));
            Field r12w = apply_multiplier(w, MultiplierSymbol::riesz2(1, 2));
            Field r11g = apply_multiplier(g, MultiplierSymbol::riesz2(1, 1));
            Field r22g = apply_multiplier(g, MultiplierSymbol::riesz2(2, 2));
            Field r12g = apply_multiplier(g, MultiplierSymbol::riesz2(1, 2));
            return dealiased_product(r11w, r22g) + dealiased_product(r11g, r22w) -
                   2.0 * dealiased_product(r12w, r12g);
        }
        case QuantityKind::paracommutator: {
            const SymbolA at = quantity_symbol(d.symbol);
            return eval_paracommutator_quantity(at, w, g) +
                   eval_paracommutator_quantity(at, g, w);
        }
    }
    throw std::logic_error("gateaux: unreachable");
}

// Bilinear pair quantity on H x H.  For the quadratic kinds this is the
// symmetric polarization gateaux/2 (so line_q1 gives w g - Hw Hg); for
// wu_bivector it is the antisymmetric bivector component itself.
inline Field pair_quantity(const QuantityDescriptor& d, const Field& w, const Field& g) {
    if (d.kind == QuantityKind::wu_bivector) {
        detail::check_quantity_input(d, w, "pair_quantity");
        detail::check_quantity_input(d, g, "pair_quantity");
        Field rjw = apply_multiplier(w, MultiplierSymbol::riesz(d.axis_j));
        Field rkw = apply_multiplier(w, MultiplierSymbol::riesz(d.axis_k));
        Field rjg = apply_multiplier(g, MultiplierSymbol::riesz(d.axis_j));
        Field rkg = apply_multiplier(g, MultiplierSymbol::riesz(d.axis_k));
        return dealiased_product(rjw, rkg) - dealiased_product(rkw, rjg);
    }
    return 0.5 * gateaux(d, w, g);
}

// Derivative of the pair quantity at (w, g) in direction (phi, psi).
inline Field pair_gateaux(const QuantityDescriptor& d, const Field& w, const Field& g,
                          const Field& phi, const Field& psi) {
    return pair_quantity(d, w, psi) + pair_quantity(d, phi, g);
}

}  // namespace hqlab
