// Fourier multiplier operators: Hilbert, Riesz, Beurling, inverse sqrt-Laplacian,
// the Cauchy transform, and alias-free pointwise products.
//
// Conventions (pinned by tests, not assumed):
//   hilbert      m(xi) = -i sgn(xi)
//   riesz(j)     m(xi) = -i xi_j / |xi|
//   beurling     m(xi) = conj(zeta)/zeta with zeta = xi_1 + i xi_2, so that
//                applying it to u_zbar gives u_z under d/dzbar <-> i*zeta/2
//   lambda_inv   m(xi) = 1/|xi|
// Singular symbols are 0 at xi = 0; mean-zero preconditions are enforced where
// the continuum operator needs decay.

#pragma once

#include <functional>

#include "hqlab/fft.hpp"

namespace hqlab {

struct MultiplierSymbol {
    std::string name;
    std::function<complex(const std::array<double, 2>&)> evaluator;

    complex operator()(const std::array<double, 2>& xi) const {
        if (xi[0] == 0.0 && xi[1] == 0.0) return complex(0.0, 0.0);
        return evaluator(xi);
    }

    static MultiplierSymbol hilbert() {
        return {"hilbert", [](const std::array<double, 2>& xi) {
                    return complex(0.0, xi[0] > 0.0 ? -1.0 : 1.0);
                }};
    }

    static MultiplierSymbol riesz(int j) {
        if (j != 1 && j != 2) throw std::invalid_argument("riesz: axis must be 1 or 2");
        return {j == 1 ? "riesz1" : "riesz2", [j](const std::array<double, 2>& xi) {
                    const double r = std::hypot(xi[0], xi[1]);
                    return complex(0.0, -xi[j - 1] / r);
                }};
    }

    // second-order Riesz transform R_j R_k
    static MultiplierSymbol riesz2(int j, int k) {
        if (j < 1 || j > 2 || k < 1 || k > 2)
            throw std::invalid_argument("riesz2: axes must be 1 or 2");
        std::string nm = "riesz" + std::to_string(j) + std::to_string(k);
        return {nm, [j, k](const std::array<double, 2>& xi) {
                    const double r2 = xi[0] * xi[0] + xi[1] * xi[1];
                    return complex(-xi[j - 1] * xi[k - 1] / r2, 0.0);
                }};
    }

    static MultiplierSymbol beurling() {
        return {"beurling", [](const std::array<double, 2>& xi) {
                    const complex zeta(xi[0], xi[1]);
                    return std::conj(zeta) / zeta;
                }};
    }

    static MultiplierSymbol beurling_conjugate() {
        return {"beurling_conjugate", [](const std::array<double, 2>& xi) {
                    const complex zeta(xi[0], xi[1]);
                    return zeta / std::conj(zeta);
                }};
    }

    static MultiplierSymbol lambda_inv() {
        return {"lambda_inv", [](const std::array<double, 2>& xi) {
                    return complex(1.0 / std::hypot(xi[0], xi[1]), 0.0);
                }};
    }

    static MultiplierSymbol custom(std::string name,
                                   std::function<complex(const std::array<double, 2>&)> fn) {
        return {std::move(name), std::move(fn)};
    }
};

inline Field apply_multiplier(const Field& f, const MultiplierSymbol& m) {
    require_finite(f, "apply_multiplier");
    spectrum_t s = spectrum(f);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] *= m(freq_at(f.grid, i));
    return synthesize(f.grid, std::move(s));
}

// u with u_zbar = w, i.e. u_hat = w_hat / (i*zeta/2); requires mean-zero w
inline Field cauchy_transform(const Field& w) {
    require_finite(w, "cauchy_transform");
    if (w.grid.dim != 2) throw std::invalid_argument("cauchy_transform: needs a 2-D grid");
    if (relative_mean(w) > 1e-12)
        throw std::invalid_argument("cauchy_transform: data has nonzero mean");
    spectrum_t s = spectrum(w);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto xi = freq_at(w.grid, i);
        if (xi[0] == 0.0 && xi[1] == 0.0) {
            s[i] = complex(0.0, 0.0);
            continue;
        }
        const complex zeta(xi[0], xi[1]);
        s[i] *= 2.0 / (complex(0.0, 1.0) * zeta);
    }
    return synthesize(w.grid, std::move(s));
}

namespace detail {

// The product band is the negation-symmetric lattice |k_j| <= N/2 - 1; the
// unpaired -N/2 modes are dropped on both embed and restrict.  This keeps
// spectral truncation commuting with complex conjugation, which the exact
// operator adjoints rely on.
inline bool in_product_band(const GridSpec& g, int k) { return std::abs(k) < g.n / 2; }

// embed coefficients of an N-grid into an M-grid (M >= N), zero padding
inline spectrum_t pad_spectrum(const GridSpec& g, const spectrum_t& s, int m) {
    if (g.dim == 1) {
        spectrum_t out(static_cast<std::size_t>(m), complex(0.0, 0.0));
        for (int i = 0; i < g.n; ++i) {
            const int k = g.mode(i);
            if (!in_product_band(g, k)) continue;
            out[k >= 0 ? k : k + m] = s[i];
        }
        return out;
    }
    spectrum_t out(static_cast<std::size_t>(m) * m, complex(0.0, 0.0));
    for (int i1 = 0; i1 < g.n; ++i1) {
        const int k1 = g.mode(i1);
        if (!in_product_band(g, k1)) continue;
        const int j1 = k1 >= 0 ? k1 : k1 + m;
        for (int i2 = 0; i2 < g.n; ++i2) {
            const int k2 = g.mode(i2);
            if (!in_product_band(g, k2)) continue;
            const int j2 = k2 >= 0 ? k2 : k2 + m;
            out[static_cast<std::size_t>(j1) * m + j2] =
                s[static_cast<std::size_t>(i1) * g.n + i2];
        }
    }
    return out;
}

// restrict M-grid coefficients back to the N-grid product band
inline spectrum_t truncate_spectrum(const GridSpec& g, const spectrum_t& s, int m) {
    if (g.dim == 1) {
        spectrum_t out(static_cast<std::size_t>(g.n), complex(0.0, 0.0));
        for (int i = 0; i < g.n; ++i) {
            const int k = g.mode(i);
            if (!in_product_band(g, k)) continue;
            out[i] = s[k >= 0 ? k : k + m];
        }
        return out;
    }
    spectrum_t out(g.size(), complex(0.0, 0.0));
    for (int i1 = 0; i1 < g.n; ++i1) {
        const int k1 = g.mode(i1);
        if (!in_product_band(g, k1)) continue;
        const int j1 = k1 >= 0 ? k1 : k1 + m;
        for (int i2 = 0; i2 < g.n; ++i2) {
            const int k2 = g.mode(i2);
            if (!in_product_band(g, k2)) continue;
            const int j2 = k2 >= 0 ? k2 : k2 + m;
            out[static_cast<std::size_t>(i1) * g.n + i2] =
                s[static_cast<std::size_t>(j1) * m + j2];
        }
    }
    return out;
}

}  // namespace detail

// Pointwise product via 3/2-rule zero padding.  Exact (there is no wrap-around
// into retained modes) whenever both inputs have spectral support <= N/3.
inline Field dealiased_product(const Field& f, const Field& g) {
    require_same_grid(f, g, "dealiased_product");
    const GridSpec& grid = f.grid;
    const int m = 3 * grid.n / 2;

    spectrum_t fs = detail::pad_spectrum(grid, spectrum(f), m);
    spectrum_t gs = detail::pad_spectrum(grid, spectrum(g), m);

    const double scale_up = (grid.dim == 1) ? m : static_cast<double>(m) * m;
    if (grid.dim == 1) {
        for (complex& v : fs) v *= scale_up;
        detail::fft_1d(fs, false);
        for (complex& v : gs) v *= scale_up;
        detail::fft_1d(gs, false);
        for (std::size_t i = 0; i < fs.size(); ++i) fs[i] *= gs[i];
        detail::fft_1d(fs, true);
        for (complex& v : fs) v /= static_cast<double>(m);
    } else {
        for (complex& v : fs) v *= scale_up;
        detail::fft_2d(fs, m, m, false);
        for (complex& v : gs) v *= scale_up;
        detail::fft_2d(gs, m, m, false);
        for (std::size_t i = 0; i < fs.size(); ++i) fs[i] *= gs[i];
        detail::fft_2d(fs, m, m, true);
        for (complex& v : fs) v /= static_cast<double>(m) * m;
    }
    return synthesize(grid, detail::truncate_spectrum(grid, fs, m));
}

}  // namespace hqlab
