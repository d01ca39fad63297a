// Seeded generators for test fields.

#pragma once

#include "hqlab/fft.hpp"
#include "hqlab/rng.hpp"

namespace hqlab::testdata {

// Random band-limited field: independent Gaussian coefficients with a smooth
// spectral envelope on |k|_inf <= kmax, zero mean mode.  When real_valued is
// set, Hermitian symmetry is enforced so samples are real.
inline Field band_limited(const GridSpec& g, int kmax, std::uint64_t seed,
                          bool real_valued = false) {
    if (kmax >= g.n / 2) throw std::invalid_argument("band_limited: kmax too large");
    Rng rng(seed);
    spectrum_t coeffs(g.size(), complex(0.0, 0.0));
    const double sigma = std::max(1.0, 0.5 * kmax);

    auto envelope = [&](int k1, int k2) {
        return std::exp(-(k1 * k1 + k2 * k2) / (2.0 * sigma * sigma));
    };

    if (g.dim == 1) {
        for (int k = -kmax; k <= kmax; ++k) {
            if (k == 0) continue;
            coeffs[g.index_of_mode(k)] = rng.normal_complex() * envelope(k, 0);
        }
        if (real_valued) {
            for (int k = 1; k <= kmax; ++k) {
                const complex c = coeffs[g.index_of_mode(k)];
                coeffs[g.index_of_mode(-k)] = std::conj(c);
            }
        }
    } else {
        for (int k1 = -kmax; k1 <= kmax; ++k1)
            for (int k2 = -kmax; k2 <= kmax; ++k2) {
                if (k1 == 0 && k2 == 0) continue;
                const std::size_t idx =
                    static_cast<std::size_t>(g.index_of_mode(k1)) * g.n + g.index_of_mode(k2);
                coeffs[idx] = rng.normal_complex() * envelope(k1, k2);
            }
        if (real_valued) {
            for (int k1 = -kmax; k1 <= kmax; ++k1)
                for (int k2 = -kmax; k2 <= kmax; ++k2) {
                    if (k1 < 0 || (k1 == 0 && k2 <= 0)) continue;
                    const std::size_t idx =
                        static_cast<std::size_t>(g.index_of_mode(k1)) * g.n + g.index_of_mode(k2);
                    const std::size_t cidx =
                        static_cast<std::size_t>(g.index_of_mode(-k1)) * g.n + g.index_of_mode(-k2);
                    coeffs[cidx] = std::conj(coeffs[idx]);
                }
        }
    }
    return synthesize(g, std::move(coeffs));
}

inline Field normalized(Field f) {
    const double nrm = l2_norm(f);
    if (nrm == 0.0) return f;
    return (1.0 / nrm) * f;
}

// single complex exponential e^{i xi_k . x}
inline Field pure_mode(const GridSpec& g, int k1, int k2 = 0) {
    Field f(g);
    if (g.dim == 1) {
        for (int i = 0; i < g.n; ++i)
            f[i] = std::exp(complex(0.0, g.freq(k1) * g.coord(i)));
    } else {
        for (int i1 = 0; i1 < g.n; ++i1)
            for (int i2 = 0; i2 < g.n; ++i2)
                f[static_cast<std::size_t>(i1) * g.n + i2] =
                    std::exp(complex(0.0, g.freq(k1) * g.coord(i1) + g.freq(k2) * g.coord(i2)));
    }
    return f;
}

inline Field sampled_1d(const GridSpec& g, const std::function<complex(double)>& fn) {
    Field f(g);
    for (int i = 0; i < g.n; ++i) f[i] = fn(g.coord(i));
    return f;
}

}  // namespace hqlab::testdata
