// Independent oracles used to pin expected values.  Everything here computes
// by a route distinct from the implementation it checks: explicit mode loops,
// direct spatial sums, finite differences, dense eigensolves.

#pragma once

#include <map>

#include <Eigen/Dense>

#include "hqlab/fft.hpp"

namespace hqlab::oracles {

// spectral partial derivative along axis (1-based), explicit mode loop
inline Field spectral_derivative(const Field& f, int axis) {
    spectrum_t s = spectrum(f);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto xi = freq_at(f.grid, i);
        s[i] *= complex(0.0, xi[axis - 1]);
    }
    return synthesize(f.grid, std::move(s));
}

// Wirtinger derivatives of a complex 2-D field u
inline Field wirtinger_z(const Field& u) {
    Field ux = spectral_derivative(u, 1);
    Field uy = spectral_derivative(u, 2);
    return 0.5 * (ux - complex(0.0, 1.0) * uy);
}

inline Field wirtinger_zbar(const Field& u) {
    Field ux = spectral_derivative(u, 1);
    Field uy = spectral_derivative(u, 2);
    return 0.5 * (ux + complex(0.0, 1.0) * uy);
}

// det Du for complex u = u1 + i*u2 via spectral derivatives
inline Field jacobian_determinant(const Field& u) {
    Field u1 = real_part(u), u2 = imag_part(u);
    Field a = spectral_derivative(u1, 1), b = spectral_derivative(u1, 2);
    Field c = spectral_derivative(u2, 1), d = spectral_derivative(u2, 2);
    Field out(u.grid);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = a[i] * d[i] - b[i] * c[i];
    return out;
}

// Exact product of two band-limited fields by symbolic mode convolution;
// modes falling outside the representable lattice are dropped.
inline Field mode_convolution_product(const Field& f, const Field& g) {
    const GridSpec& grid = f.grid;
    spectrum_t fs = spectrum(f), gs = spectrum(g);
    struct ModeEntry {
        int k1, k2;
        complex c;
    };
    auto gather = [&](const spectrum_t& s) {
        std::vector<ModeEntry> modes;
        double cmax = 0.0;
        for (const complex& v : s) cmax = std::max(cmax, std::abs(v));
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (std::abs(s[i]) <= 1e-15 * cmax) continue;
            int k1, k2 = 0;
            if (grid.dim == 1) {
                k1 = grid.mode(static_cast<int>(i));
            } else {
                k1 = grid.mode(static_cast<int>(i) / grid.n);
                k2 = grid.mode(static_cast<int>(i) % grid.n);
            }
            modes.push_back({k1, k2, s[i]});
        }
        return modes;
    };
    const auto fm = gather(fs), gm = gather(gs);
    std::map<std::pair<int, int>, complex> acc;
    for (const auto& a : fm)
        for (const auto& b : gm) {
            const int k1 = a.k1 + b.k1, k2 = a.k2 + b.k2;
            if (std::abs(k1) >= grid.n / 2) continue;
            if (std::abs(k2) >= grid.n / 2) continue;
            acc[{k1, k2}] += a.c * b.c;
        }
    spectrum_t out(grid.size(), complex(0.0, 0.0));
    for (const auto& [k, v] : acc) {
        const std::size_t idx =
            grid.dim == 1
                ? static_cast<std::size_t>(grid.index_of_mode(k.first))
                : static_cast<std::size_t>(grid.index_of_mode(k.first)) * grid.n +
                      grid.index_of_mode(k.second);
        out[idx] = v;
    }
    return synthesize(grid, std::move(out));
}

// Direct-sum maximal function oracle: |f * chi_t| at every grid point by
// explicit spatial convolution with the periodized Gaussian bump, evaluated
// on a grid refined by the given factor, then the L1 norm of the max.
inline double h1_direct_1d(const Field& f, const std::vector<double>& scales,
                           int refine = 2) {
    const GridSpec& g = f.grid;
    const int n_fine = g.n * refine;
    const double dx_fine = g.length / n_fine;

    // upsample f spectrally onto the fine grid
    GridSpec gf(1, n_fine, g.length);
    spectrum_t coarse = spectrum(f);
    spectrum_t fine(gf.size(), complex(0.0, 0.0));
    for (int i = 0; i < g.n; ++i) {
        const int k = g.mode(i);
        fine[gf.index_of_mode(k)] = coarse[i];
    }
    Field ff = synthesize(gf, std::move(fine));

    // periodized Gaussian chi_t(x) = (1/(sqrt(2 pi) t)) exp(-x^2/(2 t^2))
    auto kernel = [&](double t, double x) {
        double s = 0.0;
        for (int img = -6; img <= 6; ++img) {
            const double y = x + img * g.length;
            s += std::exp(-y * y / (2.0 * t * t));
        }
        return s / (std::sqrt(2.0 * pi) * t);
    };

    double total = 0.0;
    for (int i = 0; i < n_fine; ++i) {
        double best = 0.0;
        for (double t : scales) {
            complex conv(0.0, 0.0);
            for (int j = 0; j < n_fine; ++j) {
                double d = gf.coord(i) - gf.coord(j);
                d -= g.length * std::round(d / g.length);
                conv += ff[j] * kernel(t, d);
            }
            best = std::max(best, std::abs(conv * dx_fine));
        }
        total += best * dx_fine;
    }
    return total;
}

// top singular value by dense SVD of an explicitly assembled matrix
inline double dense_operator_norm(const Eigen::MatrixXd& m) {
    return m.jacobiSvd().singularValues()(0);
}

inline double dense_top_eigenvalue(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()));
    return es.eigenvalues().maxCoeff();
}

// winding number of fn around a rectangle, fixed fine quadrature
inline int winding_quadrature(const std::function<complex(complex)>& fn, complex lo,
                              complex hi, int samples_per_edge = 4000) {
    std::vector<complex> corners = {lo, complex(hi.real(), lo.imag()), hi,
                                    complex(lo.real(), hi.imag()), lo};
    double total = 0.0;
    complex prev = fn(lo);
    for (int e = 0; e < 4; ++e) {
        for (int i = 1; i <= samples_per_edge; ++i) {
            const double t = static_cast<double>(i) / samples_per_edge;
            const complex z = corners[e] + t * (corners[e + 1] - corners[e]);
            const complex w = fn(z);
            total += std::arg(w / prev);
            prev = w;
        }
    }
    return static_cast<int>(std::lround(total / (2.0 * pi)));
}

}  // namespace hqlab::oracles
