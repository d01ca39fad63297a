// Desk-scale estimators for Lp, the maximal-function H^1 norm, and dyadic BMO.
//
// The H^1 estimator replaces sup over all scales by a finite dyadic ladder of
// Gaussian mollifications computed spectrally.  It is meant for relative
// comparisons and regression bounds, never for absolute constants.  The BMO
// estimator takes the supremum over dyadic cubes only.

#pragma once

#include "hqlab/fft.hpp"

namespace hqlab {

struct ScaleLadder {
    double t_min = 0.0;
    int levels = 0;
    std::string mollifier = "gaussian";

    ScaleLadder(double t_min_, int levels_, std::string mollifier_ = "gaussian")
        : t_min(t_min_), levels(levels_), mollifier(std::move(mollifier_)) {
        if (!(t_min > 0.0)) throw std::invalid_argument("ScaleLadder: t_min must be positive");
        if (levels < 1) throw std::invalid_argument("ScaleLadder: needs at least one level");
        if (mollifier != "gaussian")
            throw std::invalid_argument("ScaleLadder: unknown mollifier " + mollifier);
    }

    std::vector<double> scales() const {
        std::vector<double> t(levels);
        for (int j = 0; j < levels; ++j) t[j] = t_min * std::pow(2.0, j);
        return t;
    }

    // finest scale = grid spacing, coarsest <= L/4
    static ScaleLadder default_for(const GridSpec& g) {
        const double t0 = g.dx();
        int levels = 1;
        while (t0 * std::pow(2.0, levels) <= 0.25 * g.length) ++levels;
        return ScaleLadder(t0, levels);
    }
};

inline double lp_norm(const Field& f, double p) {
    require_finite(f, "lp_norm");
    if (!(p >= 1.0) || !std::isfinite(p))
        throw std::invalid_argument("lp_norm: p must be finite and >= 1");
    double s = 0.0;
    for (const complex& v : f.values) s += std::pow(std::abs(v), p);
    return std::pow(s * f.grid.cell_volume(), 1.0 / p);
}

namespace detail {

// f * chi_t with the unit-mass Gaussian bump, spectral evaluation, DC kept
inline Field mollify(const Field& f, double t) {
    spectrum_t s = spectrum(f);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto xi = freq_at(f.grid, i);
        const double x2 = xi[0] * xi[0] + xi[1] * xi[1];
        s[i] *= std::exp(-0.5 * t * t * x2);
    }
    return synthesize(f.grid, std::move(s));
}

}  // namespace detail

struct H1Result {
    double value = 0.0;
    bool divergent = false;  // set when the nonzero mean obstructs H^1 membership
};

inline H1Result h1_norm(const Field& f, const ScaleLadder& ladder) {
    require_finite(f, "h1_norm");
    const std::vector<double> scales = ladder.scales();
    if (scales.back() > 0.25 * f.grid.length + 1e-12 * f.grid.length)
        throw std::invalid_argument("h1_norm: coarsest ladder scale exceeds L/4");

    std::vector<double> maximal(f.size(), 0.0);
    for (double t : scales) {
        Field conv = detail::mollify(f, t);
        for (std::size_t i = 0; i < f.size(); ++i)
            maximal[i] = std::max(maximal[i], std::abs(conv[i]));
    }
    double total = 0.0;
    for (double v : maximal) total += v;

    H1Result r;
    r.value = total * f.grid.cell_volume();
    const double nrm = l2_norm(f);
    r.divergent = nrm > 0.0 && std::abs(integral(f)) / nrm > 1e-8;
    return r;
}

inline double bmo_norm(const Field& b, int max_depth) {
    require_finite(b, "bmo_norm");
    const GridSpec& g = b.grid;
    const int log2n = static_cast<int>(std::lround(std::log2(g.n)));
    if (max_depth < 0 || max_depth > log2n)
        throw std::invalid_argument("bmo_norm: max_depth must lie in [0, log2 N]");

    double best = 0.0;
    for (int depth = 0; depth <= max_depth; ++depth) {
        const int cubes = 1 << depth;      // per axis
        const int side = g.n / cubes;      // grid points per cube side
        if (g.dim == 1) {
            for (int c = 0; c < cubes; ++c) {
                complex avg(0.0, 0.0);
                for (int i = 0; i < side; ++i) avg += b[c * side + i];
                avg /= static_cast<double>(side);
                double osc = 0.0;
                for (int i = 0; i < side; ++i) osc += std::abs(b[c * side + i] - avg);
                best = std::max(best, osc / side);
            }
        } else {
            for (int c1 = 0; c1 < cubes; ++c1)
                for (int c2 = 0; c2 < cubes; ++c2) {
                    complex avg(0.0, 0.0);
                    for (int i1 = 0; i1 < side; ++i1)
                        for (int i2 = 0; i2 < side; ++i2)
                            avg += b[static_cast<std::size_t>(c1 * side + i1) * g.n +
                                     (c2 * side + i2)];
                    avg /= static_cast<double>(side) * side;
                    double osc = 0.0;
                    for (int i1 = 0; i1 < side; ++i1)
                        for (int i2 = 0; i2 < side; ++i2)
                            osc += std::abs(b[static_cast<std::size_t>(c1 * side + i1) * g.n +
                                              (c2 * side + i2)] -
                                            avg);
                    best = std::max(best, osc / (static_cast<double>(side) * side));
                }
        }
    }
    return best;
}

}  // namespace hqlab
