// Periodic-grid fields.
//
// The computational domain is the torus [-L/2, L/2)^dim sampled on N points
// per axis (N a power of two, N >= 8).  Frequencies live on the lattice
// xi_k = 2*pi*k/L with k in {-N/2, ..., N/2-1} per axis; DFT index m maps to
// k = m for m < N/2 and k = m - N otherwise.  Fields store complex samples
// in row-major order: values[i1*N + i2] for dim 2, values[i] for dim 1.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace hqlab {

using complex = std::complex<double>;

constexpr double pi = 3.14159265358979323846;

struct GridSpec {
    int dim = 1;             // 1 or 2
    int n = 8;               // points per axis, power of two
    double length = 2.0 * pi;

    GridSpec() = default;
    GridSpec(int dim_, int n_, double length_) : dim(dim_), n(n_), length(length_) {
        if (dim != 1 && dim != 2)
            throw std::invalid_argument("GridSpec: dim must be 1 or 2");
        if (n < 8 || (n & (n - 1)) != 0)
            throw std::invalid_argument("GridSpec: n must be a power of two >= 8");
        if (!(length > 0.0) || !std::isfinite(length))
            throw std::invalid_argument("GridSpec: period must be positive");
    }

    std::size_t size() const {
        std::size_t s = static_cast<std::size_t>(n);
        return dim == 1 ? s : s * s;
    }
    double dx() const { return length / n; }
    double cell_volume() const { return dim == 1 ? dx() : dx() * dx(); }

    // sample coordinate along one axis
    double coord(int i) const { return -0.5 * length + i * dx(); }

    // DFT index -> signed mode number
    int mode(int m) const { return m < n / 2 ? m : m - n; }
    // signed mode number -> DFT index (mode must lie in [-n/2, n/2))
    int index_of_mode(int k) const { return k >= 0 ? k : k + n; }
    // angular frequency of a signed mode
    double freq(int k) const { return 2.0 * pi * k / length; }

    bool operator==(const GridSpec& o) const {
        return dim == o.dim && n == o.n && length == o.length;
    }
    bool operator!=(const GridSpec& o) const { return !(*this == o); }
};

struct Field {
    GridSpec grid;
    std::vector<complex> values;

    Field() = default;
    explicit Field(const GridSpec& g) : grid(g), values(g.size(), complex(0.0, 0.0)) {}
    Field(const GridSpec& g, std::vector<complex> v) : grid(g), values(std::move(v)) {
        if (values.size() != g.size())
            throw std::invalid_argument("Field: value count does not match grid");
    }

    std::size_t size() const { return values.size(); }
    complex& operator[](std::size_t i) { return values[i]; }
    const complex& operator[](std::size_t i) const { return values[i]; }

    bool finite() const {
        for (const complex& v : values)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        return true;
    }
};

inline void require_same_grid(const Field& a, const Field& b, const char* where) {
    if (a.grid != b.grid)
        throw std::invalid_argument(std::string(where) + ": grid mismatch");
}

inline void require_finite(const Field& f, const char* where) {
    if (!f.finite())
        throw std::invalid_argument(std::string(where) + ": non-finite input field");
}

// ---- arithmetic -----------------------------------------------------------

inline Field operator+(const Field& a, const Field& b) {
    require_same_grid(a, b, "Field::operator+");
    Field r(a.grid);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Field operator-(const Field& a, const Field& b) {
    require_same_grid(a, b, "Field::operator-");
    Field r(a.grid);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Field operator*(complex s, const Field& a) {
    Field r(a.grid);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

inline Field operator*(double s, const Field& a) { return complex(s, 0.0) * a; }

inline Field conjugate(const Field& a) {
    Field r(a.grid);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::conj(a[i]);
    return r;
}

inline Field real_part(const Field& a) {
    Field r(a.grid);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = complex(a[i].real(), 0.0);
    return r;
}

inline Field imag_part(const Field& a) {
    Field r(a.grid);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = complex(a[i].imag(), 0.0);
    return r;
}

// ---- integrals and norms --------------------------------------------------

// integral of f over the torus
inline complex integral(const Field& f) {
    complex s(0.0, 0.0);
    for (const complex& v : f.values) s += v;
    return s * f.grid.cell_volume();
}

inline complex mean(const Field& f) {
    return integral(f) / std::pow(f.grid.length, f.grid.dim);
}

// complex L2 inner product  <f,g> = sum f conj(g) dV
inline complex inner(const Field& f, const Field& g) {
    require_same_grid(f, g, "inner");
    complex s(0.0, 0.0);
    for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * std::conj(g[i]);
    return s * f.grid.cell_volume();
}

// real inner product  Re sum f conj(g) dV; H is treated as a real Hilbert space
inline double inner_real(const Field& f, const Field& g) { return inner(f, g).real(); }

inline double l2_norm(const Field& f) {
    double s = 0.0;
    for (const complex& v : f.values) s += std::norm(v);
    return std::sqrt(s * f.grid.cell_volume());
}

inline double l1_norm(const Field& f) {
    double s = 0.0;
    for (const complex& v : f.values) s += std::abs(v);
    return s * f.grid.cell_volume();
}

inline double max_abs(const Field& f) {
    double m = 0.0;
    for (const complex& v : f.values) m = std::max(m, std::abs(v));
    return m;
}

inline double max_abs_diff(const Field& a, const Field& b) {
    require_same_grid(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double rel_l2_error(const Field& got, const Field& want) {
    double d = l2_norm(got - want);
    double w = l2_norm(want);
    return w > 0.0 ? d / w : d;
}

// |mean| relative to the rms sample value, used for mean-zero preconditions
inline double relative_mean(const Field& f) {
    double rms = 0.0;
    for (const complex& v : f.values) rms += std::norm(v);
    rms = std::sqrt(rms / f.size());
    if (rms == 0.0) return 0.0;
    complex m(0.0, 0.0);
    for (const complex& v : f.values) m += v;
    return std::abs(m) / (static_cast<double>(f.size()) * rms);
}

inline void require_mean_zero(const Field& f, double tol, const char* where) {
    if (relative_mean(f) > tol)
        throw std::invalid_argument(std::string(where) + ": field has nonzero mean");
}

}  // namespace hqlab
