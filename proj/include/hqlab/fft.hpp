// FFT plumbing on top of Eigen's FFT module (kissfft backend).
//
// Spectra are stored as Fourier *coefficients* c_k with f = sum_k c_k e^{i xi_k x},
// i.e. the plain DFT divided by N^dim, in the same row-major layout as fields.
// A fresh FFT object is created per call so there is no shared planner state
// and concurrent calls are safe.

#pragma once

#include <unsupported/Eigen/FFT>

#include "hqlab/field.hpp"

namespace hqlab {

using spectrum_t = std::vector<complex>;

namespace detail {

// one engine per thread; kissfft caches its twiddle tables per size inside
inline Eigen::FFT<double>& fft_engine() {
    thread_local Eigen::FFT<double> engine;
    return engine;
}

inline void fft_1d(std::vector<complex>& data, bool forward) {
    Eigen::FFT<double>& fft = fft_engine();
    std::vector<complex> out(data.size());
    if (forward)
        fft.fwd(out, data);
    else
        fft.inv(out, data);  // includes the 1/N scaling
    data.swap(out);
}

// in-place transform of each axis of a square row-major array
inline void fft_2d(std::vector<complex>& data, int rows, int cols, bool forward) {
    std::vector<complex> buf;
    buf.reserve(std::max(rows, cols));
    // rows (contiguous)
    for (int r = 0; r < rows; ++r) {
        buf.assign(data.begin() + static_cast<std::ptrdiff_t>(r) * cols,
                   data.begin() + static_cast<std::ptrdiff_t>(r + 1) * cols);
        fft_1d(buf, forward);
        std::copy(buf.begin(), buf.end(), data.begin() + static_cast<std::ptrdiff_t>(r) * cols);
    }
    // columns (strided)
    for (int c = 0; c < cols; ++c) {
        buf.resize(rows);
        for (int r = 0; r < rows; ++r) buf[r] = data[static_cast<std::size_t>(r) * cols + c];
        fft_1d(buf, forward);
        for (int r = 0; r < rows; ++r) data[static_cast<std::size_t>(r) * cols + c] = buf[r];
    }
}

}  // namespace detail

// field samples -> Fourier coefficients
inline spectrum_t spectrum(const Field& f) {
    spectrum_t s = f.values;
    if (f.grid.dim == 1) {
        detail::fft_1d(s, true);
        const double inv = 1.0 / f.grid.n;
        for (complex& v : s) v *= inv;
    } else {
        detail::fft_2d(s, f.grid.n, f.grid.n, true);
        const double inv = 1.0 / (static_cast<double>(f.grid.n) * f.grid.n);
        for (complex& v : s) v *= inv;
    }
    return s;
}

// Fourier coefficients -> field samples
inline Field synthesize(const GridSpec& g, spectrum_t coeffs) {
    if (coeffs.size() != g.size())
        throw std::invalid_argument("synthesize: coefficient count does not match grid");
    if (g.dim == 1) {
        // inv() divides by N, so undo the coefficient normalization first
        for (complex& v : coeffs) v *= static_cast<double>(g.n);
        detail::fft_1d(coeffs, false);
    } else {
        const double scale = static_cast<double>(g.n) * g.n;
        for (complex& v : coeffs) v *= scale;
        detail::fft_2d(coeffs, g.n, g.n, false);
    }
    return Field(g, std::move(coeffs));
}

// Frequency vector of the spectrum entry at flat index idx; xi[1] = 0 in 1-D.
inline std::array<double, 2> freq_at(const GridSpec& g, std::size_t idx) {
    if (g.dim == 1) return {g.freq(g.mode(static_cast<int>(idx))), 0.0};
    const int m1 = static_cast<int>(idx) / g.n;
    const int m2 = static_cast<int>(idx) % g.n;
    return {g.freq(g.mode(m1)), g.freq(g.mode(m2))};
}

// Largest |k|_inf over spectral entries with |c_k| > rel_tol * max|c|.
inline int spectral_support(const Field& f, double rel_tol = 1e-13) {
    spectrum_t s = spectrum(f);
    double cmax = 0.0;
    for (const complex& v : s) cmax = std::max(cmax, std::abs(v));
    if (cmax == 0.0) return 0;
    int support = 0;
    const int n = f.grid.n;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (std::abs(s[i]) <= rel_tol * cmax) continue;
        int k;
        if (f.grid.dim == 1) {
            k = std::abs(f.grid.mode(static_cast<int>(i)));
        } else {
            const int k1 = std::abs(f.grid.mode(static_cast<int>(i) / n));
            const int k2 = std::abs(f.grid.mode(static_cast<int>(i) % n));
            k = std::max(k1, k2);
        }
        support = std::max(support, k);
    }
    return support;
}

}  // namespace hqlab
