// Binary field and matrix formats.
//
// HQF1 field: magic "HQF1", dim (u32 LE), N (u32 LE), L (f64 LE), then
// N^dim interleaved (re, im) f64 LE values in row-major order.
// HQM1 matrix: magic "HQM1", rows (u32 LE), cols (u32 LE), then rows*cols
// f64 LE entries in row-major order.

#pragma once

#include <cstring>
#include <fstream>

#include <Eigen/Dense>

#include "hqlab/field.hpp"

namespace hqlab {

namespace detail {

inline void write_bytes(std::ostream& os, const void* p, std::size_t n) {
    os.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
}

inline void read_bytes(std::istream& is, void* p, std::size_t n) {
    is.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
    if (!is) throw std::runtime_error("binary read: truncated stream");
}

inline void write_u32(std::ostream& os, std::uint32_t v) { write_bytes(os, &v, 4); }
inline void write_f64(std::ostream& os, double v) { write_bytes(os, &v, 8); }

inline std::uint32_t read_u32(std::istream& is) {
    std::uint32_t v;
    read_bytes(is, &v, 4);
    return v;
}
inline double read_f64(std::istream& is) {
    double v;
    read_bytes(is, &v, 8);
    return v;
}

}  // namespace detail

inline void write_field(std::ostream& os, const Field& f) {
    detail::write_bytes(os, "HQF1", 4);
    detail::write_u32(os, static_cast<std::uint32_t>(f.grid.dim));
    detail::write_u32(os, static_cast<std::uint32_t>(f.grid.n));
    detail::write_f64(os, f.grid.length);
    for (const complex& v : f.values) {
        detail::write_f64(os, v.real());
        detail::write_f64(os, v.imag());
    }
}

inline void write_field(const std::string& path, const Field& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_field: cannot open " + path);
    write_field(os, f);
}

inline Field read_field(std::istream& is) {
    char magic[4];
    detail::read_bytes(is, magic, 4);
    if (std::memcmp(magic, "HQF1", 4) != 0)
        throw std::runtime_error("read_field: bad magic (expected HQF1)");
    const int dim = static_cast<int>(detail::read_u32(is));
    const int n = static_cast<int>(detail::read_u32(is));
    const double length = detail::read_f64(is);
    GridSpec g(dim, n, length);
    Field f(g);
    for (complex& v : f.values) {
        const double re = detail::read_f64(is);
        const double im = detail::read_f64(is);
        v = complex(re, im);
    }
    return f;
}

inline Field read_field(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_field: cannot open " + path);
    return read_field(is);
}

inline void write_matrix(const std::string& path, const Eigen::MatrixXd& m) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_matrix: cannot open " + path);
    detail::write_bytes(os, "HQM1", 4);
    detail::write_u32(os, static_cast<std::uint32_t>(m.rows()));
    detail::write_u32(os, static_cast<std::uint32_t>(m.cols()));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) detail::write_f64(os, m(r, c));
}

inline Eigen::MatrixXd read_matrix(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_matrix: cannot open " + path);
    char magic[4];
    detail::read_bytes(is, magic, 4);
    if (std::memcmp(magic, "HQM1", 4) != 0)
        throw std::runtime_error("read_matrix: bad magic (expected HQM1)");
    const auto rows = detail::read_u32(is);
    const auto cols = detail::read_u32(is);
    Eigen::MatrixXd m(rows, cols);
    for (std::uint32_t r = 0; r < rows; ++r)
        for (std::uint32_t c = 0; c < cols; ++c) m(r, c) = detail::read_f64(is);
    return m;
}

}  // namespace hqlab
