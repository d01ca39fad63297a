// Constructed problem instances.
//
// A "certified" pair (b, omega) has T_b with top eigenvalue exactly 1 and
// omega the corresponding H-normalized eigenvector, so omega is a minimum
// norm solution of Q omega = f with energy 1 and b its multiplier.  The
// normalization uses a dense eigensolve, so grids must stay within the dense
// capacity.

#pragma once

#include "hqlab/operators.hpp"

namespace hqlab {

struct CertifiedInstance {
    QuantityDescriptor descriptor;
    Field b;        // multiplier, top eigenvalue of T_b equal to 1
    Field omega;    // unit-norm fixed vector of T_b
    Field data;     // f = Q omega
    double top_gap = 0.0;  // distance from the top eigenvalue to the rest
};

// random smooth real symbol field
inline Field random_symbol_field(const GridSpec& g, int kmax, std::uint64_t seed) {
    Rng rng(seed);
    spectrum_t coeffs(g.size(), complex(0.0, 0.0));
    const double sigma = std::max(1.0, 0.5 * kmax);
    auto set_mode = [&](int k1, int k2, complex c) {
        const std::size_t idx =
            g.dim == 1 ? static_cast<std::size_t>(g.index_of_mode(k1))
                       : static_cast<std::size_t>(g.index_of_mode(k1)) * g.n + g.index_of_mode(k2);
        coeffs[idx] = c;
    };
    if (g.dim == 1) {
        for (int k = 1; k <= kmax; ++k) {
            const complex c = rng.normal_complex() * std::exp(-k * k / (2.0 * sigma * sigma));
            set_mode(k, 0, c);
            set_mode(-k, 0, std::conj(c));
        }
    } else {
        for (int k1 = -kmax; k1 <= kmax; ++k1)
            for (int k2 = -kmax; k2 <= kmax; ++k2) {
                if (k1 < 0 || (k1 == 0 && k2 <= 0)) continue;
                const complex c = rng.normal_complex() *
                                  std::exp(-(k1 * k1 + k2 * k2) / (2.0 * sigma * sigma));
                set_mode(k1, k2, c);
                set_mode(-k1, -k2, std::conj(c));
            }
    }
    return synthesize(g, std::move(coeffs));
}

inline CertifiedInstance make_certified_instance(const QuantityDescriptor& d,
                                                 std::uint64_t seed) {
    Field b0 = random_symbol_field(d.grid, d.grid.n / 4, seed);
    OperatorHandle h0 = OperatorHandle::for_quantity(d, b0);

    MatrixXd m = assemble_matrix(h0);
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (m + m.transpose()));
    const int dim = static_cast<int>(es.eigenvalues().size());
    const double top = es.eigenvalues()[dim - 1];
    if (!(top > 0.0))
        throw std::runtime_error("make_certified_instance: top eigenvalue not positive");

    CertifiedInstance inst;
    inst.descriptor = d;
    inst.b = (1.0 / top) * b0;
    OperatorHandle h = OperatorHandle::for_quantity(d, inst.b);
    OperatorState omega = unrealify(h, es.eigenvectors().col(dim - 1));
    const double n = state_norm(omega);
    inst.omega = (1.0 / n) * omega.parts[0];
    inst.data = eval_quantity(d, inst.omega);
    inst.top_gap = (top - es.eigenvalues()[dim - 2]) / top;
    return inst;
}

}  // namespace hqlab
