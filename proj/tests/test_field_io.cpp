#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>

#include "hqlab/fft.hpp"
#include "hqlab/io.hpp"
#include "support/testdata.hpp"

using namespace hqlab;

TEST_CASE("GridSpec validates its invariants") {
    CHECK_THROWS_AS(GridSpec(3, 16, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec(1, 12, 1.0), std::invalid_argument);  // not a power of two
    CHECK_THROWS_AS(GridSpec(1, 4, 1.0), std::invalid_argument);   // below minimum
    CHECK_THROWS_AS(GridSpec(1, 16, -1.0), std::invalid_argument);
    GridSpec g(2, 16, 5.0);
    CHECK(g.size() == 256);
    CHECK(g.mode(0) == 0);
    CHECK(g.mode(8) == -8);
    CHECK(g.mode(15) == -1);
    CHECK(g.index_of_mode(-8) == 8);
    CHECK(g.freq(1) == Catch::Approx(2.0 * pi / 5.0));
}

TEST_CASE("spectrum/synthesize round trip and Parseval") {
    for (int dim : {1, 2}) {
        GridSpec g(dim, 32, 7.5);
        Field f = testdata::band_limited(g, g.n / 2 - 1, 42 + dim);
        spectrum_t s = spectrum(f);
        Field back = synthesize(g, s);
        CHECK(max_abs_diff(f, back) < 1e-12 * max_abs(f));

        // grid-side energy equals coefficient-side energy
        double grid_side = 0.0;
        for (const complex& v : f.values) grid_side += std::norm(v);
        grid_side *= g.cell_volume();
        double coeff_side = 0.0;
        for (const complex& v : s) coeff_side += std::norm(v);
        coeff_side *= std::pow(g.length, dim);
        CHECK(grid_side == Catch::Approx(coeff_side).epsilon(1e-12));
    }
}

TEST_CASE("pure modes land on the expected lattice entry") {
    GridSpec g(1, 16, 4.0);
    Field f = testdata::pure_mode(g, 3);
    spectrum_t s = spectrum(f);
    for (int i = 0; i < g.n; ++i) {
        const double expected = g.mode(i) == 3 ? 1.0 : 0.0;
        // the synthesis grid is offset by -L/2, which shows up as a phase
        CHECK(std::abs(s[i]) == Catch::Approx(expected).margin(1e-12));
    }
    CHECK(spectral_support(f) == 3);
}

TEST_CASE("field binary format round trips bit-exact") {
    GridSpec g(2, 16, 3.25);
    Field f = testdata::band_limited(g, 5, 7);
    const std::string path = std::filesystem::temp_directory_path() / "hqlab_roundtrip.hqf";
    write_field(path, f);
    Field back = read_field(path);
    REQUIRE(back.grid == f.grid);
    for (std::size_t i = 0; i < f.size(); ++i) {
        CHECK(back[i].real() == f[i].real());
        CHECK(back[i].imag() == f[i].imag());
    }
    std::remove(path.c_str());
}

TEST_CASE("matrix binary format round trips") {
    Eigen::MatrixXd m(3, 2);
    m << 1.5, -2.0, 0.25, 1e-9, -7.0, 3.0;
    const std::string path = std::filesystem::temp_directory_path() / "hqlab_roundtrip.hqm";
    write_matrix(path, m);
    Eigen::MatrixXd back = read_matrix(path);
    REQUIRE(back.rows() == 3);
    REQUIRE(back.cols() == 2);
    CHECK((back - m).cwiseAbs().maxCoeff() == 0.0);
    std::remove(path.c_str());
}

TEST_CASE("corrupt magic is rejected") {
    const std::string path = std::filesystem::temp_directory_path() / "hqlab_badmagic.hqf";
    {
        std::ofstream os(path, std::ios::binary);
        os << "NOPE";
    }
    CHECK_THROWS_AS(read_field(path), std::runtime_error);
    std::remove(path.c_str());
}
