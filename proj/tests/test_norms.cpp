#include <catch2/catch_amalgamated.hpp>

#include "hqlab/norms.hpp"
#include "hqlab/quantities.hpp"
#include "support/oracles.hpp"
#include "support/testdata.hpp"

using namespace hqlab;

namespace {

Field dyadic_atom(const GridSpec& g) {
    Field f(g);
    for (int i = 0; i < g.n; ++i) {
        const double x = g.coord(i);
        f[i] = (x >= 0.0 && x < 1.0) ? 1.0 : (x >= 1.0 && x < 2.0) ? -1.0 : 0.0;
    }
    return f;
}

}  // namespace

TEST_CASE("lp_norm basics") {
    GridSpec g(1, 64, 5.0);
    Field one(g);
    for (complex& v : one.values) v = 1.0;

    for (double p : {1.0, 2.0, 4.0})
        CHECK(lp_norm(one, p) == Catch::Approx(std::pow(g.length, 1.0 / p)).epsilon(1e-12));

    CHECK(lp_norm(Field(g), 3.0) == 0.0);

    Field mode = testdata::pure_mode(g, 5);  // |f| == 1
    CHECK(lp_norm(mode, 3.0) == Catch::Approx(std::pow(g.length, 1.0 / 3.0)).epsilon(1e-12));

    CHECK_THROWS_AS(lp_norm(one, 0.5), std::invalid_argument);
}

TEST_CASE("h1_norm flags nonzero-mean data") {
    GridSpec g(1, 64, 8.0);
    Field one(g);
    for (complex& v : one.values) v = 1.0;
    H1Result r = h1_norm(one, ScaleLadder::default_for(g));
    CHECK(r.divergent);
}

TEST_CASE("h1_norm of the dyadic atom matches the direct maximal-sum oracle") {
    GridSpec g(1, 256, 16.0);
    Field atom = dyadic_atom(g);
    ScaleLadder ladder = ScaleLadder::default_for(g);
    H1Result r = h1_norm(atom, ladder);
    REQUIRE_FALSE(r.divergent);
    CHECK(r.value > 0.0);

    // regression baseline, frozen from the double-resolution direct-sum oracle
    const double baseline = 2.604722996323;
    CHECK(r.value == Catch::Approx(baseline).epsilon(2e-2));

    const double oracle = oracles::h1_direct_1d(atom, ladder.scales(), 2);
    CHECK(r.value == Catch::Approx(oracle).epsilon(2e-2));
}

TEST_CASE("h1_norm of planar Jacobian images stays within the corpus band") {
    GridSpec g(2, 32, 8.0);
    QuantityDescriptor d = QuantityDescriptor::planar_jacobian(g);
    ScaleLadder ladder = ScaleLadder::default_for(g);
    // frozen range over the fixed 20-sample corpus, +/- 5% slack
    const double lo = 0.533009233 * 0.95, hi = 0.721975730 * 1.05;
    for (int s = 0; s < 20; ++s) {
        Field om = testdata::band_limited(g, 9, 1000 + s);
        Field q = eval_quantity(d, om);
        H1Result r = h1_norm(q, ladder);
        REQUIRE_FALSE(r.divergent);
        const double ratio = r.value / (l2_norm(om) * l2_norm(om));
        CHECK(ratio > lo);
        CHECK(ratio < hi);
    }
}

TEST_CASE("h1_norm ladder monotonicity and shift invariance") {
    GridSpec g(1, 256, 16.0);
    Field atom = dyadic_atom(g);

    SECTION("adding levels never decreases the value") {
        double prev = 0.0;
        for (int levels = 1; levels <= 7; ++levels) {
            const double v = h1_norm(atom, ScaleLadder(g.dx(), levels)).value;
            CHECK(v >= prev - 1e-14);
            prev = v;
        }
    }

    SECTION("grid-multiple translation leaves the value unchanged") {
        ScaleLadder ladder = ScaleLadder::default_for(g);
        const double base = h1_norm(atom, ladder).value;
        for (int shift : {1, 17, 100}) {
            Field moved(g);
            for (int i = 0; i < g.n; ++i) moved[(i + shift) % g.n] = atom[i];
            CHECK(std::abs(h1_norm(moved, ladder).value - base) < 1e-12);
        }
    }

    SECTION("coarsest scale above L/4 is rejected") {
        CHECK_THROWS_AS(h1_norm(atom, ScaleLadder(g.length, 1)), std::invalid_argument);
    }
}

TEST_CASE("bmo_norm basics") {
    GridSpec g(1, 64, 2.0);

    SECTION("constants have zero oscillation") {
        Field c(g);
        for (complex& v : c.values) v = complex(3.0, -1.0);
        CHECK(bmo_norm(c, 6) == 0.0);
    }

    SECTION("indicator of the left half-period") {
        Field ind(g);
        for (int i = 0; i < g.n; ++i) ind[i] = g.coord(i) < 0.0 ? 1.0 : 0.0;
        const double v = bmo_norm(ind, 6);
        CHECK(v > 0.0);
        CHECK(v <= 1.0);  // |b - b_Q| <= 1 forces this
    }

    SECTION("max_depth beyond log2 N is rejected") {
        CHECK_THROWS_AS(bmo_norm(Field(g), 7), std::invalid_argument);
    }
}

TEST_CASE("bmo_norm of log|sin| is stable under refinement") {
    auto sample = [](int n) {
        GridSpec g(1, n, 16.0);
        Field b(g);
        for (int i = 0; i < n; ++i) {
            const double x = g.coord(i) + 0.5 * g.dx();  // dodge the zeros of sin
            b[i] = std::log(std::abs(std::sin(pi * x / g.length)));
        }
        return bmo_norm(b, static_cast<int>(std::lround(std::log2(n))));
    };
    const double coarse = sample(256);
    const double fine = sample(512);
    CHECK(std::abs(fine - coarse) / coarse < 0.02);
}

TEST_CASE("bmo_norm homogeneity and constant shift") {
    GridSpec g(2, 32, 4.0);
    Field b = real_part(testdata::band_limited(g, 9, 77, true));
    const double base = bmo_norm(b, 5);

    SECTION("adding a constant changes nothing") {
        Field shifted = b;
        for (complex& v : shifted.values) v += 4.25;
        CHECK(bmo_norm(shifted, 5) == Catch::Approx(base).epsilon(1e-13));
    }

    SECTION("absolute homogeneity") {
        for (double lam : {-2.5, 0.0, 3.0}) {
            CHECK(bmo_norm(lam * b, 5) == Catch::Approx(std::abs(lam) * base).margin(1e-13));
        }
    }
}
