#include <catch2/catch_amalgamated.hpp>

#include "hqlab/multiplier.hpp"
#include "support/oracles.hpp"
#include "support/testdata.hpp"

using namespace hqlab;

TEST_CASE("hilbert maps cos to sin") {
    GridSpec g(1, 64, 5.0);
    Field f(g), want(g);
    for (int i = 0; i < g.n; ++i) {
        f[i] = std::cos(2.0 * pi * g.coord(i) / g.length);
        want[i] = std::sin(2.0 * pi * g.coord(i) / g.length);
    }
    Field got = apply_multiplier(f, MultiplierSymbol::hilbert());
    CHECK(max_abs_diff(got, want) < 1e-12);
}

TEST_CASE("beurling on a single mode multiplies by conj(zeta)/zeta") {
    GridSpec g(2, 16, 4.0);
    const int k1 = 2, k2 = -3;
    Field f = testdata::pure_mode(g, k1, k2);
    const complex zeta(g.freq(k1), g.freq(k2));
    Field want = (std::conj(zeta) / zeta) * f;
    Field got = apply_multiplier(f, MultiplierSymbol::beurling());
    CHECK(max_abs_diff(got, want) < 1e-12);
}

TEST_CASE("beurling intertwines the Wirtinger derivatives: S u_zbar = u_z") {
    GridSpec g(2, 32, 6.0);
    Field u = testdata::band_limited(g, 9, 11);
    Field w = oracles::wirtinger_zbar(u);
    Field want = oracles::wirtinger_z(u);
    Field got = apply_multiplier(w, MultiplierSymbol::beurling());
    CHECK(rel_l2_error(got, want) < 1e-10);
}

TEST_CASE("apply_multiplier rejects non-finite input") {
    GridSpec g(1, 16, 1.0);
    Field f(g);
    f[3] = complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
    CHECK_THROWS_AS(apply_multiplier(f, MultiplierSymbol::hilbert()), std::invalid_argument);
}

TEST_CASE("cauchy transform inverts d/dzbar") {
    GridSpec g(2, 32, 6.0);

    SECTION("single mode") {
        const int k1 = 1, k2 = 2;
        Field w = testdata::pure_mode(g, k1, k2);
        const complex zeta(g.freq(k1), g.freq(k2));
        Field want = (2.0 / (complex(0.0, 1.0) * zeta)) * w;
        Field got = cauchy_transform(w);
        CHECK(max_abs_diff(got, want) < 1e-12);
    }

    SECTION("zero maps to zero") {
        Field w(g);
        Field got = cauchy_transform(w);
        CHECK(max_abs(got) == 0.0);
    }

    SECTION("random band-limited mean-zero data round trips") {
        Field w = testdata::band_limited(g, 9, 23);
        Field u = cauchy_transform(w);
        Field back = oracles::wirtinger_zbar(u);
        CHECK(rel_l2_error(back, w) < 1e-10);
    }

    SECTION("nonzero mean is rejected") {
        Field w = testdata::band_limited(g, 5, 3);
        for (complex& v : w.values) v += 0.5;
        CHECK_THROWS_AS(cauchy_transform(w), std::invalid_argument);
    }
}

TEST_CASE("dealiased product") {
    GridSpec g(1, 32, 3.0);

    SECTION("squaring a representable mode") {
        Field f = testdata::pure_mode(g, 4);  // |k| <= N/3 and 2k representable
        Field want = testdata::pure_mode(g, 8);
        Field got = dealiased_product(f, f);
        CHECK(max_abs_diff(got, want) < 1e-12);
    }

    SECTION("zero factor annihilates") {
        Field f = testdata::band_limited(g, 10, 5);
        Field z(g);
        CHECK(max_abs(dealiased_product(f, z)) == 0.0);
    }

    SECTION("matches symbolic mode convolution on band-limited data") {
        for (int dim : {1, 2}) {
            GridSpec gg(dim, 32, 3.0);
            Field f = testdata::band_limited(gg, 10, 17);
            Field h = testdata::band_limited(gg, 10, 18);
            Field want = oracles::mode_convolution_product(f, h);
            Field got = dealiased_product(f, h);
            CHECK(rel_l2_error(got, want) < 1e-12);
        }
    }

    SECTION("grid mismatch is rejected") {
        GridSpec g2(1, 64, 3.0);
        CHECK_THROWS_AS(dealiased_product(Field(g), Field(g2)), std::invalid_argument);
    }
}

TEST_CASE("multiplier algebra identities") {
    SECTION("hilbert twice is minus identity on mean-zero fields") {
        GridSpec g(1, 64, 5.0);
        Field f = testdata::band_limited(g, 20, 31);
        Field got = apply_multiplier(apply_multiplier(f, MultiplierSymbol::hilbert()),
                                     MultiplierSymbol::hilbert());
        CHECK(max_abs_diff(got, -1.0 * f) < 1e-12 * max_abs(f));
    }

    SECTION("beurling is an isometry") {
        GridSpec g(2, 32, 5.0);
        Field f = testdata::band_limited(g, 10, 19);
        Field sf = apply_multiplier(f, MultiplierSymbol::beurling());
        CHECK(l2_norm(sf) == Catch::Approx(l2_norm(f)).epsilon(1e-12));
    }

    SECTION("S conj S eta = conj eta on mean-zero fields") {
        GridSpec g(2, 32, 5.0);
        Field eta = testdata::band_limited(g, 10, 29);
        Field got = apply_multiplier(
            conjugate(apply_multiplier(eta, MultiplierSymbol::beurling())),
            MultiplierSymbol::beurling());
        CHECK(max_abs_diff(got, conjugate(eta)) < 1e-10 * max_abs(eta));
    }

    SECTION("sum of squared riesz transforms is minus identity") {
        GridSpec g(2, 32, 5.0);
        Field f = testdata::band_limited(g, 10, 37);
        Field r1 = apply_multiplier(apply_multiplier(f, MultiplierSymbol::riesz(1)),
                                    MultiplierSymbol::riesz(1));
        Field r2 = apply_multiplier(apply_multiplier(f, MultiplierSymbol::riesz(2)),
                                    MultiplierSymbol::riesz(2));
        CHECK(max_abs_diff(r1 + r2, -1.0 * f) < 1e-12 * max_abs(f));
    }

    SECTION("riesz in one dimension coincides with hilbert") {
        GridSpec g(1, 32, 2.0);
        Field f = testdata::band_limited(g, 10, 41);
        CHECK(max_abs_diff(apply_multiplier(f, MultiplierSymbol::riesz(1)),
                           apply_multiplier(f, MultiplierSymbol::hilbert())) < 1e-13);
    }
}
