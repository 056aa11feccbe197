#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "peq/grid.hpp"

using namespace peq;

TEST_CASE("make_grid collocation layout") {
    Grid g = make_grid(8, 8, 8, 1.0);
    CHECK(g.size() == 512);
    CHECK(g.z(0) == doctest::Approx(-1.0));
    CHECK(g.z(1) == doctest::Approx(-0.75));
    CHECK(g.z(7) == doctest::Approx(0.75));
    CHECK(g.x(1) == doctest::Approx(0.125));
    CHECK(g.volume() == doctest::Approx(2.0));

    Grid g2 = make_grid(4, 4, 4, 0.5);
    CHECK(g2.dz() == doctest::Approx(0.25));

    CHECK_THROWS_AS(make_grid(7, 8, 8, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(8, 2, 8, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(8, 8, 8, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(8, 8, 8, -1.0), std::invalid_argument);
}

TEST_CASE("transform of single modes") {
    Grid g = make_grid(8, 8, 8, 1.0);

    Field3 f = Field3::sample(g, [](double x, double, double) { return std::sin(2 * M_PI * x); });
    Field3 c = transform(f, Direction::Forward);
    int nonzero = 0;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            for (int k = 0; k < g.nz; ++k)
                if (std::abs(c.coef(i, j, k)) > 1e-14) ++nonzero;
    CHECK(nonzero == 2);
    CHECK(std::abs(c.coef(1, 0, 0) - Complex(0.0, -0.5)) < 1e-14);
    CHECK(std::abs(c.coef(7, 0, 0) - Complex(0.0, 0.5)) < 1e-14);

    Field3 one = Field3::sample(g, [](double, double, double) { return 1.0; });
    Field3 co = transform(one, Direction::Forward);
    CHECK(std::abs(co.coef(0, 0, 0) - Complex(1.0, 0.0)) < 1e-14);
    co.coef(0, 0, 0) = 0.0;
    double rest = 0.0;
    for (auto v : co.spec()) rest = std::max(rest, std::abs(v));
    CHECK(rest < 1e-14);
}

TEST_CASE("transform roundtrip on seeded random fields") {
    Grid g = make_grid(16, 16, 16, 1.0);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        Field3 f = testor::random_field(g, seed, 5);
        Field3 back = transform(transform(f, Direction::Forward), Direction::Backward);
        double scale = max_abs(f);
        double err = 0.0;
        auto pa = f.phys();
        auto pb = back.phys();
        for (std::size_t p = 0; p < pa.size(); ++p) err = std::max(err, std::abs(pa[p] - pb[p]));
        CHECK(err < 1e-12 * scale);
    }
}

TEST_CASE("transform rejects wrong representation") {
    Grid g = make_grid(8, 8, 8, 1.0);
    Field3 f = Field3::zeros(g, Rep::Physical);
    CHECK_THROWS_AS(transform(f, Direction::Backward), std::invalid_argument);
    Field3 s = Field3::zeros(g, Rep::Spectral);
    CHECK_THROWS_AS(transform(s, Direction::Forward), std::invalid_argument);
}

TEST_CASE("spectral derivatives of analytic fields") {
    Grid g = make_grid(16, 8, 8, 1.0);

    Field3 f = Field3::sample(g, [](double x, double, double) { return std::sin(2 * M_PI * x); });
    Field3 dfx = derivative(f, Axis::X, 1);
    Field3 want = Field3::sample(g, [](double x, double, double) { return 2 * M_PI * std::cos(2 * M_PI * x); });
    CHECK(max_abs(dfx - want) < 1e-12 * 2 * M_PI);

    Field3 c = Field3::sample(g, [](double, double, double) { return 3.25; });
    CHECK(max_abs(derivative(c, Axis::Z, 1)) < 1e-14);

    Field3 d2 = derivative(f, Axis::X, 2);
    Field3 want2 =
        Field3::sample(g, [](double x, double, double) { return -4 * M_PI * M_PI * std::sin(2 * M_PI * x); });
    CHECK(max_abs(d2 - want2) < 1e-11);

    CHECK_THROWS_AS(derivative(f, Axis::X, 3), std::invalid_argument);
}

TEST_CASE("dealias keeps low modes, kills Nyquist and aliases") {
    Grid g8 = make_grid(8, 8, 8, 1.0);

    Field3 low = Field3::sample(g8, [](double x, double, double) { return std::sin(2 * M_PI * x); });
    Field3 kept = to_physical(dealias(to_spectral(low)));
    CHECK(max_abs(kept - low) < 1e-13);

    Field3 nyq = Field3::sample(g8, [](double x, double, double) { return std::cos(2 * M_PI * 4 * x); });
    CHECK(max_abs(to_physical(dealias(to_spectral(nyq)))) < 1e-13);

    // Product of two band-edge modes: sin^2(2 pi m x) = 1/2 - cos(4 pi m x)/2.
    // For m = 10 on nx = 32 the cos(2 pi 20 x) part aliases onto mode -12,
    // outside the 2/3 ball, so dealias must leave exactly the constant 1/2.
    Grid g32 = make_grid(32, 8, 8, 1.0);
    const int m = Grid::dealias_cutoff(32);  // = 10
    Field3 f = Field3::sample(g32, [&](double x, double, double) { return std::sin(2 * M_PI * m * x); });
    Field3 prod = dealias(to_spectral(pmul(f, f)));
    CHECK(std::abs(prod.coef(0, 0, 0) - Complex(0.5, 0.0)) < 1e-14);
    prod.coef(0, 0, 0) = 0.0;
    double rest = 0.0;
    for (auto v : prod.spec()) rest = std::max(rest, std::abs(v));
    CHECK(rest < 1e-14);
}

TEST_CASE("vertical antiderivative") {
    Grid g = make_grid(8, 8, 16, 1.0);

    CHECK(max_abs(vertical_antiderivative(Field3::zeros(g))) == 0.0);

    Field3 one = Field3::sample(g, [](double, double, double) { return 1.0; });
    Field3 want = Field3::sample(g, [](double, double, double z) { return z + 1.0; });
    CHECK(max_abs(vertical_antiderivative(one) - want) < 1e-13);

    // int_{-1}^{z} sin(pi xi) dxi = -(cos(pi z) + 1)/pi, zero at z = -1
    Field3 s = Field3::sample(g, [](double, double, double z) { return std::sin(M_PI * z); });
    Field3 ws = Field3::sample(
        g, [](double, double, double z) { return -(std::cos(M_PI * z) + 1.0) / M_PI; });
    CHECK(max_abs(vertical_antiderivative(s) - ws) < 1e-13);
}

TEST_CASE("discrete integration by parts is exact") {
    Grid g = make_grid(16, 16, 16, 0.7);
    Field3 f = to_physical(dealias(to_spectral(testor::random_field(g, 11, 4))));
    Field3 gg = to_physical(dealias(to_spectral(testor::random_field(g, 12, 4))));
    for (Axis ax : {Axis::X, Axis::Y, Axis::Z}) {
        double lhs = testor::quad_inner(derivative(f, ax, 1), gg);
        double rhs = -testor::quad_inner(f, derivative(gg, ax, 1));
        double scale = testor::quad_l2(derivative(f, ax, 1)) * testor::quad_l2(gg) + 1e-300;
        CHECK(std::abs(lhs - rhs) / scale < 1e-12);
    }
}

TEST_CASE("second-derivative cross identity") {
    Grid g = make_grid(16, 16, 16, 1.3);
    Field3 f = to_physical(dealias(to_spectral(testor::random_field(g, 21, 4))));
    for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
        for (Axis b : {Axis::X, Axis::Y, Axis::Z}) {
            double lhs = testor::quad_inner(derivative(f, a, 2), derivative(f, b, 2));
            Field3 mixed = derivative(derivative(f, a, 1), b, 1);
            double rhs = testor::quad_inner(mixed, mixed);
            CHECK(std::abs(lhs - rhs) / (1.0 + std::abs(rhs)) < 1e-12);
        }
    }
}

TEST_CASE("Parseval") {
    Grid g = make_grid(16, 16, 16, 0.9);
    Field3 f = testor::random_field(g, 31, 5);
    double phys2 = testor::quad_inner(f, f);
    Field3 c = to_spectral(f);
    double spec2 = 0.0;
    for (auto v : c.spec()) spec2 += std::norm(v);
    spec2 *= g.volume();
    CHECK(std::abs(phys2 - spec2) / (1.0 + phys2) < 1e-12);
}

TEST_CASE("antiderivative inverts d/dz on z-mean-free fields") {
    Grid g = make_grid(8, 8, 16, 1.1);
    Field3 f = testor::random_field(g, 41, 3);
    // remove the z-mean mode
    Field3 c = to_spectral(f);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) c.coef(i, j, 0) = 0.0;
    f = to_physical(std::move(c));

    Field3 rec = vertical_antiderivative(derivative(f, Axis::Z, 1));
    // expected: f - f(x,y,-h)
    Field3 want = f;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            double fb = f.at(i, j, 0);
            for (int k = 0; k < g.nz; ++k) want.at(i, j, k) -= fb;
        }
    CHECK(max_abs(rec - want) < 1e-10 * (1.0 + max_abs(f)));
}

TEST_CASE("dealias test hook keeps all modes when corrupted") {
    Grid g = make_grid(8, 8, 8, 1.0);
    Field3 nyq = Field3::sample(g, [](double x, double, double) { return std::cos(2 * M_PI * 4 * x); });
    testhooks::corrupt_dealias = true;
    double kept = max_abs(to_physical(dealias(to_spectral(nyq))));
    testhooks::corrupt_dealias = false;
    CHECK(kept > 0.9);
}
