#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hypheat/space.hpp"
#include "hypheat/spherical.hpp"

using namespace hypheat;
namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("make_space basics") {
    CHECK(make_space(3).rho == 1.0);
    CHECK(make_space(2).rho == 0.5);
    CHECK(make_space(4).rho == 1.5);
    CHECK_THROWS_AS(make_space(1), std::invalid_argument);
    CHECK_THROWS_AS(make_space(0), std::invalid_argument);
    // unit-sphere areas: circle 2 pi, 2-sphere 4 pi, 3-sphere 2 pi^2
    CHECK(make_space(2).sphere_area == doctest::Approx(2 * kPi).epsilon(1e-14));
    CHECK(make_space(3).sphere_area == doctest::Approx(4 * kPi).epsilon(1e-14));
    CHECK(make_space(4).sphere_area == doctest::Approx(2 * kPi * kPi).epsilon(1e-14));
}

TEST_CASE("volume density") {
    auto h3 = make_space(3);
    auto h2 = make_space(2);
    CHECK(volume_density(h3, 0.0) == 0.0);
    CHECK(volume_density(h3, 1.0) ==
          doctest::Approx(4 * kPi * std::sinh(1.0) * std::sinh(1.0)).epsilon(1e-14));
    CHECK(volume_density(h2, 1.0) == doctest::Approx(2 * kPi * std::sinh(1.0)).epsilon(1e-14));
    CHECK_THROWS_AS(volume_density(h3, -0.5), std::invalid_argument);

    // growth normalization: J(r) e^{-(n-1) r} -> sphere_area 2^{-(n-1)}
    for (int n : {2, 3, 4}) {
        auto sp = make_space(n);
        double lim = volume_density(sp, 30.0) * std::exp(-(n - 1) * 30.0);
        CHECK(lim == doctest::Approx(sp.sphere_area * std::pow(2.0, -(n - 1))).epsilon(1e-10));
    }
}

TEST_CASE("volume density is the derivative of the ball volume") {
    for (int n : {2, 3, 4}) {
        auto sp = make_space(n);
        for (double r : {0.5, 1.0, 2.5}) {
            double d = 1e-5;
            double dv = (ball_volume(sp, r + d) - ball_volume(sp, r - d)) / (2 * d);
            CHECK(dv == doctest::Approx(volume_density(sp, r)).epsilon(1e-8));
        }
    }
}

TEST_CASE("radial laplacian stencils") {
    auto h3 = make_space(3);
    RadialGrid grid = RadialGrid::uniform(1.0 / 256, 20.0);

    SUBCASE("constant function maps to zero") {
        auto f = RadialFunction::sample(grid, [](double) { return 1.0; });
        auto lap = radial_laplacian(h3, f);
        for (auto v : lap.values) CHECK(std::abs(v) < 1e-9);
    }

    SUBCASE("eigenfunction identity at lambda = 1, eigenvalue 2") {
        auto phi = spherical_function(h3, Complex(1, 0), grid);
        auto lap = radial_laplacian(h3, phi);
        double worst = 0;
        for (std::size_t i = 1; i + 1 < grid.size(); ++i)
            worst = std::max(worst, std::abs(lap.values[i] - 2.0 * phi.values[i]));
        CHECK(worst < 1e-4);
    }

    SUBCASE("r/sinh(r) has eigenvalue rho^2 = 1") {
        auto f = RadialFunction::sample(
            grid, [](double r) { return r < 1e-12 ? 1.0 : r / std::sinh(r); });
        auto lap = radial_laplacian(h3, f);
        double worst = 0;
        for (std::size_t i = 1; i + 1 < grid.size(); ++i)
            worst = std::max(worst, std::abs(lap.values[i] - f.values[i]));
        CHECK(worst < 1e-4);
    }

    SUBCASE("grids below 5 points are rejected") {
        RadialGrid tiny = RadialGrid::uniform(0.25, 1.0);  // 5 points: fine
        auto f = RadialFunction::sample(tiny, [](double r) { return r; });
        CHECK_NOTHROW(radial_laplacian(h3, f));
        RadialGrid toosmall = RadialGrid::uniform(0.25, 0.75);  // 4 points
        auto g = RadialFunction::sample(toosmall, [](double r) { return r; });
        CHECK_THROWS_AS(radial_laplacian(h3, g), std::invalid_argument);
    }
}

TEST_CASE("eigen-relation residual and stencil order") {
    const Complex lambdas[] = {{0.5, 0}, {1, 0}, {2, 0}, {1, 0.2}};
    for (int n : {2, 3, 4}) {
        auto sp = make_space(n);
        for (Complex lam : lambdas) {
            Complex ev = lam * lam + sp.rho * sp.rho;
            double res_h = 0, res_h2 = 0, scale = 0;
            for (double h : {1.0 / 256, 1.0 / 512}) {
                RadialGrid grid = RadialGrid::uniform(h, 20.0);
                auto phi = spherical_function(sp, lam, grid);
                auto lap = radial_laplacian(sp, phi);
                double worst = 0, maxphi = 0;
                for (std::size_t i = 0; i < grid.size(); ++i)
                    maxphi = std::max(maxphi, std::abs(phi.values[i]));
                for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
                    if (grid.points[i] < 0.1) continue;
                    worst = std::max(worst, std::abs(lap.values[i] - ev * phi.values[i]));
                }
                (h == 1.0 / 256 ? res_h : res_h2) = worst / maxphi;
                scale = 10.0 * h * h;
                CHECK(worst / maxphi <= scale);  // 10 h^2 for the order-2 stencil
            }
            CHECK(res_h / res_h2 >= 3.5);  // order-2 convergence
        }
    }
}

TEST_CASE("lp_norm") {
    auto h3 = make_space(3);
    RadialGrid grid = RadialGrid::uniform(1.0 / 256, 20.0);

    SUBCASE("zero function") {
        auto f = RadialFunction::sample(grid, [](double) { return 0.0; });
        CHECK(lp_norm(h3, f, 2.0, 10.0) == 0.0);
    }

    SUBCASE("preconditions") {
        auto f = RadialFunction::sample(grid, [](double r) { return std::exp(-r); });
        CHECK_THROWS_AS(lp_norm(h3, f, 0.5, 10.0), std::invalid_argument);
        CHECK_THROWS_AS(lp_norm(h3, f, 2.0, 25.0), std::invalid_argument);
    }

    SUBCASE("homogeneity under complex scalars") {
        std::mt19937_64 rng(2024);
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        RadialFunction f;
        f.grid = grid;
        for (double r : grid.points) f.values.emplace_back(unit(rng) * std::exp(-r), unit(rng));
        for (double p : {1.0, 2.0, 3.7}) {
            Complex a(unit(rng) * 3, unit(rng) * 3);
            RadialFunction af = f;
            for (auto& v : af.values) v *= a;
            CHECK(lp_norm(h3, af, p, 15.0) ==
                  doctest::Approx(std::abs(a) * lp_norm(h3, f, p, 15.0)).epsilon(1e-12));
        }
    }

    SUBCASE("monotone nondecreasing in the truncation radius") {
        auto phi = spherical_function(h3, Complex(1, 0), grid);
        double prev = 0;
        for (double R : {2.0, 5.0, 10.0, 20.0}) {
            double v = lp_norm(h3, phi, 4.0, R);
            CHECK(v >= prev);
            prev = v;
        }
    }
}

TEST_CASE("truncated norms of an eigenfunction: p = 4 converges, p = 2 grows like sqrt(R)") {
    auto h3 = make_space(3);
    RadialGrid grid = RadialGrid::uniform(1.0 / 256, 40.0);
    auto phi = spherical_function(h3, Complex(1, 0), grid);

    double n4_5 = lp_norm(h3, phi, 4.0, 5.0);
    double n4_10 = lp_norm(h3, phi, 4.0, 10.0);
    double n4_20 = lp_norm(h3, phi, 4.0, 20.0);
    double n4_40 = lp_norm(h3, phi, 4.0, 40.0);
    CHECK(std::abs(n4_20 - n4_10) < std::abs(n4_10 - n4_5));
    CHECK(std::abs(n4_40 - n4_20) < 1e-3 * n4_40);  // Cauchy tail

    double n2_5 = lp_norm(h3, phi, 2.0, 5.0);
    double n2_10 = lp_norm(h3, phi, 2.0, 10.0);
    double n2_20 = lp_norm(h3, phi, 2.0, 20.0);
    double n2_40 = lp_norm(h3, phi, 2.0, 40.0);
    CHECK(n2_10 / n2_5 > 1.25);
    CHECK(n2_20 / n2_10 == doctest::Approx(std::sqrt(2.0)).epsilon(0.1));
    CHECK(n2_40 / n2_20 == doctest::Approx(std::sqrt(2.0)).epsilon(0.1));
}
