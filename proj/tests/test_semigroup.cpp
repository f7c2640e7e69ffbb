#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hypheat/chaos.hpp"
#include "hypheat/quadrature.hpp"
#include "hypheat/semigroup.hpp"
#include "hypheat/space.hpp"
#include "hypheat/spherical.hpp"

using namespace hypheat;

namespace {

constexpr double kPi = std::numbers::pi;

RadialFunction gaussian(const RadialGrid& grid, double width = 1.0) {
    return RadialFunction::sample(grid, [=](double r) { return std::exp(-(r / width) * (r / width)); });
}

double sup_diff(const RadialFunction& a, const RadialFunction& b, double r_cut = 1e300) {
    double sup = 0;
    for (std::size_t i = 0; i < a.grid.size(); ++i) {
        if (a.grid.points[i] > r_cut) break;
        sup = std::max(sup, std::abs(a.values[i] - b.values[i]));
    }
    return sup;
}

}  // namespace

TEST_CASE("evolve at t = 0 is the identity") {
    auto h3 = make_space(3);
    RadialGrid grid = RadialGrid::uniform(1.0 / 256, 16.0);
    auto f = gaussian(grid);
    SemigroupConfig cfg{h3, 2.0, 0.0, 0.0};
    auto out = evolve(cfg, f);
    CHECK(sup_diff(out, f) == 0.0);

    // and through the full transform pair
    EvolveOptions opts;
    opts.lambda_max = 24.0;
    auto rt = evolve(cfg, f, opts);
    CHECK(sup_diff(rt, f) < 1e-8);
}

TEST_CASE("heat kernel on H^3 has unit mass") {
    auto h3 = make_space(3);
    for (double t : {0.25, 1.0}) {
        auto est = quad::integrate(
            [&](double r) { return heat_kernel_h3(t, r) * volume_density(h3, r); }, 0.0, 30.0, 120,
            12);
        CHECK(est.value.real() == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("spectral evolution matches the explicit-kernel convolution") {
    auto h3 = make_space(3);
    RadialGrid grid = RadialGrid::uniform(1.0 / 256, 16.0);
    for (double width : {1.0, 0.5}) {
        auto f = gaussian(grid, width);
        for (double t : {0.25, 1.0}) {
            SemigroupConfig cfg{h3, 2.0, 0.0, t};
            auto spectral = evolve(cfg, f);
            auto conv = evolve_convolution_h3(cfg, f);
            CHECK(sup_diff(spectral, conv, 10.0) < 1e-5);
        }
    }
}

TEST_CASE("windowed eigenfunction comparison on the window interior") {
    auto h3 = make_space(3);
    RadialGrid grid = RadialGrid::uniform(1.0 / 256, 20.0);
    const Complex lam(0.8, 0.25);
    const double t = 0.5, c = 1.0;
    WindowConfig w;
    w.plateau = 12.0;
    w.rolloff = 4.0;

    auto phi = spherical_values(h3, lam, grid.points);
    RadialFunction fw;
    fw.grid = grid;
    for (std::size_t i = 0; i < grid.size(); ++i)
        fw.values.push_back(phi[i] * window_value(w, grid.points[i]));

    SemigroupConfig cfg{h3, 4.0, c, t};
    EvolveOptions opts;
    opts.lambda_max = 10.0;
    opts.lambda_panel = 0.1;
    auto evolved = evolve(cfg, fw, opts);

    Complex factor = std::exp(-t * (lam * lam + 1.0 - c));
    double sup = 0, scale = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid.points[i] > 6.0) break;
        sup = std::max(sup, std::abs(evolved.values[i] - factor * fw.values[i]));
        scale = std::max(scale, std::abs(fw.values[i]));
    }
    CHECK(sup / scale < 1e-6);
}

TEST_CASE("semigroup law") {
    auto h3 = make_space(3);
    RadialGrid grid = RadialGrid::uniform(1.0 / 256, 16.0);
    auto f = gaussian(grid);
    for (double t : {0.1, 0.5}) {
        for (double s : {0.5, 1.0}) {
            SemigroupConfig one{h3, 2.0, 0.5, t + s};
            SemigroupConfig at{h3, 2.0, 0.5, t};
            SemigroupConfig as{h3, 2.0, 0.5, s};
            auto direct = evolve(one, f);
            auto composed = evolve(at, evolve(as, f));
            double scale = std::abs(direct.values[0]);
            CHECK(sup_diff(direct, composed) < 1e-8 * scale);
        }
    }
}

TEST_CASE("submarkovian behavior at c = 0: positivity and max contraction") {
    auto h3 = make_space(3);
    RadialGrid grid = RadialGrid::uniform(1.0 / 256, 16.0);
    auto f = gaussian(grid);
    SemigroupConfig cfg{h3, 2.0, 0.0, 0.5};
    auto out = evolve(cfg, f);
    double fmax = 0, outmax = 0, outmin = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        fmax = std::max(fmax, f.values[i].real());
        outmax = std::max(outmax, out.values[i].real());
        outmin = std::min(outmin, out.values[i].real());
    }
    CHECK(outmin > -1e-10 * fmax);
    CHECK(outmax <= fmax * (1.0 + 1e-10));
}

TEST_CASE("the multiplier does not read p") {
    auto h3 = make_space(3);
    RadialGrid grid = RadialGrid::uniform(1.0 / 256, 12.0);
    auto f = gaussian(grid);
    SemigroupConfig a{h3, 2.5, 0.3, 0.7};
    SemigroupConfig b{h3, 7.0, 0.3, 0.7};
    auto fa = evolve(a, f);
    auto fb = evolve(b, f);
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(fa.values[i] == fb.values[i]);
}

TEST_CASE("shift covariance: evolve with c equals e^{tc} times evolve at c = 0") {
    auto h3 = make_space(3);
    RadialGrid grid = RadialGrid::uniform(1.0 / 256, 12.0);
    auto f = gaussian(grid);
    const double t = 0.8, c = 1.3;
    auto shifted = evolve(SemigroupConfig{h3, 2.0, c, t}, f);
    auto plain = evolve(SemigroupConfig{h3, 2.0, 0.0, t}, f);
    double scale = std::abs(shifted.values[0]);
    double sup = 0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        sup = std::max(sup, std::abs(shifted.values[i] - std::exp(t * c) * plain.values[i]));
    CHECK(sup < 1e-11 * scale);
}

TEST_CASE("evolve_eigen factors and trends") {
    auto h3 = make_space(3);
    SUBCASE("z = 0 with c = 2 gives factor 1") {
        SemigroupConfig cfg{h3, 4.0, 2.0, 3.0};
        auto ef = evolve_eigen(cfg, Complex(0, 0));
        CHECK(std::abs(ef.factor - 1.0) < 1e-15);
        CHECK(ef.trend == ModeTrend::unimodular);
    }
    SUBCASE("periodic factor over one period") {
        double y = 0.25;
        SemigroupConfig cfg{h3, 4.0, 1.0, 2.0 * kPi / y};
        auto ef = evolve_eigen(cfg, Complex(0, y));
        CHECK(std::abs(ef.factor - 1.0) < 1e-12);
    }
    SUBCASE("z = 1 at t = ln 2 halves") {
        SemigroupConfig cfg{h3, 4.0, 1.0, std::log(2.0)};
        auto ef = evolve_eigen(cfg, Complex(1, 0));
        CHECK(std::abs(ef.factor - 0.5) < 1e-15);
        CHECK(ef.trend == ModeTrend::decaying);
    }
    SUBCASE("growing trend and branch rejection") {
        SemigroupConfig cfg{h3, 4.0, 1.0, 1.0};
        CHECK(evolve_eigen(cfg, Complex(-0.1, 0.06)).trend == ModeTrend::growing);
        CHECK_THROWS_AS(evolve_eigen(cfg, Complex(-0.5, 0)), std::domain_error);
    }
}

TEST_CASE("orbit traces of eigen-spans") {
    auto h3 = make_space(3);
    RadialGrid grid = RadialGrid::uniform(1.0 / 256, 40.0);
    ParabolicRegion region{1.0, 4.0, 1.0};
    SemigroupConfig cfg{h3, 4.0, 1.0, 0.0};

    SUBCASE("decaying span goes to zero monotonically") {
        std::vector<EigenAtom> atoms{make_atom(region, Complex(0.3, 0), Complex(1, 0)),
                                     make_atom(region, Complex(0.5, 0), Complex(0.5, 0))};
        std::vector<double> times{0, 5, 10, 20, 40};
        auto trace = orbit_trace(cfg, atoms, grid, times);
        for (std::size_t i = 0; i + 1 < trace.size(); ++i)
            CHECK(trace[i + 1].second < trace[i].second);
        CHECK(trace.back().second < 1e-4 * trace.front().second);
    }

    SUBCASE("a growing mode exceeds any fixed bound") {
        std::vector<EigenAtom> atoms{make_atom(region, Complex(-0.12, 0.05), Complex(1, 0))};
        std::vector<double> times{0, 20, 40, 80};
        auto trace = orbit_trace(cfg, atoms, grid, times);
        CHECK(trace.back().second > 1e3 * trace.front().second);
    }

    SUBCASE("periodic point has constant norms at period multiples") {
        auto point = periodic_point(h3, 4.0, 1.0, 8 * kPi,
                                    std::vector<std::pair<int, Complex>>{{1, Complex(1, 0)},
                                                                         {-1, Complex(0, 0.5)}},
                                    grid);
        std::vector<double> times{0, 8 * kPi, 16 * kPi, 24 * kPi};
        auto trace = orbit_trace(cfg, point.atoms, grid, times);
        for (auto [t, n] : trace)
            CHECK(n == doctest::Approx(trace.front().second).epsilon(1e-6));
    }
}

TEST_CASE("orbit trace of a transform-domain bump decays at c = 0") {
    auto h3 = make_space(3);
    RadialGrid grid = RadialGrid::uniform(1.0 / 256, 16.0);
    auto f = gaussian(grid);
    SemigroupConfig cfg{h3, 2.0, 0.0, 0.0};
    std::vector<double> times{0.0, 0.5, 1.0, 2.0};
    auto trace = orbit_trace(cfg, f, times);
    for (std::size_t i = 0; i + 1 < trace.size(); ++i) CHECK(trace[i + 1].second < trace[i].second);
    CHECK_THROWS_AS(orbit_trace(cfg, f, std::vector<double>{1.0, 0.5}), std::invalid_argument);
}
