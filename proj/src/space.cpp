#include "hypheat/space.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hypheat/quadrature.hpp"

namespace hypheat {

HyperbolicSpace make_space(int n) {
    if (n < 2) throw std::invalid_argument("make_space: dimension must be >= 2");
    HyperbolicSpace space;
    space.dim = n;
    space.rho = 0.5 * (n - 1);
    space.sphere_area = 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
    return space;
}

double volume_density(const HyperbolicSpace& space, double r) {
    if (r < 0.0) throw std::invalid_argument("volume_density: negative radius");
    return space.sphere_area * std::pow(std::sinh(r), space.dim - 1);
}

double ball_volume(const HyperbolicSpace& space, double r) {
    if (r < 0.0) throw std::invalid_argument("ball_volume: negative radius");
    if (r == 0.0) return 0.0;
    int panels = std::max(4, static_cast<int>(r * 4));
    auto est = quad::integrate([&](double s) { return volume_density(space, s); }, 0.0, r, panels, 12);
    return est.value.real();
}

RadialGrid RadialGrid::uniform(double h, double r_max) {
    if (!(h > 0.0) || !(r_max > 0.0)) throw std::invalid_argument("RadialGrid::uniform: bad parameters");
    RadialGrid grid;
    auto n = static_cast<std::size_t>(std::llround(r_max / h));
    if (n < 1) throw std::invalid_argument("RadialGrid::uniform: fewer than two points");
    grid.points.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) grid.points[i] = h * static_cast<double>(i);
    grid.spacing = h;
    return grid;
}

RadialFunction radial_laplacian(const HyperbolicSpace& space, const RadialFunction& f) {
    const RadialGrid& grid = f.grid;
    if (grid.size() != f.values.size()) throw std::invalid_argument("radial_laplacian: size mismatch");
    if (grid.size() < 5) throw std::invalid_argument("radial_laplacian: grid too small for the stencil");
    if (!grid.is_uniform()) throw std::invalid_argument("radial_laplacian: grid must be uniform");

    const double h = grid.spacing;
    const double n1 = space.dim - 1;
    const std::size_t n = grid.size();
    RadialFunction out;
    out.grid = grid;
    out.values.resize(n);

    // r = 0: even extension, -dim * f''(0)
    out.values[0] = -static_cast<double>(space.dim) * 2.0 * (f.values[1] - f.values[0]) / (h * h);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        Complex d2 = (f.values[i + 1] - 2.0 * f.values[i] + f.values[i - 1]) / (h * h);
        Complex d1 = (f.values[i + 1] - f.values[i - 1]) / (2.0 * h);
        out.values[i] = -d2 - n1 / std::tanh(grid.points[i]) * d1;
    }
    // right endpoint: one-sided second order
    {
        std::size_t i = n - 1;
        Complex d2 = (2.0 * f.values[i] - 5.0 * f.values[i - 1] + 4.0 * f.values[i - 2] -
                      f.values[i - 3]) /
                     (h * h);
        Complex d1 = (3.0 * f.values[i] - 4.0 * f.values[i - 1] + f.values[i - 2]) / (2.0 * h);
        out.values[i] = -d2 - n1 / std::tanh(grid.points[i]) * d1;
    }
    return out;
}

double lp_norm(const HyperbolicSpace& space, const RadialFunction& f, double p, double r_cut) {
    if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
    if (f.grid.size() != f.values.size()) throw std::invalid_argument("lp_norm: size mismatch");
    if (r_cut > f.grid.r_max() + 1e-12) throw std::invalid_argument("lp_norm: radius beyond the grid");
    if (!f.grid.is_uniform()) throw std::invalid_argument("lp_norm: grid must be uniform");

    std::size_t last = 0;
    while (last + 1 < f.grid.size() && f.grid.points[last + 1] <= r_cut + 1e-12) ++last;
    if (last == 0) return 0.0;

    auto weights = quad::simpson_weights(last + 1, f.grid.spacing);
    quad::KahanSum acc;
    for (std::size_t i = 0; i <= last; ++i) {
        double a = std::abs(f.values[i]);
        if (a == 0.0) continue;
        acc.add(weights[i] * std::pow(a, p) * volume_density(space, f.grid.points[i]));
    }
    double v = acc.value();
    return v <= 0.0 ? 0.0 : std::pow(v, 1.0 / p);
}

double lp_norm(const HyperbolicSpace& space, const RadialFunction& f, double p) {
    return lp_norm(space, f, p, f.grid.r_max());
}

}  // namespace hypheat
