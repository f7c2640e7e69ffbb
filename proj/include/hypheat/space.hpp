#pragma once

#include <complex>
#include <span>
#include <vector>

namespace hypheat {

using Complex = std::complex<double>;

/// Real hyperbolic space H^n with constant curvature -1.
///
/// In this normalization the exponential volume growth rate is 2*rho with
/// rho = (n-1)/2, and the radial volume density is
///   J(r) = sphere_area * sinh(r)^(n-1).
struct HyperbolicSpace {
    int dim = 0;
    double rho = 0.0;          // (dim - 1) / 2
    double sphere_area = 0.0;  // area of the unit (dim-1)-sphere in R^dim
};

/// Construct H^n. Requires n >= 2.
HyperbolicSpace make_space(int n);

/// Radial volume density J(r) = sphere_area * sinh(r)^(n-1). Requires r >= 0.
double volume_density(const HyperbolicSpace& space, double r);

/// Volume of the geodesic ball of radius r (quadrature of J).
double ball_volume(const HyperbolicSpace& space, double r);

/// Radial grid r_0 = 0 < r_1 < ... < r_N.  Uniform grids record their
/// spacing; the finite-difference operators below require uniformity.
struct RadialGrid {
    std::vector<double> points;
    double spacing = 0.0;  // > 0 iff the grid is uniform

    static RadialGrid uniform(double h, double r_max);

    std::size_t size() const { return points.size(); }
    double r_max() const { return points.empty() ? 0.0 : points.back(); }
    bool is_uniform() const { return spacing > 0.0; }
};

/// Samples of a radial (distance-only) function on a RadialGrid.
struct RadialFunction {
    RadialGrid grid;
    std::vector<Complex> values;

    template <class F>
    static RadialFunction sample(const RadialGrid& grid, F&& f) {
        RadialFunction out;
        out.grid = grid;
        out.values.reserve(grid.size());
        for (double r : grid.points) out.values.push_back(Complex(f(r)));
        return out;
    }
};

/// Discrete positive Laplacian -f'' - (n-1) coth(r) f' on a uniform grid,
/// second-order central stencils.  At r = 0 the regularized limit
/// -n f''(0) is used (even extension); the right endpoint uses one-sided
/// second-order stencils.  Requires a uniform grid with at least 5 points.
RadialFunction radial_laplacian(const HyperbolicSpace& space, const RadialFunction& f);

/// Truncated L^p norm (int_0^R |f|^p J dr)^(1/p) over the grid samples,
/// composite Simpson weights.  Requires p >= 1 and R <= grid r_max.
double lp_norm(const HyperbolicSpace& space, const RadialFunction& f, double p, double r_cut);

/// Full-grid L^p norm.
double lp_norm(const HyperbolicSpace& space, const RadialFunction& f, double p);

}  // namespace hypheat
