#pragma once

#include <complex>
#include <span>
#include <vector>

#include "hypheat/space.hpp"

namespace hypheat {

/// Values of the normalized radial Laplace eigenfunction phi_lambda
/// (eigenvalue lambda^2 + rho^2, phi(0) = 1, phi'(0) = 0) at the given
/// radii (nondecreasing, r >= 0).  Closed form for H^3, power-series plus
/// adaptive ODE integration of the exp(rho r)-scaled equation otherwise.
std::vector<Complex> spherical_values(const HyperbolicSpace& space, Complex lambda,
                                      std::span<const double> radii);

/// Same, sampled on a grid.
RadialFunction spherical_function(const HyperbolicSpace& space, Complex lambda,
                                  const RadialGrid& grid);

/// exp(rho r) * phi_lambda(r); stable at large r.
std::vector<Complex> spherical_values_scaled(const HyperbolicSpace& space, Complex lambda,
                                             std::span<const double> radii);

/// Forced ODE path (any dimension, including 3); cross-validation hook.
std::vector<Complex> spherical_values_ode(const HyperbolicSpace& space, Complex lambda,
                                          std::span<const double> radii);

/// Harish-Chandra c-function in the normalization fixed by
///   phi_lambda(r) ~ c(lambda) e^{(i lambda - rho) r} + c(-lambda) e^{(-i lambda - rho) r},
/// computed from the Gamma-quotient formula.  For H^3 this is 1/(i lambda).
/// Rejects lambda = 0 (pole).
Complex harish_chandra_c(const HyperbolicSpace& space, Complex lambda);

/// Plancherel density |c(lambda)|^{-2} for lambda > 0.
double plancherel_density(const HyperbolicSpace& space, double lambda);

/// Two-term asymptotic fit of c(lambda) from scaled eigenfunction values on
/// radii in [r_lo, r_hi]; independent check of harish_chandra_c.
Complex c_function_asymptotic_fit(const HyperbolicSpace& space, double lambda, double r_lo = 25.0,
                                  double r_hi = 35.0);

/// The strip { |Im lambda| <= rho (1 - 2/p) } of L^p spectral parameters, p > 2.
struct LpStrip {
    double p = 0.0;
    double half_width = 0.0;
};
LpStrip lp_strip(const HyperbolicSpace& space, double p);

enum class StripPosition { inside, boundary, outside };

/// Classify |Im lambda| against rho (1 - 2/p); ties within tol are "boundary".
/// Requires p > 2.
StripPosition lp_membership(const HyperbolicSpace& space, Complex lambda, double p,
                            double tol = 1e-9);

namespace detail {
/// log Gamma for Re z > 0 (Lanczos); exp-composable, branch-tolerant.
Complex log_gamma(Complex z);
}  // namespace detail

}  // namespace hypheat
