#pragma once

#include <span>
#include <utility>
#include <vector>

#include "hypheat/regions.hpp"
#include "hypheat/space.hpp"
#include "hypheat/transform.hpp"

namespace hypheat {

/// Shifted heat semigroup T(t) = e^{-t (Laplacian - c)} acting on radial
/// L^p functions.  The action is a spectral multiplier
/// e^{-t (lambda^2 + rho^2 - c)}; it does not read p (p-consistency), p is
/// carried for norms and region bookkeeping only.
struct SemigroupConfig {
    HyperbolicSpace space;
    double p = 2.0;
    double shift = 0.0;  // c
    double t = 0.0;
};

struct EvolveOptions {
    double lambda_max = 0.0;    // 0: choose from t
    double lambda_panel = 0.0;  // 0: choose from the radial extent
    int lambda_order = 10;
    TransformOptions quad;
};

/// T(t) f via forward transform, multiplier, inverse transform.
RadialFunction evolve(const SemigroupConfig& config, const RadialFunction& f,
                      const EvolveOptions& opts = {});

enum class ModeTrend { decaying, growing, unimodular };

struct EigenFactor {
    Complex factor;
    ModeTrend trend;
};

/// Exact action on a (Laplacian - c)-eigenvector with eigenvalue z:
/// factor e^{-t z}.  Requires z + c - rho^2 off the branch cut (-inf, 0].
EigenFactor evolve_eigen(const SemigroupConfig& config, Complex z);

/// Truncated L^p norms of T(t) f along increasing times (one forward
/// transform, one inversion per time).
std::vector<std::pair<double, double>> orbit_trace(const SemigroupConfig& config,
                                                   const RadialFunction& f,
                                                   std::span<const double> times,
                                                   const EvolveOptions& opts = {});

/// Exact orbit of an eigen-span sum a_j phi_{-mu_j}: multiplies each atom by
/// e^{-t z_j}, no transform involved.
std::vector<std::pair<double, double>> orbit_trace(const SemigroupConfig& config,
                                                   std::span<const EigenAtom> atoms,
                                                   const RadialGrid& grid,
                                                   std::span<const double> times);

/// Synthesize sum a_j phi_{-mu_j} on a grid.
RadialFunction synthesize_span(const HyperbolicSpace& space, std::span<const EigenAtom> atoms,
                               const RadialGrid& grid);

/// Explicit H^3 heat kernel (4 pi t)^{-3/2} (r / sinh r) e^{-t - r^2 / 4t}.
double heat_kernel_h3(double t, double r);

/// Independent evolution oracle on H^3: radial convolution with the explicit
/// kernel (angular integral in closed form, radial integral by quadrature).
RadialFunction evolve_convolution_h3(const SemigroupConfig& config, const RadialFunction& f,
                                     const TransformOptions& opts = {});

}  // namespace hypheat
