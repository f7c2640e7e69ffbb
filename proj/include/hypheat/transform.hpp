#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "hypheat/space.hpp"

namespace hypheat {

/// Raised when a quadrature result is dominated by its truncation tail.
class TruncationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Frequency grid on (0, lambda_max).  Mesh-backed grids carry composite
/// Gauss-Legendre weights and are the ones the inverse transform accepts.
struct SpectralGrid {
    std::vector<double> points;
    std::vector<double> weights;  // empty for plain sample grids
    double lambda_max = 0.0;

    static SpectralGrid gauss_legendre(double lambda_max, int panels, int order);
    std::size_t size() const { return points.size(); }
};

struct SpectralFunction {
    SpectralGrid grid;
    std::vector<Complex> values;
    double strip_half_width = 0.0;  // analytic-extension descriptor, if known
};

struct TransformOptions {
    double panel_width = 0.25;  // radial quadrature panel width
    int order = 10;
    double tail_tol = 1e-8;  // forward: truncation-dominated threshold
};

struct ForwardResult {
    SpectralFunction spectral;
    double tail_fraction = 0.0;  // last-panel magnitude over peak magnitude
    double quad_error = 0.0;     // coarse-vs-fine panel estimate, relative
};

/// Spherical transform F f(lambda + offset) = int_0^Rmax f(r) phi_{-(lambda+offset)}(r) J(r) dr.
/// Throws TruncationError when the tail estimate exceeds opts.tail_tol.
ForwardResult forward_transform(const HyperbolicSpace& space, const RadialFunction& f,
                                const SpectralGrid& grid, Complex lambda_offset = Complex(0, 0),
                                const TransformOptions& opts = {});

/// Inversion kappa_n int_0^Lmax g(lambda) phi_lambda(r) |c(lambda)|^{-2} dlambda
/// on the radial grid.  Requires a mesh-backed spectral grid; throws when the
/// density-weighted tail of g is not negligible (non-integrable input).
RadialFunction inverse_transform(const HyperbolicSpace& space, const SpectralFunction& g,
                                 const RadialGrid& grid, const TransformOptions& opts = {});

/// Inversion evaluated at arbitrary radii.
std::vector<Complex> inverse_at(const HyperbolicSpace& space, const SpectralFunction& g,
                                std::span<const double> radii, const TransformOptions& opts = {});

struct CalibrationOptions {
    double bump_width = 1.0;
    double h = 1.0 / 128;
    double r_max = 10.0;
    double lambda_max = 20.0;
    int lambda_panels = 80;
    int order = 10;
};

/// One-time inversion constant kappa_n: least-squares round-trip fit on a
/// reference Gaussian bump.  Deterministic.
double calibrate_inversion_constant(const HyperbolicSpace& space,
                                    const CalibrationOptions& opts = {});

/// Memoized per-dimension calibration used by inverse_transform.
double inversion_constant(const HyperbolicSpace& space);

}  // namespace hypheat
