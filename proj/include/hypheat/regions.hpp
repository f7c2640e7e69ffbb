#pragma once

#include <complex>
#include <span>
#include <vector>

#include "hypheat/space.hpp"
#include "hypheat/spherical.hpp"

namespace hypheat {

/// Apex 4 rho^2 / p (1 - 1/p) of the L^p spectral parabola; equals
/// rho^2 - b_p^2 with b_p = rho |2/p - 1|.  Requires p > 1.
double apex_threshold(double rho, double p);

/// The shifted L^p spectral region P_p - c:
///   { rho^2 + z^2 - c : |Im z| <= rho |2/p - 1| },
/// degenerating to the real ray [rho^2 - c, infinity) at p = 2.
struct ParabolicRegion {
    double rho = 0.0;
    double p = 0.0;
    double shift = 0.0;  // the c in P_p - c

    double half_width() const;  // b_p
    double apex() const;        // c_p
};

enum class RegionPosition { interior, boundary, exterior };

/// Classify w against P_p - c with tie tolerance.
RegionPosition region_contains(const ParabolicRegion& region, Complex w, double tol = 1e-9);

/// Point on the upper boundary parabola, parameter x in R:
/// rho^2 + (x + i b_p)^2 - c.
Complex parabola_boundary(const ParabolicRegion& region, double x);

/// Intersection of the point-spectrum region with the imaginary axis.
/// For p > 2 this is the interval [-Y, Y], Y = 2 b_p sqrt(c - c_p), when
/// c > c_p ({0} at c = c_p, empty below).  For p = 2 the ray yields at most
/// {0}; for p < 2 the point spectrum is empty, hence so is the section.
struct AxisSection {
    enum class Kind { empty, point, interval } kind = Kind::empty;
    double height = 0.0;  // Y for intervals

    bool has_interior() const { return kind == Kind::interval && height > 0.0; }
};
AxisSection imaginary_axis_section(const ParabolicRegion& region);

/// Half-angle arctan(|p-2| / (2 sqrt(p-1))) of the sector containing the
/// L^p spectrum.  Requires p in (1, infinity).
double sector_half_angle(double p);

/// Image strip { Re > 0, |Im| < rho |2/p - 1| } of the region under
/// z -> sqrt(z + c - rho^2).  Requires p > 2.
LpStrip strip_image(const ParabolicRegion& region);

/// Principal sqrt(z + c - rho^2); throws std::domain_error exactly on the
/// excluded ray { z real, z <= rho^2 - c }.
Complex branch_mu(double rho, double shift, Complex z);
Complex branch_mu(const ParabolicRegion& region, Complex z);

/// One eigenfunction atom: z is the (Laplacian - c)-eigenvalue, mu the
/// spectral parameter of phi_{-mu}, coeff its weight in a span.
struct EigenAtom {
    Complex z;
    Complex mu;
    Complex coeff;
};

/// Chaos threshold of a product of rank-one factors: sum of the factor
/// thresholds.  Requires a nonempty list.
double product_threshold(std::span<const double> thresholds);

/// Model L^2 = L^p spectra of euclidean / compact-type factors: subsets of
/// the real line closed under the product (Minkowski) sum.
struct RealSpectrum {
    enum class Kind { ray, points } kind = Kind::ray;
    double ray_start = 0.0;
    std::vector<double> points;

    static RealSpectrum euclidean();  // [0, infinity)
    static RealSpectrum compact(std::vector<double> eigenvalues);
    bool is_real() const { return true; }  // by construction

    /// Imaginary-axis section of a real set: {0} or empty; never an interval.
    AxisSection imaginary_axis_section() const;
};

RealSpectrum spectrum_sum(const RealSpectrum& a, const RealSpectrum& b);

}  // namespace hypheat
