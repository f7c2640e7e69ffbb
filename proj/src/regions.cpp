#include "hypheat/regions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hypheat {

namespace {
constexpr double kEqTol = 1e-12;
}

double apex_threshold(double rho, double p) {
    if (!(rho > 0.0)) throw std::invalid_argument("apex_threshold: rho must be positive");
    if (!(p > 1.0)) throw std::invalid_argument("apex_threshold: p must be > 1");
    return 4.0 * rho * rho / p * (1.0 - 1.0 / p);
}

double ParabolicRegion::half_width() const { return rho * std::abs(2.0 / p - 1.0); }

double ParabolicRegion::apex() const { return apex_threshold(rho, p); }

RegionPosition region_contains(const ParabolicRegion& region, Complex w, double tol) {
    if (!(region.p > 1.0)) throw std::invalid_argument("region_contains: p must be > 1");
    if (region.p == 2.0) {
        // degenerate real ray [rho^2 - c, infinity); every member is boundary
        if (std::abs(w.imag()) <= tol && w.real() >= region.rho * region.rho - region.shift - tol)
            return RegionPosition::boundary;
        return RegionPosition::exterior;
    }
    Complex zeta = w + region.shift - region.rho * region.rho;
    double im = std::abs(std::sqrt(zeta).imag());
    double b = region.half_width();
    if (im < b - tol) return RegionPosition::interior;
    if (im <= b + tol) return RegionPosition::boundary;
    return RegionPosition::exterior;
}

Complex parabola_boundary(const ParabolicRegion& region, double x) {
    Complex z(x, region.half_width());
    return region.rho * region.rho + z * z - region.shift;
}

AxisSection imaginary_axis_section(const ParabolicRegion& region) {
    if (!(region.p > 1.0)) throw std::invalid_argument("imaginary_axis_section: p must be > 1");
    const double rho2 = region.rho * region.rho;
    if (region.p < 2.0) {
        // the point spectrum is empty for 1 < p < 2; nothing meets the axis
        return {AxisSection::Kind::empty, 0.0};
    }
    if (region.p == 2.0) {
        if (region.shift >= rho2 - kEqTol) return {AxisSection::Kind::point, 0.0};
        return {AxisSection::Kind::empty, 0.0};
    }
    const double cp = region.apex();
    if (region.shift > cp + kEqTol) {
        double y = 2.0 * region.half_width() * std::sqrt(region.shift - cp);
        return {AxisSection::Kind::interval, y};
    }
    if (region.shift >= cp - kEqTol) return {AxisSection::Kind::point, 0.0};
    return {AxisSection::Kind::empty, 0.0};
}

double sector_half_angle(double p) {
    if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("sector_half_angle: p in (1, inf)");
    return std::atan(std::abs(p - 2.0) / (2.0 * std::sqrt(p - 1.0)));
}

LpStrip strip_image(const ParabolicRegion& region) {
    if (!(region.p > 2.0)) throw std::invalid_argument("strip_image: requires p > 2");
    return {region.p, region.half_width()};
}

Complex branch_mu(double rho, double shift, Complex z) {
    Complex zeta = z + shift - rho * rho;
    if (zeta.imag() == 0.0 && zeta.real() <= 0.0)
        throw std::domain_error("branch_mu: z on the excluded ray (branch cut of the square root)");
    return std::sqrt(zeta);
}

Complex branch_mu(const ParabolicRegion& region, Complex z) {
    return branch_mu(region.rho, region.shift, z);
}

double product_threshold(std::span<const double> thresholds) {
    if (thresholds.empty()) throw std::invalid_argument("product_threshold: empty factor list");
    double sum = 0.0;
    for (double c : thresholds) sum += c;
    return sum;
}

RealSpectrum RealSpectrum::euclidean() {
    RealSpectrum s;
    s.kind = Kind::ray;
    s.ray_start = 0.0;
    return s;
}

RealSpectrum RealSpectrum::compact(std::vector<double> eigenvalues) {
    if (eigenvalues.empty()) throw std::invalid_argument("RealSpectrum::compact: empty spectrum");
    RealSpectrum s;
    s.kind = Kind::points;
    std::sort(eigenvalues.begin(), eigenvalues.end());
    eigenvalues.erase(std::unique(eigenvalues.begin(), eigenvalues.end()), eigenvalues.end());
    s.points = std::move(eigenvalues);
    return s;
}

AxisSection RealSpectrum::imaginary_axis_section() const {
    if (kind == Kind::ray)
        return ray_start <= 0.0 ? AxisSection{AxisSection::Kind::point, 0.0}
                                : AxisSection{AxisSection::Kind::empty, 0.0};
    for (double x : points)
        if (std::abs(x) <= kEqTol) return {AxisSection::Kind::point, 0.0};
    return {AxisSection::Kind::empty, 0.0};
}

RealSpectrum spectrum_sum(const RealSpectrum& a, const RealSpectrum& b) {
    RealSpectrum out;
    if (a.kind == RealSpectrum::Kind::ray && b.kind == RealSpectrum::Kind::ray) {
        out.kind = RealSpectrum::Kind::ray;
        out.ray_start = a.ray_start + b.ray_start;
    } else if (a.kind == RealSpectrum::Kind::ray || b.kind == RealSpectrum::Kind::ray) {
        const RealSpectrum& ray = a.kind == RealSpectrum::Kind::ray ? a : b;
        const RealSpectrum& pts = a.kind == RealSpectrum::Kind::ray ? b : a;
        out.kind = RealSpectrum::Kind::ray;
        out.ray_start = ray.ray_start + *std::min_element(pts.points.begin(), pts.points.end());
    } else {
        out.kind = RealSpectrum::Kind::points;
        out.points.reserve(a.points.size() * b.points.size());
        for (double x : a.points)
            for (double y : b.points) out.points.push_back(x + y);
        std::sort(out.points.begin(), out.points.end());
        out.points.erase(std::unique(out.points.begin(), out.points.end()), out.points.end());
    }
    return out;
}

}  // namespace hypheat
