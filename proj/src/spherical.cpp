#include "hypheat/spherical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hypheat/ode.hpp"

namespace hypheat {

namespace {

constexpr double kPi = std::numbers::pi;

// sin(x)/x, entire
Complex sinc_c(Complex x) {
    if (std::abs(x) < 1e-4) {
        Complex x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

// r / sinh(r)
double r_over_sinh(double r) {
    if (r < 1e-6) return 1.0 - r * r / 6.0;
    return r / std::sinh(r);
}

// e^r * r / sinh(r) = 2 r / (1 - e^{-2r})
double scaled_r_over_sinh(double r) {
    if (r == 0.0) return 1.0;
    return 2.0 * r / (-std::expm1(-2.0 * r));
}

// coefficients of r*coth(r) = sum c_j r^{2j}, via series division
const std::vector<double>& coth_series() {
    static const std::vector<double> c = [] {
        constexpr int m = 40;
        std::vector<double> s(m), h(m), out(m);
        double f = 1.0;  // (2k)! running factorial
        for (int k = 0; k < m; ++k) {
            if (k > 0) f *= (2.0 * k - 1.0) * (2.0 * k);
            h[k] = 1.0 / f;                      // 1/(2k)!
            s[k] = 1.0 / (f * (2.0 * k + 1.0));  // 1/(2k+1)!
        }
        for (int j = 0; j < m; ++j) {
            double acc = h[j];
            for (int i = 0; i < j; ++i) acc -= out[i] * s[j - i];
            out[j] = acc;
        }
        return out;
    }();
    return c;
}

// Taylor coefficients a_m of phi(r) = sum a_m r^{2m} from the recurrence
// a_m = -(mu a_{m-1} + 2 (n-1) sum_{k<m} k c_{m-k} a_k) / (2m (2m - 2 + n))
std::vector<Complex> phi_series_coeffs(int dim, Complex mu, int terms) {
    const auto& c = coth_series();
    std::vector<Complex> a(terms);
    a[0] = 1.0;
    for (int m = 1; m < terms; ++m) {
        Complex acc = mu * a[m - 1];
        for (int k = 1; k < m; ++k) acc += 2.0 * (dim - 1) * static_cast<double>(k) * c[m - k] * a[k];
        a[m] = -acc / (2.0 * m * (2.0 * m - 2.0 + dim));
    }
    return a;
}

struct SeriesEval {
    Complex phi;
    Complex dphi;
};

SeriesEval eval_series(const std::vector<Complex>& a, double r) {
    const double r2 = r * r;
    Complex phi = 0.0, dphi = 0.0, pw = 1.0;
    for (std::size_t m = 0; m < a.size(); ++m) {
        phi += a[m] * pw;
        if (m + 1 < a.size()) dphi += 2.0 * (m + 1.0) * a[m + 1] * pw * r;
        pw *= r2;
    }
    return {phi, dphi};
}

// scaled-ODE integration of u = e^{rho r} phi on increasing radii
std::vector<Complex> scaled_ode(const HyperbolicSpace& space, Complex lambda,
                                std::span<const double> radii) {
    const double rho = space.rho;
    const Complex lam2 = lambda * lambda;
    const Complex mu = lam2 + rho * rho;

    const double r_seed = std::min(0.35, 1.0 / (1.0 + std::abs(lambda)));
    auto coeffs = phi_series_coeffs(space.dim, mu, 34);

    std::vector<Complex> out(radii.size());
    std::size_t i = 0;
    for (; i < radii.size() && radii[i] <= r_seed; ++i) {
        auto s = eval_series(coeffs, radii[i]);
        out[i] = std::exp(rho * radii[i]) * s.phi;
    }
    if (i == radii.size()) return out;

    auto seed = eval_series(coeffs, r_seed);
    detail::OdeState state;
    state.y = std::exp(rho * r_seed) * seed.phi;
    state.dy = std::exp(rho * r_seed) * (seed.dphi + rho * seed.phi);

    auto rhs = [rho, lam2](double r, const detail::OdeState& s) -> detail::OdeState {
        // u'' + 2 rho q u' - (2 rho^2 q - lambda^2) u = 0 with q = coth(r) - 1
        double q = r > 1e-2 ? 2.0 / std::expm1(2.0 * r) : 1.0 / std::tanh(r) - 1.0;
        return {s.dy, -2.0 * rho * q * s.dy + (2.0 * rho * rho * q - lam2) * s.y};
    };

    std::vector<detail::OdeState> states(radii.size() - i);
    detail::integrate_to_nodes(rhs, r_seed, state, radii.subspan(i), states);
    for (std::size_t j = 0; j < states.size(); ++j) out[i + j] = states[j].y;
    return out;
}

void check_radii(std::span<const double> radii) {
    double prev = -1.0;
    for (double r : radii) {
        if (!(r >= 0.0) || !std::isfinite(r)) throw std::invalid_argument("radii must be finite and >= 0");
        if (r < prev) throw std::invalid_argument("radii must be nondecreasing");
        prev = r;
    }
}

}  // namespace

std::vector<Complex> spherical_values_scaled(const HyperbolicSpace& space, Complex lambda,
                                             std::span<const double> radii) {
    check_radii(radii);
    if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()))
        throw std::invalid_argument("spherical_values: lambda must be finite");
    if (space.dim == 3) {
        std::vector<Complex> out(radii.size());
        for (std::size_t i = 0; i < radii.size(); ++i)
            out[i] = sinc_c(lambda * radii[i]) * scaled_r_over_sinh(radii[i]);
        return out;
    }
    return scaled_ode(space, lambda, radii);
}

std::vector<Complex> spherical_values(const HyperbolicSpace& space, Complex lambda,
                                      std::span<const double> radii) {
    check_radii(radii);
    if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()))
        throw std::invalid_argument("spherical_values: lambda must be finite");
    if (space.dim == 3) {
        std::vector<Complex> out(radii.size());
        for (std::size_t i = 0; i < radii.size(); ++i)
            out[i] = sinc_c(lambda * radii[i]) * r_over_sinh(radii[i]);
        return out;
    }
    auto scaled = scaled_ode(space, lambda, radii);
    for (std::size_t i = 0; i < radii.size(); ++i) scaled[i] *= std::exp(-space.rho * radii[i]);
    return scaled;
}

RadialFunction spherical_function(const HyperbolicSpace& space, Complex lambda,
                                  const RadialGrid& grid) {
    RadialFunction out;
    out.grid = grid;
    out.values = spherical_values(space, lambda, grid.points);
    return out;
}

std::vector<Complex> spherical_values_ode(const HyperbolicSpace& space, Complex lambda,
                                          std::span<const double> radii) {
    check_radii(radii);
    auto scaled = scaled_ode(space, lambda, radii);
    for (std::size_t i = 0; i < radii.size(); ++i) scaled[i] *= std::exp(-space.rho * radii[i]);
    return scaled;
}

namespace detail {

Complex log_gamma(Complex z) {
    // Lanczos, g = 7; shift into Re >= 1.5 where the fit applies
    static const double coeffs[9] = {0.99999999999980993,    676.5203681218851,
                                     -1259.1392167224028,    771.32342877765313,
                                     -176.61502916214059,    12.507343278686905,
                                     -0.13857109526572012,   9.9843695780195716e-6,
                                     1.5056327351493116e-7};
    Complex shift_log = 0.0;
    while (z.real() < 1.5) {
        shift_log += std::log(z);
        z += 1.0;
    }
    z -= 1.0;
    Complex x = coeffs[0];
    for (int i = 1; i < 9; ++i) x += coeffs[i] / (z + static_cast<double>(i));
    Complex t = z + 7.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x) - shift_log;
}

}  // namespace detail

Complex harish_chandra_c(const HyperbolicSpace& space, Complex lambda) {
    if (std::abs(lambda) < 1e-12) throw std::domain_error("harish_chandra_c: pole at lambda = 0");
    const int n = space.dim;
    if (n == 3) return 1.0 / (Complex(0, 1) * lambda);
    const double rho = space.rho;
    const Complex il = Complex(0, 1) * lambda;
    // 2^{rho - i lambda} Gamma(n/2) Gamma(i lambda)
    //   / (Gamma(il/2 + (n-1)/4) Gamma(il/2 + (n+1)/4))
    Complex log_c = (rho - il) * std::log(2.0) + detail::log_gamma(Complex(0.5 * n, 0.0)) +
                    detail::log_gamma(il) - detail::log_gamma(0.5 * il + 0.25 * (n - 1)) -
                    detail::log_gamma(0.5 * il + 0.25 * (n + 1));
    return std::exp(log_c);
}

double plancherel_density(const HyperbolicSpace& space, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("plancherel_density: lambda must be positive");
    if (space.dim == 3) return lambda * lambda;
    Complex c = harish_chandra_c(space, Complex(lambda, 0.0));
    double a = std::abs(c);
    return 1.0 / (a * a);
}

Complex c_function_asymptotic_fit(const HyperbolicSpace& space, double lambda, double r_lo,
                                  double r_hi) {
    if (!(lambda > 0.0)) throw std::invalid_argument("c_function_asymptotic_fit: lambda > 0 required");
    constexpr int m = 64;
    std::vector<double> radii(m);
    for (int i = 0; i < m; ++i) radii[i] = r_lo + (r_hi - r_lo) * i / (m - 1.0);
    auto u = spherical_values_scaled(space, Complex(lambda, 0.0), radii);
    // least squares u(r) ~ cp e^{i lambda r} + cm e^{-i lambda r}
    Complex a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
    for (int i = 0; i < m; ++i) {
        Complex ep = std::exp(Complex(0, lambda * radii[i]));
        Complex em = std::conj(ep);
        a11 += std::conj(ep) * ep;
        a12 += std::conj(ep) * em;
        a22 += std::conj(em) * em;
        b1 += std::conj(ep) * u[i];
        b2 += std::conj(em) * u[i];
    }
    Complex det = a11 * a22 - a12 * std::conj(a12);
    if (std::abs(det) < 1e-12) throw std::runtime_error("c_function_asymptotic_fit: degenerate fit");
    Complex cp = (a22 * b1 - a12 * b2) / det;
    return cp;
}

LpStrip lp_strip(const HyperbolicSpace& space, double p) {
    if (!(p > 2.0)) throw std::invalid_argument("lp_strip: requires p > 2");
    return {p, space.rho * (1.0 - 2.0 / p)};
}

StripPosition lp_membership(const HyperbolicSpace& space, Complex lambda, double p, double tol) {
    if (!(p > 2.0)) throw std::invalid_argument("lp_membership: requires p > 2");
    const double half_width = space.rho * (1.0 - 2.0 / p);
    const double im = std::abs(lambda.imag());
    if (im < half_width - tol) return StripPosition::inside;
    if (im <= half_width + tol) return StripPosition::boundary;
    return StripPosition::outside;
}

}  // namespace hypheat
