#include "hypheat/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hypheat/quadrature.hpp"
#include "hypheat/spherical.hpp"

namespace hypheat {

namespace {

void check_config(const SemigroupConfig& config) {
    if (!(config.p > 1.0)) throw std::invalid_argument("semigroup: p must be > 1");
    if (!(config.t >= 0.0)) throw std::invalid_argument("semigroup: t must be >= 0");
}

SpectralGrid default_spectral_grid(const SemigroupConfig& config, double r_max,
                                   const EvolveOptions& opts) {
    double lambda_max = opts.lambda_max;
    if (lambda_max <= 0.0) {
        // multiplier e^{-t lambda^2} below 1e-20 past this frequency
        lambda_max = std::clamp(std::sqrt(46.0 / std::max(config.t, 1e-3)), 8.0, 26.0);
    }
    double panel = opts.lambda_panel;
    if (panel <= 0.0) panel = std::min(0.25, 6.0 / r_max);
    int panels = std::max(1, static_cast<int>(std::ceil(lambda_max / panel)));
    return SpectralGrid::gauss_legendre(lambda_max, panels, opts.lambda_order);
}

std::vector<double> multiplier(const SemigroupConfig& config, const SpectralGrid& grid, double t) {
    const double rho2 = config.space.rho * config.space.rho;
    std::vector<double> m(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        double lam = grid.points[j];
        m[j] = std::exp(-t * (lam * lam + rho2 - config.shift));
    }
    return m;
}

}  // namespace

RadialFunction evolve(const SemigroupConfig& config, const RadialFunction& f,
                      const EvolveOptions& opts) {
    check_config(config);
    if (config.t == 0.0 && opts.lambda_max <= 0.0) {
        // still exercised through the transform pair for t > 0; identity here
        return f;
    }
    SpectralGrid sgrid = default_spectral_grid(config, f.grid.r_max(), opts);
    ForwardResult fwd = forward_transform(config.space, f, sgrid, Complex(0, 0), opts.quad);
    auto m = multiplier(config, sgrid, config.t);
    for (std::size_t j = 0; j < m.size(); ++j) fwd.spectral.values[j] *= m[j];
    return inverse_transform(config.space, fwd.spectral, f.grid, opts.quad);
}

EigenFactor evolve_eigen(const SemigroupConfig& config, Complex z) {
    check_config(config);
    Complex zeta = z + config.shift - config.space.rho * config.space.rho;
    if (zeta.imag() == 0.0 && zeta.real() <= 0.0)
        throw std::domain_error("evolve_eigen: z + c - rho^2 lies on the branch cut");
    Complex factor = std::exp(-config.t * z);
    ModeTrend trend = z.real() > 0.0   ? ModeTrend::decaying
                      : z.real() < 0.0 ? ModeTrend::growing
                                       : ModeTrend::unimodular;
    return {factor, trend};
}

std::vector<std::pair<double, double>> orbit_trace(const SemigroupConfig& config,
                                                   const RadialFunction& f,
                                                   std::span<const double> times,
                                                   const EvolveOptions& opts) {
    check_config(config);
    double prev = -1.0;
    for (double t : times) {
        if (t < 0.0 || t < prev) throw std::invalid_argument("orbit_trace: times must be increasing and >= 0");
        prev = t;
    }
    SemigroupConfig base = config;
    base.t = times.empty() ? 0.0 : times.back();
    SpectralGrid sgrid = default_spectral_grid(base, f.grid.r_max(), opts);
    ForwardResult fwd = forward_transform(config.space, f, sgrid, Complex(0, 0), opts.quad);

    std::vector<std::pair<double, double>> trace;
    trace.reserve(times.size());
    for (double t : times) {
        SpectralFunction g = fwd.spectral;
        auto m = multiplier(config, sgrid, t);
        for (std::size_t j = 0; j < m.size(); ++j) g.values[j] *= m[j];
        RadialFunction ft = inverse_transform(config.space, g, f.grid, opts.quad);
        trace.emplace_back(t, lp_norm(config.space, ft, config.p));
    }
    return trace;
}

RadialFunction synthesize_span(const HyperbolicSpace& space, std::span<const EigenAtom> atoms,
                               const RadialGrid& grid) {
    RadialFunction out;
    out.grid = grid;
    out.values.assign(grid.size(), Complex(0, 0));
    for (const EigenAtom& atom : atoms) {
        auto phi = spherical_values(space, -atom.mu, grid.points);
        for (std::size_t i = 0; i < grid.size(); ++i) out.values[i] += atom.coeff * phi[i];
    }
    return out;
}

std::vector<std::pair<double, double>> orbit_trace(const SemigroupConfig& config,
                                                   std::span<const EigenAtom> atoms,
                                                   const RadialGrid& grid,
                                                   std::span<const double> times) {
    check_config(config);
    std::vector<std::vector<Complex>> phis;
    phis.reserve(atoms.size());
    for (const EigenAtom& atom : atoms) phis.push_back(spherical_values(config.space, -atom.mu, grid.points));

    std::vector<std::pair<double, double>> trace;
    trace.reserve(times.size());
    RadialFunction ft;
    ft.grid = grid;
    for (double t : times) {
        if (t < 0.0) throw std::invalid_argument("orbit_trace: negative time");
        ft.values.assign(grid.size(), Complex(0, 0));
        for (std::size_t a = 0; a < atoms.size(); ++a) {
            Complex factor = atoms[a].coeff * std::exp(-t * atoms[a].z);
            for (std::size_t i = 0; i < grid.size(); ++i) ft.values[i] += factor * phis[a][i];
        }
        trace.emplace_back(t, lp_norm(config.space, ft, config.p));
    }
    return trace;
}

double heat_kernel_h3(double t, double r) {
    if (!(t > 0.0) || r < 0.0) throw std::invalid_argument("heat_kernel_h3: t > 0, r >= 0 required");
    double rs = r < 1e-6 ? 1.0 - r * r / 6.0 : r / std::sinh(r);
    return std::pow(4.0 * std::numbers::pi * t, -1.5) * rs * std::exp(-t - r * r / (4.0 * t));
}

RadialFunction evolve_convolution_h3(const SemigroupConfig& config, const RadialFunction& f,
                                     const TransformOptions& opts) {
    check_config(config);
    if (config.space.dim != 3) throw std::invalid_argument("evolve_convolution_h3: H^3 only");
    if (config.t == 0.0) return f;

    const double t = config.t;
    const double r_max = f.grid.r_max();
    quad::UniformInterpolant interp(f.grid, f.values);
    int panels = std::max(1, static_cast<int>(std::ceil(r_max / opts.panel_width)));
    quad::PanelMesh mesh = quad::panel_mesh(0.0, r_max, panels, opts.order);

    std::vector<Complex> fs(mesh.nodes.size());
    std::vector<double> sh(mesh.nodes.size());
    for (std::size_t q = 0; q < mesh.nodes.size(); ++q) {
        fs[q] = interp(mesh.nodes[q]);
        sh[q] = std::sinh(mesh.nodes[q]);
    }

    const double front = std::exp(t * (config.shift - 1.0)) / std::sqrt(4.0 * std::numbers::pi * t);
    RadialFunction out;
    out.grid = f.grid;
    out.values.resize(f.grid.size());
    for (std::size_t i = 0; i < f.grid.size(); ++i) {
        const double r = f.grid.points[i];
        quad::KahanSumC acc;
        if (r < 1e-9) {
            for (std::size_t q = 0; q < mesh.nodes.size(); ++q) {
                double s = mesh.nodes[q];
                acc.add(mesh.weights[q] * fs[q] * sh[q] * (s / t) * std::exp(-s * s / (4.0 * t)));
            }
        } else {
            const double denom = -std::expm1(-2.0 * r);
            for (std::size_t q = 0; q < mesh.nodes.size(); ++q) {
                double s = mesh.nodes[q];
                double kernel = 2.0 * std::exp(-(r - s) * (r - s) / (4.0 * t) - r) *
                                (-std::expm1(-r * s / t)) / denom;
                acc.add(mesh.weights[q] * fs[q] * sh[q] * kernel);
            }
        }
        out.values[i] = front * acc.value();
    }
    return out;
}

}  // namespace hypheat
