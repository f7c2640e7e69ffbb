#include "hypheat/transform.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "hypheat/quadrature.hpp"
#include "hypheat/spherical.hpp"

namespace hypheat {

namespace {

int panels_for(double length, double width) {
    return std::max(1, static_cast<int>(std::ceil(length / width)));
}

// kappa * sum_j w_j g_j |c|^{-2}(lambda_j) phi_{lambda_j}(r) on the radii
std::vector<Complex> inverse_core(const HyperbolicSpace& space, const SpectralFunction& g,
                                  std::span<const double> radii, double kappa) {
    const SpectralGrid& sg = g.grid;
    if (sg.weights.empty())
        throw std::invalid_argument("inverse_transform: spectral grid carries no quadrature weights");
    if (sg.points.size() != g.values.size())
        throw std::invalid_argument("inverse_transform: value/grid size mismatch");

    // integrability surrogate: density-weighted mass in the top of the range
    std::vector<double> mass(sg.points.size());
    quad::KahanSum total, tail;
    const double tail_from = 0.95 * sg.lambda_max;
    double peak = 0.0;
    for (std::size_t j = 0; j < sg.points.size(); ++j) {
        mass[j] = sg.weights[j] * std::abs(g.values[j]) * plancherel_density(space, sg.points[j]);
        total.add(mass[j]);
        peak = std::max(peak, mass[j]);
        if (sg.points[j] > tail_from) tail.add(mass[j]);
    }
    if (total.value() > 0.0 && tail.value() > 1e-6 * total.value())
        throw TruncationError(
            "inverse_transform: density-weighted integrand is not negligible at the truncation "
            "frequency (quadrature not Cauchy in lambda_max)");

    std::vector<quad::KahanSumC> acc(radii.size());
    for (std::size_t j = 0; j < sg.points.size(); ++j) {
        if (mass[j] <= 1e-18 * peak) continue;  // below the roundoff floor of the sum
        Complex cj = sg.weights[j] * g.values[j] * plancherel_density(space, sg.points[j]);
        auto phi = spherical_values(space, Complex(sg.points[j], 0.0), radii);
        for (std::size_t i = 0; i < radii.size(); ++i) acc[i].add(cj * phi[i]);
    }
    std::vector<Complex> out(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) out[i] = kappa * acc[i].value();
    return out;
}

struct ForwardWork {
    std::vector<Complex> values;
    std::vector<double> tails;  // per-lambda last-panel magnitude
};

ForwardWork forward_core(const HyperbolicSpace& space, const quad::UniformInterpolant& f,
                         double r_max, const SpectralGrid& sgrid, Complex offset,
                         const TransformOptions& opts, int panel_scale) {
    const int panels = panel_scale * panels_for(r_max, opts.panel_width);
    quad::PanelMesh mesh = quad::panel_mesh(0.0, r_max, panels, opts.order);
    const std::size_t nq = mesh.nodes.size();
    const std::size_t per_panel = static_cast<std::size_t>(opts.order);

    std::vector<Complex> fj(nq);
    std::vector<double> dens(nq);
    for (std::size_t q = 0; q < nq; ++q) {
        fj[q] = f(mesh.nodes[q]);
        dens[q] = volume_density(space, mesh.nodes[q]);
    }

    ForwardWork work;
    work.values.resize(sgrid.size());
    work.tails.resize(sgrid.size());
    for (std::size_t j = 0; j < sgrid.size(); ++j) {
        Complex lam = -(Complex(sgrid.points[j], 0.0) + offset);
        auto phi = spherical_values(space, lam, mesh.nodes);
        quad::KahanSumC acc, last;
        for (std::size_t q = 0; q < nq; ++q) {
            Complex term = mesh.weights[q] * fj[q] * phi[q] * dens[q];
            acc.add(term);
            if (q + per_panel >= nq) last.add(term);
        }
        work.values[j] = acc.value();
        work.tails[j] = std::abs(last.value());
    }
    return work;
}

}  // namespace

SpectralGrid SpectralGrid::gauss_legendre(double lambda_max, int panels, int order) {
    if (!(lambda_max > 0.0)) throw std::invalid_argument("SpectralGrid: lambda_max must be positive");
    quad::PanelMesh mesh = quad::panel_mesh(0.0, lambda_max, panels, order);
    SpectralGrid grid;
    grid.points = std::move(mesh.nodes);
    grid.weights = std::move(mesh.weights);
    grid.lambda_max = lambda_max;
    return grid;
}

ForwardResult forward_transform(const HyperbolicSpace& space, const RadialFunction& f,
                                const SpectralGrid& grid, Complex lambda_offset,
                                const TransformOptions& opts) {
    if (grid.points.empty()) throw std::invalid_argument("forward_transform: empty spectral grid");
    for (std::size_t j = 0; j + 1 < grid.points.size(); ++j)
        if (!(grid.points[j] < grid.points[j + 1]))
            throw std::invalid_argument("forward_transform: spectral grid must be increasing");
    if (!(grid.points.front() > 0.0))
        throw std::invalid_argument("forward_transform: spectral points must be positive");

    quad::UniformInterpolant interp(f.grid, f.values);
    const double r_max = f.grid.r_max();
    ForwardWork work = forward_core(space, interp, r_max, grid, lambda_offset, opts, 1);

    double scale = 0.0, tail = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        scale = std::max(scale, std::abs(work.values[j]));
        tail = std::max(tail, work.tails[j]);
    }
    double tail_fraction = scale > 0.0 ? tail / scale : (tail > 0.0 ? 1.0 : 0.0);
    if (tail_fraction > opts.tail_tol)
        throw TruncationError(
            "forward_transform: truncation-dominated integral (last-panel tail estimate " +
            std::to_string(tail_fraction) + " exceeds tolerance)");

    // coarse-vs-fine estimate on a few representative frequencies
    double quad_error = 0.0;
    if (scale > 0.0) {
        SpectralGrid probe;
        probe.lambda_max = grid.lambda_max;
        std::size_t n = grid.size();
        for (std::size_t j : {std::size_t(0), n / 2, n - 1}) probe.points.push_back(grid.points[j]);
        std::sort(probe.points.begin(), probe.points.end());
        probe.points.erase(std::unique(probe.points.begin(), probe.points.end()), probe.points.end());
        ForwardWork fine = forward_core(space, interp, r_max, probe, lambda_offset, opts, 2);
        for (std::size_t j = 0; j < probe.points.size(); ++j) {
            auto it = std::lower_bound(grid.points.begin(), grid.points.end(), probe.points[j]);
            Complex coarse = work.values[static_cast<std::size_t>(it - grid.points.begin())];
            quad_error = std::max(quad_error, std::abs(coarse - fine.values[j]) / scale);
        }
    }

    ForwardResult result;
    result.spectral.grid = grid;
    result.spectral.values = std::move(work.values);
    result.spectral.strip_half_width = std::abs(lambda_offset.imag());
    result.tail_fraction = tail_fraction;
    result.quad_error = quad_error;
    return result;
}

RadialFunction inverse_transform(const HyperbolicSpace& space, const SpectralFunction& g,
                                 const RadialGrid& grid, const TransformOptions&) {
    RadialFunction out;
    out.grid = grid;
    out.values = inverse_core(space, g, grid.points, inversion_constant(space));
    return out;
}

std::vector<Complex> inverse_at(const HyperbolicSpace& space, const SpectralFunction& g,
                                std::span<const double> radii, const TransformOptions&) {
    return inverse_core(space, g, radii, inversion_constant(space));
}

double calibrate_inversion_constant(const HyperbolicSpace& space, const CalibrationOptions& opts) {
    const double w = opts.bump_width;
    // wide bumps need a larger truncation radius to clear the tail gate
    RadialGrid grid = RadialGrid::uniform(opts.h, std::max(opts.r_max, 6.0 * w + 2.0));
    RadialFunction f = RadialFunction::sample(grid, [w](double r) { return std::exp(-(r / w) * (r / w)); });

    SpectralGrid sgrid = SpectralGrid::gauss_legendre(opts.lambda_max, opts.lambda_panels, opts.order);
    TransformOptions topts;
    topts.panel_width = 0.125;
    topts.order = opts.order;
    ForwardResult fwd = forward_transform(space, f, sgrid, Complex(0, 0), topts);

    std::vector<Complex> rt = inverse_core(space, fwd.spectral, grid.points, 1.0);

    // least-squares scale in L^2(J): kappa = <rt, f> / <rt, rt>
    auto weights = quad::simpson_weights(grid.size(), grid.spacing);
    quad::KahanSum num, den;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double wj = weights[i] * volume_density(space, grid.points[i]);
        num.add(wj * (std::conj(rt[i]) * f.values[i]).real());
        den.add(wj * std::norm(rt[i]));
    }
    if (!(den.value() > 0.0)) throw std::runtime_error("calibrate_inversion_constant: degenerate round trip");
    return num.value() / den.value();
}

double inversion_constant(const HyperbolicSpace& space) {
    static std::map<int, double> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(space.dim);
    if (it == cache.end()) it = cache.emplace(space.dim, calibrate_inversion_constant(space)).first;
    return it->second;
}

}  // namespace hypheat
