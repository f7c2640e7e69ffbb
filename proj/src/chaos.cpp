#include "hypheat/chaos.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "hypheat/quadrature.hpp"
#include "hypheat/spherical.hpp"
#include "hypheat/version.hpp"

namespace hypheat {

namespace {

constexpr double kPi = std::numbers::pi;

double norm_p_on(const HyperbolicSpace& space, const RadialGrid& grid,
                 std::span<const Complex> values, double p) {
    RadialFunction f;
    f.grid = grid;
    f.values.assign(values.begin(), values.end());
    return lp_norm(space, f, p);
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

}  // namespace

RadialFunction eigen_map(const HyperbolicSpace& space, double shift, Complex z,
                         const RadialGrid& grid) {
    Complex mu = branch_mu(space.rho, shift, z);
    return spherical_function(space, -mu, grid);
}

EigenAtom make_atom(const ParabolicRegion& region, Complex z, Complex coeff) {
    return {z, branch_mu(region, z), coeff};
}

PeriodicPoint periodic_point(const HyperbolicSpace& space, double p, double shift,
                             double t_period, std::span<const std::pair<int, Complex>> harmonics,
                             const RadialGrid& grid) {
    if (!(t_period > 0.0)) throw std::invalid_argument("periodic_point: period must be positive");
    if (harmonics.empty()) throw std::invalid_argument("periodic_point: no harmonics given");
    ParabolicRegion region{space.rho, p, shift};
    AxisSection section = imaginary_axis_section(region);
    if (!section.has_interior())
        throw std::invalid_argument("periodic_point: imaginary-axis section has empty interior");

    PeriodicPoint point;
    point.t_period = t_period;
    for (auto [k, a] : harmonics) {
        if (k == 0) throw std::invalid_argument("periodic_point: harmonic index must be nonzero");
        double y = 2.0 * kPi * k / t_period;
        if (!(std::abs(y) < section.height))
            throw std::invalid_argument("periodic_point: harmonic " + std::to_string(k) +
                                        " gives |2 pi k / T| = " + fmt(std::abs(y)) +
                                        " outside the section bound Y = " + fmt(section.height));
        point.atoms.push_back(make_atom(region, Complex(0.0, y), a));
    }
    point.profile = synthesize_span(space, point.atoms, grid);

    double err = 0.0;
    for (const EigenAtom& atom : point.atoms)
        err = std::max(err, std::abs(std::exp(-t_period * atom.z) - 1.0));
    point.eigen_factor_error = err;
    return point;
}

double window_value(const WindowConfig& w, double r) {
    double x = (r - w.plateau) / w.rolloff;
    if (x <= 0.0) return 1.0;
    if (x >= 1.0) return 0.0;
    double ga = std::exp(-1.0 / x);
    double gb = std::exp(-1.0 / (1.0 - x));
    return gb / (ga + gb);
}

double windowed_period_error(const HyperbolicSpace& space, double p, double shift,
                             const PeriodicPoint& point, const WindowConfig& window) {
    RadialGrid grid = RadialGrid::uniform(window.h, window.r_max);
    RadialFunction fw = synthesize_span(space, point.atoms, grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
        fw.values[i] *= window_value(window, grid.points[i]);

    TransformOptions quad;
    quad.panel_width = window.r_panel;
    quad.order = window.r_order;
    SpectralGrid sgrid = SpectralGrid::gauss_legendre(
        window.lambda_max,
        std::max(1, static_cast<int>(std::ceil(window.lambda_max / window.lambda_panel))),
        window.lambda_order);
    ForwardResult fwd = forward_transform(space, fw, sgrid, Complex(0, 0), quad);
    const double rho2 = space.rho * space.rho;
    for (std::size_t j = 0; j < sgrid.size(); ++j) {
        double lam = sgrid.points[j];
        fwd.spectral.values[j] *= std::exp(-point.t_period * (lam * lam + rho2 - shift));
    }

    RadialGrid cmp = RadialGrid::uniform(window.h, window.compare_radius);
    std::vector<Complex> evolved = inverse_at(space, fwd.spectral, cmp.points, quad);
    std::vector<Complex> diff(cmp.size());
    for (std::size_t i = 0; i < cmp.size(); ++i) diff[i] = evolved[i] - fw.values[i];

    double denom = norm_p_on(space, cmp, std::span<const Complex>(fw.values.data(), cmp.size()), p);
    double num = norm_p_on(space, cmp, diff, p);
    return denom > 0.0 ? num / denom : num;
}

DensityFit density_fit(const HyperbolicSpace& space, double p, const RadialFunction& target,
                       std::span<const EigenAtom> dictionary, const FitOptions& opts) {
    if (dictionary.empty()) throw std::invalid_argument("density_fit: empty dictionary");
    for (std::size_t i = 0; i < dictionary.size(); ++i)
        for (std::size_t j = i + 1; j < dictionary.size(); ++j)
            if (std::abs(dictionary[i].z - dictionary[j].z) <= 1e-12)
                throw std::invalid_argument("density_fit: dictionary atoms must be pairwise distinct");
    if (!(p >= 1.0)) throw std::invalid_argument("density_fit: p must be >= 1");

    const int panels = std::max(1, static_cast<int>(std::ceil(opts.r_fit / opts.panel_width)));
    quad::PanelMesh mesh = quad::panel_mesh(0.0, opts.r_fit, panels, opts.order);
    const std::size_t nq = mesh.nodes.size();
    const std::size_t m = dictionary.size();

    std::vector<double> wj(nq);  // quadrature x volume density
    for (std::size_t q = 0; q < nq; ++q) wj[q] = mesh.weights[q] * volume_density(space, mesh.nodes[q]);

    quad::UniformInterpolant interp(target.grid, target.values);
    Eigen::VectorXcd y(nq);
    std::vector<Complex> tvals(nq);
    for (std::size_t q = 0; q < nq; ++q) {
        tvals[q] = interp(mesh.nodes[q]);
        y(static_cast<Eigen::Index>(q)) = std::sqrt(wj[q]) * tvals[q];
    }

    Eigen::MatrixXcd B(nq, m);
    for (std::size_t j = 0; j < m; ++j) {
        auto phi = spherical_values(space, -dictionary[j].mu, mesh.nodes);
        for (std::size_t q = 0; q < nq; ++q)
            B(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(j)) = std::sqrt(wj[q]) * phi[q];
    }

    Eigen::MatrixXcd G = B.adjoint() * B;
    Eigen::VectorXcd rhs = B.adjoint() * y;
    double ridge = opts.ridge_factor * G.trace().real();
    Eigen::MatrixXcd Greg = G;
    Greg.diagonal().array() += ridge;
    Eigen::VectorXcd c = Greg.ldlt().solve(rhs);

    Eigen::VectorXcd resid = y - B * c;
    double ynorm = y.norm();
    DensityFit fit;
    fit.coeffs.assign(c.data(), c.data() + c.size());
    fit.resid_l2 = ynorm > 0.0 ? resid.norm() / ynorm : resid.norm();
    fit.ridge = ridge;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
    double emin = es.eigenvalues().minCoeff();
    double emax = es.eigenvalues().maxCoeff();
    fit.condition = (emax + ridge) / std::max(emin + ridge, 1e-300);

    quad::KahanSum num_p, den_p;
    for (std::size_t q = 0; q < nq; ++q) {
        Complex fitted = resid(static_cast<Eigen::Index>(q)) / std::sqrt(wj[q]);
        num_p.add(wj[q] * std::pow(std::abs(fitted), p));
        den_p.add(wj[q] * std::pow(std::abs(tvals[q]), p));
    }
    fit.resid_lp = den_p.value() > 0.0 ? std::pow(num_p.value() / den_p.value(), 1.0 / p)
                                       : std::pow(num_p.value(), 1.0 / p);
    return fit;
}

std::vector<SeedSample> small_seed_recovery(const HyperbolicSpace& space, double p, double shift,
                                            const RadialFunction& target,
                                            std::span<const EigenAtom> dictionary,
                                            std::span<const double> times, const FitOptions& opts) {
    if (dictionary.empty()) throw std::invalid_argument("small_seed_recovery: empty dictionary");
    ParabolicRegion region{space.rho, p, shift};
    for (const EigenAtom& atom : dictionary) {
        if (!(atom.z.real() < 0.0))
            throw std::invalid_argument("small_seed_recovery: atoms must have Re z < 0");
        if (region_contains(region, atom.z) != RegionPosition::interior)
            throw std::invalid_argument("small_seed_recovery: atom outside the open region");
    }

    DensityFit fit = density_fit(space, p, target, dictionary, opts);

    const RadialGrid& grid = target.grid;
    std::vector<std::vector<Complex>> phis;
    phis.reserve(dictionary.size());
    for (const EigenAtom& atom : dictionary)
        phis.push_back(spherical_values(space, -atom.mu, grid.points));

    double tnorm = lp_norm(space, target, p);
    std::vector<SeedSample> samples;
    samples.reserve(times.size());
    std::vector<Complex> g(grid.size()), recovered(grid.size());
    for (double t : times) {
        if (!(t >= 0.0)) throw std::invalid_argument("small_seed_recovery: negative time");
        std::fill(g.begin(), g.end(), Complex(0, 0));
        std::fill(recovered.begin(), recovered.end(), Complex(0, 0));
        for (std::size_t a = 0; a < dictionary.size(); ++a) {
            Complex seed_c = fit.coeffs[a] * std::exp(t * dictionary[a].z);
            Complex back_c = seed_c * std::exp(-t * dictionary[a].z);  // exact eigen action
            for (std::size_t i = 0; i < grid.size(); ++i) {
                g[i] += seed_c * phis[a][i];
                recovered[i] += back_c * phis[a][i];
            }
        }
        for (std::size_t i = 0; i < grid.size(); ++i) recovered[i] -= target.values[i];
        SeedSample s;
        s.t = t;
        s.seed_norm = norm_p_on(space, grid, g, p);
        s.recovery_error = tnorm > 0.0 ? norm_p_on(space, grid, recovered, p) / tnorm : 0.0;
        samples.push_back(s);
    }
    return samples;
}

NonchaosReport nonchaos_diagnostics(const HyperbolicSpace& space, double p,
                                    std::span<const Complex> lambdas,
                                    std::span<const double> shifts,
                                    std::span<const double> radii_doubling, double h) {
    if (!(p > 1.0) || !(p <= 2.0))
        throw std::invalid_argument("nonchaos_diagnostics: requires 1 < p <= 2");
    if (radii_doubling.empty()) throw std::invalid_argument("nonchaos_diagnostics: no radii");

    NonchaosReport report;
    report.p = p;
    for (double c : shifts) {
        AxisSection s = imaginary_axis_section(ParabolicRegion{space.rho, p, c});
        const char* kind = s.kind == AxisSection::Kind::empty   ? "empty"
                           : s.kind == AxisSection::Kind::point ? "point"
                                                                : "interval";
        report.sections.emplace_back(c, kind);
        if (s.has_interior()) report.all_sections_degenerate = false;
    }

    double r_last = radii_doubling.back();
    RadialGrid grid = RadialGrid::uniform(h, r_last);
    for (Complex lambda : lambdas) {
        NonchaosLambda entry;
        entry.lambda = lambda;
        RadialFunction phi = spherical_function(space, lambda, grid);
        for (double R : radii_doubling) entry.norms.emplace_back(R, lp_norm(space, phi, p, R));
        for (std::size_t i = 0; i + 1 < entry.norms.size(); ++i)
            entry.ratios.push_back(entry.norms[i + 1].second / entry.norms[i].second);
        report.lambdas.push_back(std::move(entry));
    }
    return report;
}

// ---------------------------------------------------------------------------
// certificate assembly

namespace {

struct NestedDictionary {
    std::vector<EigenAtom> atoms;  // nested prefix levels
    std::vector<int> sizes;
};

// deterministic nested sampling of a rectangle in the region: a 5x5 base
// lattice, then seeded-jitter sublattices appended so prefixes are nested
NestedDictionary sample_dictionary(const ParabolicRegion& region, Complex lo, Complex hi,
                                   std::uint64_t seed) {
    NestedDictionary dict;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-0.04, 0.04);
    const double range_re = hi.real() - lo.real();
    const double range_im = hi.imag() - lo.imag();

    const Complex center = 0.5 * (lo + hi);
    auto ensure_interior = [&](Complex z) {
        for (int tries = 0; tries < 60; ++tries) {
            if (region_contains(region, z) == RegionPosition::interior && z.real() != 0.0) return z;
            z = center + 0.9 * (z - center);
        }
        throw std::invalid_argument("sample_dictionary: rectangle not inside the region");
    };

    // base lattice on a /4 spacing, refinement sublattices on /5 spacings with
    // fractional offsets chosen so no two lattice points can coincide
    auto push_lattice = [&](double div, double offset_re, double offset_im, bool jitter) {
        for (int a = 0; a < 5; ++a) {
            for (int b = 0; b < 5; ++b) {
                double fre = (a + offset_re) / div;
                double fim = (b + offset_im) / div;
                if (jitter) {
                    fre += unit(rng) / div;
                    fim += unit(rng) / div;
                }
                Complex z(lo.real() + fre * range_re, lo.imag() + fim * range_im);
                dict.atoms.push_back(make_atom(region, ensure_interior(z), Complex(0, 0)));
            }
        }
    };

    push_lattice(4.0, 0.0, 0.0, false);
    dict.sizes.push_back(25);
    push_lattice(5.0, 0.45, 0.45, true);
    dict.sizes.push_back(50);
    push_lattice(5.0, 0.22, 0.78, true);
    push_lattice(5.0, 0.78, 0.22, true);
    dict.sizes.push_back(100);
    return dict;
}

void add_gate(ChaosCertificate& cert, std::string name, bool pass, std::string detail) {
    cert.gates.push_back({std::move(name), pass, std::move(detail)});
    if (!cert.gates.back().pass)
        cert.reasons.push_back("failed gate: " + cert.gates.back().name +
                               (cert.gates.back().detail.empty() ? "" : " (" + cert.gates.back().detail + ")"));
}

void run_single_factor(ChaosCertificate& cert, const HyperbolicSpace& space, double p, double c,
                       const CertifyOptions& opts) {
    ParabolicRegion region{space.rho, p, c};
    AxisSection section = imaginary_axis_section(region);
    const double Y = section.height;
    RadialGrid grid = RadialGrid::uniform(opts.grid_h, opts.grid_r_max);
    bool ok = true;

    // periodic point at T = 4 pi / Y: harmonics +-1 sit at half the bound
    {
        double T = 4.0 * kPi / Y;
        std::vector<std::pair<int, Complex>> harmonics{{1, Complex(1.0, 0.0)},
                                                       {-1, Complex(0.0, 0.5)}};
        PeriodicPoint point = periodic_point(space, p, c, T, harmonics, grid);
        cert.periodic = point;
        if (point.eigen_factor_error > opts.eigen_factor_tol) {
            ok = false;
            cert.reasons.push_back("periodic eigen factors not unimodular to tolerance");
        }
        if (opts.run_windowed_evolution) {
            cert.periodic_windowed_error = windowed_period_error(space, p, c, point, opts.window);
            if (cert.periodic_windowed_error > opts.periodic_tol) {
                ok = false;
                cert.reasons.push_back("windowed period error " + fmt(cert.periodic_windowed_error) +
                                       " above tolerance " + fmt(opts.periodic_tol));
            }
        }
    }

    // decaying span: Re z > 0 atoms, exact eigen dynamics
    {
        double base = std::max(0.0, space.rho * space.rho - c);
        std::vector<EigenAtom> atoms{
            make_atom(region, Complex(base + 0.13, 0.0), Complex(1.0, 0.0)),
            make_atom(region, Complex(base + 0.19, 0.0), Complex(0.6, 0.0)),
            make_atom(region, Complex(base + 0.27, 0.0), Complex(0.3, 0.0))};
        std::vector<double> times;
        for (int k = 0; k <= 10; ++k) times.push_back(6.0 * k);
        SemigroupConfig cfg{space, p, c, 0.0};
        cert.decay_trace = orbit_trace(cfg, atoms, grid, times);
        cert.decay_monotone = true;
        for (std::size_t i = 0; i + 1 < cert.decay_trace.size(); ++i)
            if (cert.decay_trace[i + 1].second > cert.decay_trace[i].second * (1.0 + 1e-12))
                cert.decay_monotone = false;
        cert.decay_final_ratio = cert.decay_trace.back().second / cert.decay_trace.front().second;
        if (!cert.decay_monotone || cert.decay_final_ratio > opts.decay_ratio_tol) {
            ok = false;
            cert.reasons.push_back("decaying-span orbit did not reach the decay gate");
        }
    }

    // small seed: single atom with Re z < 0
    {
        Complex z0 = (c - region.apex()) * Complex(-0.4, 0.3);
        for (int tries = 0; tries < 6 && region_contains(region, z0) != RegionPosition::interior;
             ++tries)
            z0 *= 0.5;
        std::vector<EigenAtom> dict{make_atom(region, z0, Complex(1.0, 0.0))};
        RadialFunction target = spherical_function(space, -dict[0].mu, grid);
        std::vector<double> times{10, 20, 30, 40, 50};
        cert.smallseed_trace =
            small_seed_recovery(space, p, c, target, dict, times, opts.fit);
        double tnorm = lp_norm(space, target, p);
        double best = 1e300, worst_recovery = 0.0;
        for (const SeedSample& s : cert.smallseed_trace) {
            best = std::min(best, s.seed_norm / tnorm);
            worst_recovery = std::max(worst_recovery, s.recovery_error);
        }
        cert.smallseed_best_ratio = best;
        if (best > opts.seed_ratio_tol || worst_recovery > 1e-9) {
            ok = false;
            cert.reasons.push_back("small-seed construction missed the gate");
        }
    }

    // density surrogate: nested dictionaries in { Re z > 0 }; the upper Re
    // bound covers spectral parameters up to ~4/width for the bump targets
    {
        double d = c - region.apex();
        Complex lo(0.2 * d, -Y / 2.0), hi(16.0 * space.rho * space.rho, Y / 2.0);
        NestedDictionary dict = sample_dictionary(region, lo, hi, opts.seed);

        struct Target {
            const char* name;
            double width, center;
        };
        const Target targets[] = {{"gaussian_w1", 1.0, 0.0}, {"gaussian_w2", 2.0, 0.0},
                                  {"gaussian_shifted", 1.0, 2.0}};
        double max_cond = 0.0;
        for (const Target& tg : targets) {
            RadialFunction target = RadialFunction::sample(grid, [&](double r) {
                double u = (r - tg.center) / tg.width;
                return std::exp(-u * u);
            });
            DensityExperiment exp;
            exp.target = tg.name;
            for (int size : dict.sizes) {
                DensityFit fit = density_fit(
                    space, p, target,
                    std::span<const EigenAtom>(dict.atoms.data(), static_cast<std::size_t>(size)),
                    opts.fit);
                exp.sizes.push_back(size);
                exp.resid_l2.push_back(fit.resid_l2);
                exp.resid_lp.push_back(fit.resid_lp);
                exp.condition.push_back(fit.condition);
                max_cond = std::max(max_cond, fit.condition);
                cert.fit_ridge = fit.ridge;
            }
            cert.density.push_back(std::move(exp));
        }
        cert.fit_condition_max = max_cond;
        cert.density_gate_residual = cert.density.front().resid_l2.back();
        bool monotone = true;
        for (const DensityExperiment& exp : cert.density)
            for (std::size_t i = 0; i + 1 < exp.resid_l2.size(); ++i)
                if (exp.resid_l2[i + 1] > exp.resid_l2[i] * (1.0 + 1e-9)) monotone = false;
        if (!monotone) {
            ok = false;
            cert.reasons.push_back("density-fit residuals not nonincreasing under refinement");
        }
        if (cert.density_gate_residual > opts.fit_threshold) {
            ok = false;
            cert.reasons.push_back("density-fit residual " + fmt(cert.density_gate_residual) +
                                   " above threshold " + fmt(opts.fit_threshold));
        }
    }

    if (ok) {
        cert.verdict = "chaotic-evidence";
        cert.reasons.push_back("all gates and constructions passed");
    } else {
        cert.verdict = "no-evidence";
    }
}

void run_product(ChaosCertificate& cert, std::span<const HyperbolicSpace> factors, double p,
                 double c, const CertifyOptions& opts) {
    const std::size_t k = factors.size();
    double cp_total = 0.0;
    for (const HyperbolicSpace& s : factors) cp_total += apex_threshold(s.rho, p);
    double extra = (c - cp_total) / static_cast<double>(k);

    std::vector<ParabolicRegion> regions;
    std::vector<double> Y(k);
    double y_sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        double ci = apex_threshold(factors[i].rho, p) + extra;
        regions.push_back({factors[i].rho, p, ci});
        AxisSection s = imaginary_axis_section(regions.back());
        Y[i] = s.height;
        y_sum += Y[i] / 2.0;
    }
    bool ok = true;

    // tensor periodic point: z_i = i Y_i / 2, period 2 pi / sum
    {
        double T = 2.0 * kPi / y_sum;
        Complex product(1.0, 0.0);
        for (std::size_t i = 0; i < k; ++i) {
            Complex zi(0.0, Y[i] / 2.0);
            SemigroupConfig cfg{factors[i], p, regions[i].shift, T};
            product *= evolve_eigen(cfg, zi).factor;
        }
        PeriodicPoint point;
        point.t_period = T;
        point.eigen_factor_error = std::abs(product - 1.0);
        cert.periodic = point;
        if (point.eigen_factor_error > opts.eigen_factor_tol) {
            ok = false;
            cert.reasons.push_back("tensor periodic factors not unimodular to tolerance");
        }
    }

    // tensor decay: product of factor norms of single-atom orbits
    {
        RadialGrid grid = RadialGrid::uniform(opts.grid_h, opts.grid_r_max);
        std::vector<double> times;
        for (int j = 0; j <= 10; ++j) times.push_back(6.0 * j);
        std::vector<double> prod(times.size(), 1.0);
        for (std::size_t i = 0; i < k; ++i) {
            double base = std::max(0.0, factors[i].rho * factors[i].rho - regions[i].shift);
            std::vector<EigenAtom> atom{make_atom(regions[i], Complex(base + 0.2, 0.0), Complex(1.0, 0.0))};
            SemigroupConfig cfg{factors[i], p, regions[i].shift, 0.0};
            auto trace = orbit_trace(cfg, atom, grid, times);
            for (std::size_t j = 0; j < times.size(); ++j) prod[j] *= trace[j].second;
        }
        for (std::size_t j = 0; j < times.size(); ++j) cert.decay_trace.emplace_back(times[j], prod[j]);
        cert.decay_monotone = true;
        for (std::size_t j = 0; j + 1 < prod.size(); ++j)
            if (prod[j + 1] > prod[j] * (1.0 + 1e-12)) cert.decay_monotone = false;
        cert.decay_final_ratio = prod.back() / prod.front();
        if (!cert.decay_monotone || cert.decay_final_ratio > opts.decay_ratio_tol) {
            ok = false;
            cert.reasons.push_back("tensor decaying orbit did not reach the decay gate");
        }
    }

    cert.reasons.push_back("density surrogate runs on rank-one factors only; product evidence is "
                           "threshold and tensor eigen-factor arithmetic");
    cert.verdict = ok ? "subspace-chaotic-evidence" : "no-evidence";
}

}  // namespace

ChaosCertificate certify(std::span<const HyperbolicSpace> factors, double p, double shift,
                         const CertifyOptions& opts) {
    if (factors.empty()) throw std::invalid_argument("certify: no factors");
    if (!(p > 1.0)) throw std::invalid_argument("certify: p must be > 1");

    ChaosCertificate cert;
    cert.p = p;
    cert.shift = shift;
    cert.seed = opts.seed;
    cert.tol_fit_threshold = opts.fit_threshold;
    cert.tol_periodic = opts.periodic_tol;
    cert.tol_eigen_factor = opts.eigen_factor_tol;
    cert.tol_decay_ratio = opts.decay_ratio_tol;
    cert.tol_seed_ratio = opts.seed_ratio_tol;
    for (const HyperbolicSpace& s : factors) cert.factors.push_back(s.dim);

    double cp_total = 0.0, rho_total = 0.0;
    for (const HyperbolicSpace& s : factors) {
        cp_total += apex_threshold(s.rho, p);
        rho_total += s.rho;  // bookkeeping only
    }
    cert.rho = rho_total;
    cert.c_p = cp_total;
    cert.b_p = factors[0].rho * std::abs(2.0 / p - 1.0);
    cert.sector_half_angle_value = sector_half_angle(p);

    const bool single = factors.size() == 1;
    AxisSection section;
    if (single) section = imaginary_axis_section(ParabolicRegion{factors[0].rho, p, shift});
    cert.section_height = single && section.kind == AxisSection::Kind::interval ? section.height : -1.0;

    if (p <= 2.0) {
        add_gate(cert, "imaginary-axis section has interior", false,
                 "p <= 2: the point-spectrum section has empty interior");
        cert.verdict = "no-evidence";
        return cert;
    }
    add_gate(cert, "p > 2", true, "p = " + fmt(p));

    if (!(shift > cp_total + 1e-12)) {
        add_gate(cert, "shift above apex threshold", false,
                 "imaginary-axis section empty: c = " + fmt(shift) + " <= c_p = " + fmt(cp_total));
        cert.verdict = "no-evidence";
        return cert;
    }
    add_gate(cert, "shift above apex threshold", true,
             "c = " + fmt(shift) + " > c_p = " + fmt(cp_total));

    if (single) {
        add_gate(cert, "imaginary-axis section has interior", section.has_interior(),
                 "Y = " + fmt(section.height));
        if (!section.has_interior()) {
            cert.verdict = "no-evidence";
            return cert;
        }
        run_single_factor(cert, factors[0], p, shift, opts);
    } else {
        add_gate(cert, "imaginary-axis section has interior", true,
                 "per-factor sections under the even shift split");
        run_product(cert, factors, p, shift, opts);
    }
    return cert;
}

nlohmann::ordered_json ChaosCertificate::to_json() const {
    using json = nlohmann::ordered_json;
    json j;
    j["schema"] = "hypheat.certificate/1";
    j["library_version"] = version_string;
    j["config"] = {{"factors", factors}, {"p", p}, {"c", shift}, {"seed", seed}};
    j["tolerances"] = {{"fit_threshold", tol_fit_threshold},
                       {"periodic", tol_periodic},
                       {"eigen_factor", tol_eigen_factor},
                       {"decay_ratio", tol_decay_ratio},
                       {"seed_ratio", tol_seed_ratio}};
    json region;
    region["rho"] = rho;
    region["b_p"] = b_p;
    region["c_p"] = c_p;
    if (section_height >= 0.0)
        region["Y"] = section_height;
    else
        region["Y"] = "degenerate";
    region["sector_half_angle"] = sector_half_angle_value;
    j["region"] = region;

    json gates_json = json::array();
    for (const GateResult& g : gates)
        gates_json.push_back({{"name", g.name}, {"pass", g.pass}, {"detail", g.detail}});
    j["gates"] = gates_json;

    if (periodic) {
        json p_json;
        p_json["t_period"] = periodic->t_period;
        json atoms = json::array();
        for (const EigenAtom& a : periodic->atoms)
            atoms.push_back({{"z", {a.z.real(), a.z.imag()}},
                             {"mu", {a.mu.real(), a.mu.imag()}},
                             {"coeff", {a.coeff.real(), a.coeff.imag()}}});
        p_json["atoms"] = atoms;
        p_json["eigen_factor_error"] = periodic->eigen_factor_error;
        if (periodic_windowed_error >= 0.0) p_json["windowed_error"] = periodic_windowed_error;
        j["periodic"] = p_json;
    } else {
        j["periodic"] = nullptr;
    }

    json decay = json::array();
    for (auto [t, n] : decay_trace) decay.push_back({t, n});
    j["decay_trace"] = decay;
    j["decay_monotone"] = decay_monotone;
    if (decay_final_ratio >= 0.0) j["decay_final_ratio"] = decay_final_ratio;

    json seeds = json::array();
    for (const SeedSample& s : smallseed_trace)
        seeds.push_back({{"t", s.t}, {"seed_norm", s.seed_norm}, {"recovery_error", s.recovery_error}});
    j["smallseed_trace"] = seeds;
    if (smallseed_best_ratio >= 0.0) j["smallseed_best_ratio"] = smallseed_best_ratio;

    json dens = json::array();
    for (const DensityExperiment& d : density)
        dens.push_back({{"target", d.target},
                        {"sizes", d.sizes},
                        {"resid_l2", d.resid_l2},
                        {"resid_lp", d.resid_lp},
                        {"condition", d.condition}});
    j["density"] = dens;
    if (density_gate_residual >= 0.0) j["density_gate_residual"] = density_gate_residual;
    if (!density.empty()) {
        j["fit_ridge"] = fit_ridge;
        j["fit_condition_max"] = fit_condition_max;
    }

    j["verdict"] = verdict;
    j["reasons"] = reasons;
    return j;
}

}  // namespace hypheat
