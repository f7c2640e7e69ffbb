#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hypheat/regions.hpp"
#include "hypheat/semigroup.hpp"
#include "hypheat/space.hpp"

namespace hypheat {

/// Analytic eigenfunction field F(z) = phi_{-sqrt(z + c - rho^2)} over the
/// cut region; satisfies (Laplacian) F = (z + c) F.
RadialFunction eigen_map(const HyperbolicSpace& space, double shift, Complex z,
                         const RadialGrid& grid);

EigenAtom make_atom(const ParabolicRegion& region, Complex z, Complex coeff);

struct PeriodicPoint {
    double t_period = 0.0;
    std::vector<EigenAtom> atoms;
    RadialFunction profile;
    double eigen_factor_error = 0.0;  // max_k |e^{-T z_k} - 1|
};

/// Periodic point sum_k a_k F(2 pi i k / T); every harmonic must lie strictly
/// inside the imaginary-axis section, otherwise throws with the violated
/// bound.  Requires p > 2 and a section with interior.
PeriodicPoint periodic_point(const HyperbolicSpace& space, double p, double shift,
                             double t_period, std::span<const std::pair<int, Complex>> harmonics,
                             const RadialGrid& grid);

/// Smooth plateau/rolloff window for comparing the eigen-span dynamics with
/// the transform-based evolution on the window interior.
struct WindowConfig {
    double plateau = 62.0;  // w = 1 on [0, plateau]
    double rolloff = 8.0;   // C-infinity decay to 0 over [plateau, plateau + rolloff]
    double r_max = 74.0;
    double h = 1.0 / 256;
    double compare_radius = 8.0;
    double lambda_max = 2.0;
    double lambda_panel = 0.06;
    int lambda_order = 12;
    double r_panel = 0.4;
    int r_order = 12;
};
double window_value(const WindowConfig& w, double r);

/// Relative L^p error on [0, compare_radius] between T(t_period)(window * f)
/// and window * f, computed through the spectral evolution.
double windowed_period_error(const HyperbolicSpace& space, double p, double shift,
                             const PeriodicPoint& point, const WindowConfig& window);

struct FitOptions {
    double r_fit = 12.0;
    double panel_width = 0.125;
    int order = 10;
    double ridge_factor = 1e-10;  // ridge = ridge_factor * trace(Gram)
};

struct DensityFit {
    std::vector<Complex> coeffs;
    double resid_l2 = 0.0;  // relative, truncated L^2(J)
    double resid_lp = 0.0;  // relative, truncated L^p(J)
    double condition = 0.0;
    double ridge = 0.0;
};

/// Regularized least-squares fit of the target over an eigen-atom dictionary
/// in the truncated L^2(J) inner product, residuals reported in L^2 and L^p.
/// Atoms must be pairwise distinct.
DensityFit density_fit(const HyperbolicSpace& space, double p, const RadialFunction& target,
                       std::span<const EigenAtom> dictionary, const FitOptions& opts = {});

struct SeedSample {
    double t = 0.0;
    double seed_norm = 0.0;       // ||g(t)||_p
    double recovery_error = 0.0;  // ||T(t) g(t) - target||_p / ||target||_p
};

/// Small-seed construction: fit the target over atoms with Re z < 0, set
/// g(t) = sum a_j e^{t z_j} F(z_j); T(t) g(t) recovers the fit exactly at the
/// eigen level while ||g(t)|| decays.
std::vector<SeedSample> small_seed_recovery(const HyperbolicSpace& space, double p, double shift,
                                            const RadialFunction& target,
                                            std::span<const EigenAtom> dictionary,
                                            std::span<const double> times,
                                            const FitOptions& opts = {});

struct NonchaosLambda {
    Complex lambda;
    std::vector<std::pair<double, double>> norms;  // (R, truncated L^p norm)
    std::vector<double> ratios;                    // norm(2R) / norm(R)
};

struct NonchaosReport {
    double p = 0.0;
    std::vector<std::pair<double, std::string>> sections;  // (c, section kind)
    std::vector<NonchaosLambda> lambdas;
    bool all_sections_degenerate = true;
};

/// Diagnostics for 1 < p <= 2: degenerate imaginary-axis sections and
/// truncated-norm growth of candidate eigenfunctions under doubling radii.
NonchaosReport nonchaos_diagnostics(const HyperbolicSpace& space, double p,
                                    std::span<const Complex> lambdas,
                                    std::span<const double> shifts,
                                    std::span<const double> radii_doubling,
                                    double h = 1.0 / 256);

struct CertifyOptions {
    std::uint64_t seed = 0;
    double fit_threshold = 5e-2;
    double periodic_tol = 1e-6;
    double eigen_factor_tol = 1e-12;
    double decay_ratio_tol = 1e-3;
    double seed_ratio_tol = 1e-2;
    double grid_h = 1.0 / 256;
    double grid_r_max = 40.0;
    bool run_windowed_evolution = true;
    WindowConfig window;
    FitOptions fit;
};

struct GateResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct DensityExperiment {
    std::string target;
    std::vector<int> sizes;
    std::vector<double> resid_l2;
    std::vector<double> resid_lp;
    std::vector<double> condition;
};

struct ChaosCertificate {
    std::string verdict;  // chaotic-evidence | subspace-chaotic-evidence | no-evidence
    std::vector<std::string> reasons;
    std::vector<int> factors;
    double p = 0.0, shift = 0.0;
    std::uint64_t seed = 0;
    double tol_fit_threshold = 0.0, tol_periodic = 0.0, tol_eigen_factor = 0.0;
    double tol_decay_ratio = 0.0, tol_seed_ratio = 0.0;
    double rho = 0.0, b_p = 0.0, c_p = 0.0;
    double section_height = -1.0;  // -1: no interval
    double sector_half_angle_value = 0.0;
    std::vector<GateResult> gates;
    std::optional<PeriodicPoint> periodic;
    double periodic_windowed_error = -1.0;
    std::vector<std::pair<double, double>> decay_trace;
    bool decay_monotone = false;
    double decay_final_ratio = -1.0;
    std::vector<SeedSample> smallseed_trace;
    double smallseed_best_ratio = -1.0;
    std::vector<DensityExperiment> density;
    double density_gate_residual = -1.0;
    double fit_ridge = 0.0;
    double fit_condition_max = 0.0;

    nlohmann::ordered_json to_json() const;
};

/// Full evidence pipeline.  A single rank-one factor runs the periodic /
/// decay / small-seed / density experiments and can reach "chaotic-evidence";
/// a product of factors runs threshold and tensor eigen-factor arithmetic and
/// caps at "subspace-chaotic-evidence".
ChaosCertificate certify(std::span<const HyperbolicSpace> factors, double p, double shift,
                         const CertifyOptions& opts);

}  // namespace hypheat
