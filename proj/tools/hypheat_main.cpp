// Command-line surface: evaluate radial eigenfunctions, emit spectral-region
// data, run heat evolutions, and produce chaos-evidence certificates.  All
// outputs are CSV/JSON files with a config-echo header; identical inputs
// (including --seed) produce byte-identical files.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "hypheat/chaos.hpp"
#include "hypheat/regions.hpp"
#include "hypheat/semigroup.hpp"
#include "hypheat/space.hpp"
#include "hypheat/spherical.hpp"
#include "hypheat/version.hpp"

namespace fs = std::filesystem;
using hypheat::Complex;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

Complex parse_complex(std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }), s.end());
    if (s.empty()) throw UsageError("empty complex literal");
    auto parse_real = [](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        std::size_t used = 0;
        double v = std::stod(t, &used);
        if (used != t.size()) throw UsageError("bad numeric literal '" + t + "'");
        return v;
    };
    if (s.back() == 'i' || s.back() == 'I') {
        std::string body = s.substr(0, s.size() - 1);
        // split at the last +/- that is not a leading sign or an exponent sign
        std::size_t split = std::string::npos;
        for (std::size_t k = body.size(); k-- > 1;) {
            if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
                split = k;
                break;
            }
        }
        if (split == std::string::npos) return {0.0, parse_real(body)};
        return {parse_real(body.substr(0, split)), parse_real(body.substr(split))};
    }
    return {parse_real(s), 0.0};
}

double parse_time_token(std::string s) {
    if (s.empty()) throw UsageError("empty time token");
    double mult = 1.0;
    if (s.size() >= 2 && s.substr(s.size() - 2) == "pi") {
        std::string head = s.substr(0, s.size() - 2);
        mult = std::numbers::pi;
        s = head.empty() ? "1" : head;
    }
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw UsageError("bad time token");
    return v * mult;
}

std::vector<double> parse_times(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_time_token(tok));
    if (out.empty()) throw UsageError("no times given");
    return out;
}

fs::path resolve_output(const std::string& out, const std::string& fallback) {
    fs::path p = out.empty() ? fs::path(fallback) : fs::path(out);
    if (p.is_relative()) {
        if (const char* dir = std::getenv("HYPHEAT_OUTDIR")) p = fs::path(dir) / p;
    }
    return p;
}

void write_atomic(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary);
        if (!os) throw std::runtime_error("cannot open " + tmp.string());
        os << content;
    }
    fs::rename(tmp, path);
}

std::string csv_header(const std::string& command, const std::vector<std::string>& config) {
    std::ostringstream os;
    os << "# hypheat " << hypheat::version_string << "\n";
    os << "# command: " << command << "\n";
    for (const std::string& line : config) os << "# " << line << "\n";
    return os.str();
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

// ---- sph ------------------------------------------------------------------

struct SphArgs {
    int n = 3;
    std::string lambda = "1";
    double h = 1.0 / 256;
    double rmax = 20.0;
    std::string out;
};

int run_sph(const SphArgs& args) {
    auto space = hypheat::make_space(args.n);
    Complex lambda = parse_complex(args.lambda);
    auto grid = hypheat::RadialGrid::uniform(args.h, args.rmax);
    auto phi = hypheat::spherical_function(space, lambda, grid);

    std::ostringstream os;
    os << csv_header("sph", {"n=" + std::to_string(args.n), "lambda=" + args.lambda,
                             "h=" + num(args.h), "rmax=" + num(args.rmax)});
    os << "r,re_phi,im_phi\n";
    os.precision(17);
    for (std::size_t i = 0; i < grid.size(); ++i)
        os << grid.points[i] << "," << phi.values[i].real() << "," << phi.values[i].imag() << "\n";
    write_atomic(resolve_output(args.out, "sph.csv"), os.str());
    return 0;
}

// ---- region ---------------------------------------------------------------

struct RegionArgs {
    int n = 3;
    double p = 4.0;
    double c = 0.0;
    int samples = 401;
    double x_max = 5.0;
    std::string out;
};

int run_region(const RegionArgs& args) {
    auto space = hypheat::make_space(args.n);
    if (!(args.p > 1.0)) throw UsageError("region: p must be > 1");
    hypheat::ParabolicRegion region{space.rho, args.p, args.c};
    auto section = hypheat::imaginary_axis_section(region);

    fs::path base = resolve_output(args.out, "region");
    std::ostringstream os;
    os << csv_header("region", {"n=" + std::to_string(args.n), "p=" + num(args.p),
                                "c=" + num(args.c), "boundary: upper branch, x in [-x_max, x_max]"});
    os << "x,re_w,im_w\n";
    os.precision(17);
    for (int i = 0; i < args.samples; ++i) {
        double x = -args.x_max + 2.0 * args.x_max * i / (args.samples - 1.0);
        Complex w = hypheat::parabola_boundary(region, x);
        os << x << "," << w.real() << "," << w.imag() << "\n";
    }
    write_atomic(fs::path(base).concat(".csv"), os.str());

    json summary;
    summary["library_version"] = hypheat::version_string;
    summary["config"] = {{"n", args.n}, {"p", args.p}, {"c", args.c}};
    summary["c_p"] = region.apex();
    summary["b_p"] = region.half_width();
    if (section.kind == hypheat::AxisSection::Kind::interval)
        summary["Y"] = section.height;
    else
        summary["Y"] = "degenerate";
    summary["sector"] = hypheat::sector_half_angle(args.p);
    summary["tie_tol"] = 1e-9;
    write_atomic(fs::path(base).concat(".json"), summary.dump(2) + "\n");
    return 0;
}

// ---- evolve ---------------------------------------------------------------

struct EvolveArgs {
    int n = 3;
    double p = 4.0;
    double c = 0.0;
    std::string t;
    std::string times;
    std::string profile;
    std::string atoms_file;
    double h = 1.0 / 256;
    double rmax = 16.0;
    std::string out;
};

hypheat::RadialFunction build_profile(const std::string& spec, const hypheat::RadialGrid& grid) {
    auto colon = spec.find(':');
    std::string kind = spec.substr(0, colon);
    if (kind != "gaussian") throw UsageError("unknown profile '" + kind + "' (expected gaussian:WIDTH)");
    double width = colon == std::string::npos ? 1.0 : std::stod(spec.substr(colon + 1));
    if (!(width > 0.0)) throw UsageError("profile width must be positive");
    return hypheat::RadialFunction::sample(
        grid, [width](double r) { return std::exp(-(r / width) * (r / width)); });
}

std::vector<hypheat::EigenAtom> load_atoms(const fs::path& file, const hypheat::HyperbolicSpace& space,
                                           double p, double c) {
    std::ifstream is(file);
    if (!is) throw UsageError("cannot read atoms file " + file.string());
    nlohmann::json doc = nlohmann::json::parse(is);
    hypheat::ParabolicRegion region{space.rho, p, c};
    std::vector<hypheat::EigenAtom> atoms;
    for (const auto& item : doc.at("atoms")) {
        Complex z(item.at("z").at(0).get<double>(), item.at("z").at(1).get<double>());
        Complex coeff(item.at("coeff").at(0).get<double>(), item.at("coeff").at(1).get<double>());
        atoms.push_back(hypheat::make_atom(region, z, coeff));
    }
    if (atoms.empty()) throw UsageError("atoms file holds no atoms");
    return atoms;
}

int run_evolve(const EvolveArgs& args) {
    auto space = hypheat::make_space(args.n);
    if (!(args.p > 1.0)) throw UsageError("evolve: p must be > 1");
    auto grid = hypheat::RadialGrid::uniform(args.h, args.rmax);
    std::vector<std::string> echo{"n=" + std::to_string(args.n), "p=" + num(args.p),
                                  "c=" + num(args.c), "h=" + num(args.h), "rmax=" + num(args.rmax),
                                  "tail_tol=" + num(hypheat::TransformOptions{}.tail_tol)};

    std::ostringstream os;
    os.precision(17);
    if (!args.atoms_file.empty()) {
        if (args.times.empty()) throw UsageError("--atoms requires --times");
        auto atoms = load_atoms(args.atoms_file, space, args.p, args.c);
        auto times = parse_times(args.times);
        hypheat::SemigroupConfig cfg{space, args.p, args.c, 0.0};
        auto trace = hypheat::orbit_trace(cfg, atoms, grid, times);
        echo.push_back("atoms=" + args.atoms_file);
        echo.push_back("times=" + args.times);
        os << csv_header("evolve", echo) << "t,norm\n";
        for (auto [t, nrm] : trace) os << t << "," << nrm << "\n";
        write_atomic(resolve_output(args.out, "evolve.csv"), os.str());
        return 0;
    }

    if (args.profile.empty()) throw UsageError("evolve: need --profile or --atoms");
    auto f = build_profile(args.profile, grid);
    echo.push_back("profile=" + args.profile);

    std::vector<double> times;
    if (!args.times.empty())
        times = parse_times(args.times);
    else if (!args.t.empty())
        times.push_back(parse_time_token(args.t));
    else
        throw UsageError("evolve: need --t or --times");
    echo.push_back("times=" + (args.times.empty() ? args.t : args.times));

    os << csv_header("evolve", echo) << "t,r,re_f,im_f\n";
    for (double t : times) {
        hypheat::SemigroupConfig cfg{space, args.p, args.c, t};
        auto ft = hypheat::evolve(cfg, f);
        for (std::size_t i = 0; i < grid.size(); ++i)
            os << t << "," << grid.points[i] << "," << ft.values[i].real() << ","
               << ft.values[i].imag() << "\n";
    }
    write_atomic(resolve_output(args.out, "evolve.csv"), os.str());
    return 0;
}

// ---- certify ---------------------------------------------------------------

struct CertifyArgs {
    std::vector<int> dims;
    double p = 4.0;
    double c = 1.0;
    std::uint64_t seed = 0;
    bool skip_windowed = false;
    std::string out;
};

int run_certify(const CertifyArgs& args, bool seed_set) {
    if (!seed_set) throw UsageError("certify: --seed is mandatory for sampled experiments");
    std::vector<hypheat::HyperbolicSpace> factors;
    for (int n : args.dims.empty() ? std::vector<int>{3} : args.dims)
        factors.push_back(hypheat::make_space(n));
    hypheat::CertifyOptions opts;
    opts.seed = args.seed;
    opts.run_windowed_evolution = !args.skip_windowed;
    auto cert = hypheat::certify(factors, args.p, args.c, opts);
    write_atomic(resolve_output(args.out, "certificate.json"), cert.to_json().dump(2) + "\n");
    return 0;  // the verdict is data, not a failure
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"radial harmonic analysis and heat-semigroup dynamics on hyperbolic spaces"};
    app.set_help_flag("--help", "print help");  // frees -h / --h for grid spacing
    app.require_subcommand(1);

    SphArgs sph;
    auto* sph_cmd = app.add_subcommand("sph", "sample a radial eigenfunction to CSV");
    sph_cmd->add_option("--n", sph.n, "dimension (>= 2)");
    sph_cmd->add_option("--lambda", sph.lambda, "spectral parameter, e.g. 1, 0.5i, 1+0.2i");
    sph_cmd->add_option("--h", sph.h, "grid spacing");
    sph_cmd->add_option("--rmax", sph.rmax, "truncation radius");
    sph_cmd->add_option("--out", sph.out, "output file (default sph.csv)");

    RegionArgs region;
    auto* region_cmd = app.add_subcommand("region", "spectral region boundary and summary");
    region_cmd->add_option("--n", region.n, "dimension (>= 2)");
    region_cmd->add_option("--p", region.p, "Lebesgue exponent");
    region_cmd->add_option("--c", region.c, "spectral shift");
    region_cmd->add_option("--samples", region.samples, "boundary sample count");
    region_cmd->add_option("--xmax", region.x_max, "boundary parameter range");
    region_cmd->add_option("--out", region.out, "output base path (default region)");

    EvolveArgs evolve;
    auto* evolve_cmd = app.add_subcommand("evolve", "heat evolution snapshots or orbit norms");
    evolve_cmd->add_option("--n", evolve.n, "dimension (>= 2)");
    evolve_cmd->add_option("--p", evolve.p, "Lebesgue exponent for norms");
    evolve_cmd->add_option("--c", evolve.c, "semigroup shift");
    evolve_cmd->add_option("--t", evolve.t, "single time (accepts pi multiples, e.g. 8pi)");
    evolve_cmd->add_option("--times", evolve.times, "comma list of times");
    evolve_cmd->add_option("--profile", evolve.profile, "input profile, gaussian:WIDTH");
    evolve_cmd->add_option("--atoms", evolve.atoms_file, "eigen-atom JSON file (orbit norms mode)");
    evolve_cmd->add_option("--h", evolve.h, "grid spacing");
    evolve_cmd->add_option("--rmax", evolve.rmax, "truncation radius");
    evolve_cmd->add_option("--out", evolve.out, "output file (default evolve.csv)");

    CertifyArgs certify;
    auto* certify_cmd = app.add_subcommand("certify", "chaos-evidence certificate JSON");
    certify_cmd->add_option("--n", certify.dims, "factor dimension (repeat for products)");
    certify_cmd->add_option("--p", certify.p, "Lebesgue exponent");
    certify_cmd->add_option("--c", certify.c, "semigroup shift");
    auto* seed_opt = certify_cmd->add_option("--seed", certify.seed, "sampling seed (mandatory)");
    certify_cmd->add_flag("--skip-windowed", certify.skip_windowed,
                          "skip the windowed period evolution (faster)");
    certify_cmd->add_option("--out", certify.out, "output file (default certificate.json)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (sph_cmd->parsed()) return run_sph(sph);
        if (region_cmd->parsed()) return run_region(region);
        if (evolve_cmd->parsed()) return run_evolve(evolve);
        if (certify_cmd->parsed()) return run_certify(certify, seed_opt->count() > 0);
    } catch (const hypheat::TruncationError& e) {
        std::cerr << "numerical-contract failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
