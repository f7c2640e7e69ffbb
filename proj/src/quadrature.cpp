#include "hypheat/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace hypheat::quad {

namespace {

GaussRule compute_rule(int order) {
    if (order < 2) throw std::invalid_argument("gauss_legendre: order must be >= 2");
    GaussRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const int m = (order + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton iteration on P_n from the Chebyshev-like initial guess
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[order - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[order - 1 - i] = w;
    }
    return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
    static std::map<int, GaussRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
    return it->second;
}

PanelMesh panel_mesh(double a, double b, int panels, int order) {
    if (!(b > a)) throw std::invalid_argument("panel_mesh: empty interval");
    if (panels < 1) throw std::invalid_argument("panel_mesh: need at least one panel");
    const GaussRule& rule = gauss_legendre(order);
    PanelMesh mesh;
    mesh.a = a;
    mesh.b = b;
    mesh.panels = panels;
    mesh.order = order;
    mesh.nodes.reserve(static_cast<std::size_t>(panels) * order);
    mesh.weights.reserve(static_cast<std::size_t>(panels) * order);
    const double width = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * width;
        const double mid = lo + 0.5 * width;
        for (int q = 0; q < order; ++q) {
            mesh.nodes.push_back(mid + 0.5 * width * rule.nodes[q]);
            mesh.weights.push_back(0.5 * width * rule.weights[q]);
        }
    }
    return mesh;
}

std::vector<double> simpson_weights(std::size_t npoints, double h) {
    if (npoints < 2) throw std::invalid_argument("simpson_weights: need at least 2 points");
    std::vector<double> w(npoints, 0.0);
    const std::size_t m = npoints - 1;  // interval count
    auto add_simpson = [&](std::size_t first, std::size_t last) {
        // composite Simpson over an even number of intervals [first, last]
        for (std::size_t i = first; i + 2 <= last; i += 2) {
            w[i] += h / 3.0;
            w[i + 1] += 4.0 * h / 3.0;
            w[i + 2] += h / 3.0;
        }
    };
    if (m == 1) {
        w[0] = w[1] = 0.5 * h;
    } else if (m % 2 == 0) {
        add_simpson(0, m);
    } else if (m == 3) {
        w[0] += 3.0 * h / 8.0;
        w[1] += 9.0 * h / 8.0;
        w[2] += 9.0 * h / 8.0;
        w[3] += 3.0 * h / 8.0;
    } else {
        add_simpson(0, m - 3);
        w[m - 3] += 3.0 * h / 8.0;
        w[m - 2] += 9.0 * h / 8.0;
        w[m - 1] += 9.0 * h / 8.0;
        w[m] += 3.0 * h / 8.0;
    }
    return w;
}

UniformInterpolant::UniformInterpolant(const RadialGrid& grid, std::span<const Complex> values) {
    if (!grid.is_uniform()) throw std::invalid_argument("UniformInterpolant: grid must be uniform");
    if (grid.size() != values.size() || grid.size() < 6)
        throw std::invalid_argument("UniformInterpolant: need >= 6 matching samples");
    h_ = grid.spacing;
    r0_ = grid.points.front();
    r_max_ = grid.points.back();
    values_.assign(values.begin(), values.end());
}

Complex UniformInterpolant::operator()(double r) const {
    if (r < r0_ - 1e-12 || r > r_max_ + 1e-12) return {0.0, 0.0};
    const std::size_t n = values_.size();
    double u = (r - r0_) / h_;
    auto k = static_cast<long>(std::floor(u));
    long first = k - 2;  // 6-point stencil centered on the containing cell
    if (first < 0) first = 0;
    if (first + 6 > static_cast<long>(n)) first = static_cast<long>(n) - 6;
    Complex acc(0.0, 0.0);
    for (long j = first; j < first + 6; ++j) {
        double lj = 1.0;
        for (long i = first; i < first + 6; ++i) {
            if (i == j) continue;
            lj *= (u - i) / static_cast<double>(j - i);
        }
        acc += lj * values_[static_cast<std::size_t>(j)];
    }
    return acc;
}

}  // namespace hypheat::quad
