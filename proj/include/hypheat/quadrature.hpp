#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "hypheat/space.hpp"

namespace hypheat::quad {

/// Gauss-Legendre rule on [-1, 1], cached per order.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussRule& gauss_legendre(int order);

/// Composite Gauss-Legendre mesh on [a, b].
struct PanelMesh {
    std::vector<double> nodes;
    std::vector<double> weights;
    double a = 0.0, b = 0.0;
    int panels = 0, order = 0;
};
PanelMesh panel_mesh(double a, double b, int panels, int order);

/// Neumaier-compensated accumulator.
struct KahanSum {
    double sum = 0.0, comp = 0.0;
    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

struct KahanSumC {
    KahanSum re, im;
    void add(const Complex& z) {
        re.add(z.real());
        im.add(z.imag());
    }
    Complex value() const { return {re.value(), im.value()}; }
};

struct Estimate {
    Complex value;
    double error = 0.0;  // coarse-vs-fine panel difference
};

/// Integrate a callable over [a, b]; the error estimate compares against a
/// doubled panel count.
template <class F>
Estimate integrate(F&& f, double a, double b, int panels, int order) {
    auto run = [&](int np) {
        PanelMesh mesh = panel_mesh(a, b, np, order);
        KahanSumC acc;
        for (std::size_t q = 0; q < mesh.nodes.size(); ++q)
            acc.add(mesh.weights[q] * Complex(f(mesh.nodes[q])));
        return acc.value();
    };
    Complex coarse = run(panels);
    Complex fine = run(2 * panels);
    return {fine, std::abs(fine - coarse)};
}

/// Composite Simpson weights for a uniform grid with `npoints` samples and
/// spacing h (odd interval counts fall back to a 3/8 block at the end).
std::vector<double> simpson_weights(std::size_t npoints, double h);

/// Local 6-point Lagrange interpolation of complex samples on a uniform
/// grid; evaluates to 0 beyond the grid.
class UniformInterpolant {
  public:
    UniformInterpolant(const RadialGrid& grid, std::span<const Complex> values);
    Complex operator()(double r) const;

  private:
    double h_ = 0.0, r0_ = 0.0, r_max_ = 0.0;
    std::vector<Complex> values_;
};

}  // namespace hypheat::quad
