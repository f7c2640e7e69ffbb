#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>

namespace hypheat::detail {

struct OdeState {
    std::complex<double> y;   // function value
    std::complex<double> dy;  // first derivative
};

inline OdeState operator+(const OdeState& a, const OdeState& b) { return {a.y + b.y, a.dy + b.dy}; }
inline OdeState operator*(double s, const OdeState& a) { return {s * a.y, s * a.dy}; }

inline double state_norm(const OdeState& a) {
    return std::max(std::abs(a.y), std::abs(a.dy));
}

/// Dormand-Prince 5(4) with step-size control, forced landings on each
/// output node.  `rhs(r, state)` returns {y', y''}.
template <class RHS>
void integrate_to_nodes(RHS&& rhs, double r, OdeState state, std::span<const double> nodes,
                        std::span<OdeState> out, double rtol = 3e-13, double atol = 1e-14) {
    if (nodes.size() != out.size()) throw std::invalid_argument("integrate_to_nodes: size mismatch");

    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                            e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                            e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;

    OdeState k1 = rhs(r, state);
    double h = 1e-4;

    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double target = nodes[i];
        if (target < r - 1e-14) throw std::invalid_argument("integrate_to_nodes: nodes not increasing");
        while (r < target) {
            bool clipped = false;
            if (r + h >= target) {
                h = target - r;
                clipped = true;
            }
            OdeState k2 = rhs(r + c2 * h, state + (h * a21) * k1);
            OdeState k3 = rhs(r + c3 * h, state + (h * a31) * k1 + (h * a32) * k2);
            OdeState k4 = rhs(r + c4 * h, state + (h * a41) * k1 + (h * a42) * k2 + (h * a43) * k3);
            OdeState k5 = rhs(r + c5 * h, state + (h * a51) * k1 + (h * a52) * k2 + (h * a53) * k3 +
                                              (h * a54) * k4);
            OdeState k6 = rhs(r + h, state + (h * a61) * k1 + (h * a62) * k2 + (h * a63) * k3 +
                                         (h * a64) * k4 + (h * a65) * k5);
            OdeState ynew = state + (h * b1) * k1 + (h * b3) * k3 + (h * b4) * k4 + (h * b5) * k5 +
                            (h * b6) * k6;
            OdeState k7 = rhs(r + h, ynew);
            OdeState errv = (h * e1) * k1 + (h * e3) * k3 + (h * e4) * k4 + (h * e5) * k5 +
                            (h * e6) * k6 + (h * e7) * k7;
            double scale = atol + rtol * std::max(state_norm(state), state_norm(ynew));
            double err = state_norm(errv) / scale;
            if (err <= 1.0) {
                r += h;
                state = ynew;
                k1 = k7;  // FSAL
                double grow = err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0;
                h *= std::clamp(grow, 0.2, 5.0);
            } else {
                h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
                clipped = false;
            }
            if (clipped && r >= target) break;
            if (h < 1e-15 * std::max(1.0, std::abs(r)))
                throw std::runtime_error("integrate_to_nodes: step size underflow");
        }
        out[i] = state;
    }
}

}  // namespace hypheat::detail
