#pragma once

#include <functional>
#include <string>
#include <vector>

// Rayleigh quotients for the boundary Hardy inequality on (0,1):
//   int |phi'|^2 + A int |phi|^2  >=  1/4 int |phi|^2 / d^2,  d = min(x, 1-x),
// and the iterated-log improved weight 1 + sum_i prod_{k<=i} X_k^2(d/D).

namespace confining {

struct TestFunction {
    std::string name;
    double param = 0.0;
    std::function<double(double)> value;       // phi(x), 0 < x < 1
    std::function<double(double)> derivative;  // phi'(x)
    // boundary-layer forms: t = e^{-s} is the distance to the chosen endpoint,
    // valid for s >= ln 2; may return -inf where phi or phi' vanishes
    std::function<double(double, bool)> log_value_s;   // ln |phi|, (s, right_end)
    std::function<double(double, bool)> log_deriv_s;   // ln |phi'|
    // s-positions where phi loses smoothness, per side, ascending; quadrature
    // panels are split there
    std::vector<double> breaks_left, breaks_right;

    static TestFunction sine();                        // sin(pi x)
    static TestFunction parabola();                    // x (1 - x)
    static TestFunction power_boundary(double eps);    // d^{1/2 + eps}
    static TestFunction bump_product(double a, double b);
};

struct HardyOptions {
    double panel_width = 1.0;   // width of the Gauss panels in s
    double tail_rel = 1e-13;    // stop once a panel adds less than this, relatively
    double s_cap = 6000.0;
    int min_panels = 8;
};

struct QuotientReport {
    double grad_term;      // int |phi'|^2
    double l2_term;        // int |phi|^2
    double weighted_term;  // 1/4 int weight * |phi|^2 / d^2
    double quotient;
    double s_max_used;
    bool resolved;         // tail converged before the s cap
};

QuotientReport hardy_quotient(const TestFunction& phi, double a_const = 0.0,
                              const HardyOptions& opt = {});

// weight 1/4 (1 + sum_{i=1}^{depth} prod_{k=1}^{i} X_k^2(d/D)); depth <= 4,
// D >= 1/2 so that d/D stays within the X_k domain
QuotientReport improved_quotient(const TestFunction& phi, double d_big, int depth,
                                 const HardyOptions& opt = {});

struct SharpnessProbe {
    std::vector<double> eps;
    std::vector<double> quotient;
    double final_gap;  // quotient - 1 at the smallest eps
};

// quotients of the boundary-power family along a decreasing eps sequence
SharpnessProbe sharpness_probe(const std::vector<double>& eps_sequence,
                               double a_const = 0.0, const HardyOptions& opt = {});

}  // namespace confining
