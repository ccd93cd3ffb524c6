#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

// Shared numerical plumbing: a signed log-magnitude value type, an adaptive
// Dormand-Prince integrator for linear second-order ODEs with running
// renormalization, composite quadrature rules, a log-space cumulative
// integral, and a dense least-squares solver.

namespace confining {

// sign * exp(log_abs); sign = 0 encodes an exact zero
struct LogValue {
    int sign = 0;
    double log_abs = -std::numeric_limits<double>::infinity();

    static LogValue from_double(double v);
    static LogValue from_parts(int sign, double log_abs_) {
        return LogValue{sign == 0 ? 0 : (sign > 0 ? 1 : -1), log_abs_};
    }
    double to_double() const;  // may over/underflow to +-inf/0 by design
    bool is_zero() const { return sign == 0; }
};

LogValue log_mul(LogValue a, LogValue b);
LogValue log_add(LogValue a, LogValue b);  // signed, exact up to rounding

// log(exp(a) + exp(b)) for plain (positive-mass) log magnitudes
double logaddexp(double a, double b);

struct Rk45Options {
    double rtol = 1e-12;
    double atol = 1e-12;
    long max_steps = 8'000'000;
};

// result of integrating u'' = a(x) u' + b(x) u along a monotone node sequence;
// values are renormalized, the true solution is exp(log_scale) * y
struct LinearOdeResult {
    std::vector<std::array<double, 2>> y;  // (u, u') at each node
    std::vector<double> log_scale;
    int sign_changes = 0;       // of u, over all accepted internal steps
    double max_local_error = 0; // dimensionless embedded-error estimate * rtol
    long steps = 0;
};

LinearOdeResult integrate_linear2(const std::function<double(double)>& a,
                                  const std::function<double(double)>& b,
                                  const std::vector<double>& nodes,
                                  std::array<double, 2> y0,
                                  const Rk45Options& opt = {});

// --- quadrature -----------------------------------------------------------

// nodes/weights of the n-point Gauss-Legendre rule on [-1,1]
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

double integrate_gl(const std::function<double(double)>& f, double a, double b,
                    int panels, int points_per_panel = 10);

// composite Simpson with n (even) subintervals
double integrate_simpson(const std::function<double(double)>& f, double a, double b, int n);

// Given ascending s-nodes and ln f(s_i) for a positive integrand decaying as
// s grows, returns ln I(s_i) with I(s) = int_s^infty f ds, computed from the
// deep end with an exponential-fit rule per interval plus an analytic tail.
struct LogCumulative {
    std::vector<double> log_integral;  // same length as input
    double tail_rate = 0;              // fitted d(ln f)/ds at the deep end
    bool tail_resolved = true;         // false when the grid stops too early
};
LogCumulative log_cumulative_from_deep(const std::vector<double>& s,
                                       const std::vector<double>& log_f);

// --- least squares ---------------------------------------------------------

struct LstsqFit {
    std::vector<double> coef;
    double rms_residual = 0;
    double r2 = 1;
};

// minimizes ||A c - y|| with A given column-wise; Householder QR with column
// equilibration, suitable for the small collinear bases used by the tail fits
LstsqFit lstsq(const std::vector<std::vector<double>>& columns, const std::vector<double>& y);

}  // namespace confining
