#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

// Iterated-logarithm arithmetic on the scale t in (0,1), carried in the log
// coordinate s = ln(1/t).  All deep-boundary quantities are computed from s so
// that nothing underflows; the raw distance t is only materialized when it is
// representable in double precision.

namespace confining {

inline constexpr double kMaxMaterializableS = 700.0;

// distance-to-boundary coordinate, stored as s = ln(1/t) > 0
struct LogCoordinate {
    double s;

    explicit LogCoordinate(double s_) : s(s_) {
        if (!(s > 0.0) || !std::isfinite(s))
            throw std::domain_error("LogCoordinate: s must be finite and > 0, got s=" + std::to_string(s_));
    }
    static LogCoordinate from_t(double t);

    // raw distance; only valid while exp(-s) does not underflow
    double t() const {
        if (s > kMaxMaterializableS)
            throw std::domain_error("LogCoordinate: t=exp(-s) not materializable for s=" + std::to_string(s));
        return std::exp(-s);
    }
    bool materializable() const { return s <= kMaxMaterializableS; }
};

// tower e_1 = e, e_p = e^{e_{p-1}}.  p <= 3 fits in a double; p = 4 only its
// logarithm does; p >= 5 not even that, and is rejected.
struct TowerValue {
    int p;
    double log_value;  // ln e_p = e_{p-1}  (with e_0 := 1)
    bool log_only;

    double value() const {
        if (log_only)
            throw std::domain_error("TowerValue: e_" + std::to_string(p) + " exceeds double range, use log_value");
        return std::exp(log_value);
    }
};

TowerValue tower_exp(int p);

// threshold for admissibility of level k: s >= e_{k-1} (e_0 := 1)
double iterlog_threshold(int k);

// L_1(t) = ln(1/t) = s,  L_k = ln L_{k-1}; admissible for s >= e_{k-1}
double iterlog(int k, LogCoordinate x);

// (prod_{j=1}^{k} L_j(t))^{-1}, evaluated as exp(-sum ln L_j); k = 0 gives 1
double prod_inv(int k, LogCoordinate x);

// scriptL_p(t) = sum_{k=2}^{p} (prod_{j=1}^{k-1} L_j(t))^{-1}; p >= 2
double script_l(int p, LogCoordinate x);

// X_1(t) = (1 - ln t)^{-1}, X_k = X_1(X_{k-1}(t)); t in (0,1]
double xk(int k, double t);
// same, with t = exp(-(s)) given through its log coordinate (s may exceed 700)
double xk_from_s(int k, double s);

// plain iterated natural log of a real argument: ln_0(x) = x, ln_k = ln(ln_{k-1})
double lnk(int k, double x);

}  // namespace confining
