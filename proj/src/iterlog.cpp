#include "confining/iterlog.hpp"

#include <array>
#include <cmath>

namespace confining {

namespace {

constexpr double kE1 = 2.718281828459045235360287471352;
const double kE2 = std::exp(kE1);          // 15.154262241479264
const double kE3 = std::exp(kE2);          // 3814279.1047602207

// e_0, e_1, e_2, e_3: admissibility thresholds for levels 1..4
const std::array<double, 4> kThresholds = {1.0, kE1, kE2, kE3};

// tolerate a few ulps below the threshold so that inputs computed as
// exp(exp(...)) still count as the domain edge
inline bool admissible(double s, double threshold) {
    return s >= threshold * (1.0 - 8.0 * 2.220446049250313e-16);
}

}  // namespace

LogCoordinate LogCoordinate::from_t(double t) {
    if (!(t > 0.0) || !(t < 1.0))
        throw std::domain_error("LogCoordinate: t must lie in (0,1), got t=" + std::to_string(t));
    return LogCoordinate(std::log(1.0 / t));
}

TowerValue tower_exp(int p) {
    if (p < 1) throw std::invalid_argument("tower_exp: p must be >= 1");
    if (p > 4)
        throw std::domain_error(
            "tower_exp: e_" + std::to_string(p) +
            " has ln(e_p) = e_" + std::to_string(p - 1) +
            " beyond double range; levels p >= 5 are not representable");
    // ln e_p = e_{p-1}
    return TowerValue{p, kThresholds[p - 1], p >= 4};
}

double iterlog_threshold(int k) {
    if (k < 1) throw std::invalid_argument("iterlog_threshold: k must be >= 1");
    if (k > 4)
        throw std::domain_error("iterlog: level " + std::to_string(k) +
                                " needs s >= e_" + std::to_string(k - 1) +
                                ", which is not representable");
    return kThresholds[k - 1];
}

double iterlog(int k, LogCoordinate x) {
    const double edge = iterlog_threshold(k);
    if (!admissible(x.s, edge))
        throw std::domain_error("iterlog: level " + std::to_string(k) + " requires s >= " +
                                std::to_string(edge) + ", got s=" + std::to_string(x.s));
    double v = x.s;
    for (int j = 2; j <= k; ++j) v = std::log(v);
    // rounding at the domain edge can land a hair below the exact value 1
    return v;
}

double prod_inv(int k, LogCoordinate x) {
    if (k < 0) throw std::invalid_argument("prod_inv: k must be >= 0");
    if (k == 0) return 1.0;
    const double edge = iterlog_threshold(k);
    if (!admissible(x.s, edge))
        throw std::domain_error("prod_inv: level " + std::to_string(k) + " requires s >= " +
                                std::to_string(edge) + ", got s=" + std::to_string(x.s));
    double v = x.s, acc = std::log(v);
    for (int j = 2; j <= k; ++j) {
        v = std::log(v);
        acc += std::log(v);
    }
    return std::exp(-acc);
}

double script_l(int p, LogCoordinate x) {
    if (p < 2) throw std::invalid_argument("script_l: p must be >= 2");
    const double edge = iterlog_threshold(p - 1);
    if (!admissible(x.s, edge))
        throw std::domain_error("script_l: level " + std::to_string(p) + " requires s >= " +
                                std::to_string(edge) + ", got s=" + std::to_string(x.s));
    double v = x.s, acc = std::log(v), sum = std::exp(-acc);  // k=2 term
    for (int k = 3; k <= p; ++k) {
        v = std::log(v);
        acc += std::log(v);
        sum += std::exp(-acc);
    }
    return sum;
}

double xk(int k, double t) {
    if (k < 1) throw std::invalid_argument("xk: k must be >= 1");
    if (!(t > 0.0) || t > 1.0)
        throw std::domain_error("xk: t must lie in (0,1], got t=" + std::to_string(t));
    double v = 1.0 / (1.0 - std::log(t));
    for (int j = 2; j <= k; ++j) v = 1.0 / (1.0 - std::log(v));
    return v;
}

double xk_from_s(int k, double s) {
    if (k < 1) throw std::invalid_argument("xk: k must be >= 1");
    if (!(s >= 0.0)) throw std::domain_error("xk: need s >= 0, got s=" + std::to_string(s));
    double v = 1.0 / (1.0 + s);  // X_1(exp(-s))
    for (int j = 2; j <= k; ++j) v = 1.0 / (1.0 - std::log(v));
    return v;
}

double lnk(int k, double x) {
    if (k < 0) throw std::invalid_argument("lnk: k must be >= 0");
    double v = x;
    for (int j = 1; j <= k; ++j) {
        if (!(v > 0.0))
            throw std::domain_error("lnk: level " + std::to_string(j) +
                                    " hit a non-positive argument " + std::to_string(v));
        v = std::log(v);
    }
    return v;
}

}  // namespace confining
