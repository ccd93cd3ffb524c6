#include "confining/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "confining/agmon.hpp"
#include "confining/iterlog.hpp"
#include "confining/numerics.hpp"

namespace confining {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

TestFunction TestFunction::sine() {
    TestFunction tf;
    tf.name = "sine";
    tf.value = [](double x) { return std::sin(M_PI * x); };
    tf.derivative = [](double x) { return M_PI * std::cos(M_PI * x); };
    tf.log_value_s = [](double s, bool) { return std::log(std::sin(M_PI * std::exp(-s))); };
    tf.log_deriv_s = [](double s, bool) {
        double c = std::abs(std::cos(M_PI * std::exp(-s)));
        return c == 0 ? kNegInf : std::log(M_PI * c);
    };
    return tf;
}

TestFunction TestFunction::parabola() {
    TestFunction tf;
    tf.name = "parabola";
    tf.value = [](double x) { return x * (1.0 - x); };
    tf.derivative = [](double x) { return 1.0 - 2.0 * x; };
    tf.log_value_s = [](double s, bool) { return -s + std::log1p(-std::exp(-s)); };
    tf.log_deriv_s = [](double s, bool) {
        double v = 1.0 - 2.0 * std::exp(-s);
        return v <= 0 ? kNegInf : std::log(v);
    };
    return tf;
}

TestFunction TestFunction::power_boundary(double eps) {
    if (!(eps > 0) || eps > 1)
        throw std::invalid_argument("power_boundary: eps must lie in (0, 1]");
    TestFunction tf;
    tf.name = "power";
    tf.param = eps;
    double q = 0.5 + eps;
    tf.value = [q](double x) { return std::pow(std::min(x, 1.0 - x), q); };
    tf.derivative = [q](double x) {
        double d = std::min(x, 1.0 - x);
        double m = q * std::pow(d, q - 1.0);
        return x < 0.5 ? m : -m;
    };
    tf.log_value_s = [q](double s, bool) { return -q * s; };
    tf.log_deriv_s = [q](double s, bool) { return std::log(q) + (1.0 - q) * s; };
    return tf;
}

TestFunction TestFunction::bump_product(double a, double b) {
    if (!(a > 0) || !(b < 1) || !(a < b))
        throw std::invalid_argument("bump_product: need 0 < a < b < 1");
    TestFunction tf;
    tf.name = "bump";
    tf.param = a;
    tf.value = [a, b](double x) { return bump_value(x, a, b); };
    tf.derivative = [a, b](double x) { return bump_derivative(x, a, b); };
    tf.log_value_s = [a, b](double s, bool right) {
        double x = right ? 1.0 - std::exp(-s) : std::exp(-s);
        double v = bump_value(x, a, b);
        return v == 0 ? kNegInf : std::log(v);
    };
    tf.log_deriv_s = [a, b](double s, bool right) {
        double x = right ? 1.0 - std::exp(-s) : std::exp(-s);
        double v = std::abs(bump_derivative(x, a, b));
        return v == 0 ? kNegInf : std::log(v);
    };
    double w = 0.25 * (b - a);
    for (double xb : {a, a + w, b - w, b}) {
        if (xb < 0.5)
            tf.breaks_left.push_back(std::log(1.0 / xb));
        else if (xb > 0.5)
            tf.breaks_right.push_back(std::log(1.0 / (1.0 - xb)));
    }
    std::sort(tf.breaks_left.begin(), tf.breaks_left.end());
    std::sort(tf.breaks_right.begin(), tf.breaks_right.end());
    return tf;
}

namespace {

// 1 + sum_{i=1}^{depth} prod_{k=1}^{i} X_k^2(e^{-(s + ln D)})
double layered_weight(double s, double ln_d_big, int depth) {
    double sum = 1.0, prod = 1.0;
    for (int k = 1; k <= depth; ++k) {
        double x = xk_from_s(k, s + ln_d_big);
        prod *= x * x;
        sum += prod;
    }
    return sum;
}

QuotientReport weighted_quotient(const TestFunction& phi, double a_const, double d_big,
                                 int depth, const HardyOptions& opt) {
    if (depth < 0 || depth > 4)
        throw std::invalid_argument("hardy: weight depth must lie in [0, 4]");
    double ln_d_big = 0;
    if (depth > 0) {
        if (!(d_big >= 0.5))
            throw std::invalid_argument(
                "hardy: the layered weight needs d/D <= 1, i.e. D >= 1/2");
        ln_d_big = std::log(d_big);
    }
    if (!(opt.panel_width > 0) || opt.min_panels < 1 || !(opt.s_cap > 2.0))
        throw std::invalid_argument("hardy: bad quadrature options");

    std::vector<double> qx, qw;
    gauss_legendre(10, qx, qw);
    QuotientReport rep{0, 0, 0, 0, std::log(2.0), true};
    const double tiny = 1e-300;
    for (bool right : {false, true}) {
        const std::vector<double>& brk = right ? phi.breaks_right : phi.breaks_left;
        double s = std::log(2.0);
        double grad = 0, l2 = 0, wgt = 0;
        int panel = 0;
        bool resolved = false;
        while (s < opt.s_cap) {
            double s1 = std::min(s + opt.panel_width, opt.s_cap);
            // split the panel at declared non-smooth points of phi
            std::vector<double> edges{s};
            for (double bp : brk)
                if (bp > s && bp < s1) edges.push_back(bp);
            edges.push_back(s1);
            double pg = 0, pl = 0, pw = 0;
            for (size_t e = 0; e + 1 < edges.size(); ++e) {
                double lo = edges[e], hi = edges[e + 1];
                for (size_t i = 0; i < qx.size(); ++i) {
                    double sg = lo + 0.5 * (hi - lo) * (1.0 + qx[i]);
                    double w = 0.5 * (hi - lo) * qw[i];
                    double lv = phi.log_value_s(sg, right);
                    double ld = phi.log_deriv_s(sg, right);
                    if (std::isfinite(ld)) pg += w * std::exp(2.0 * ld - sg);
                    if (std::isfinite(lv)) {
                        pl += w * std::exp(2.0 * lv - sg);
                        double mass = std::exp(2.0 * lv + sg);
                        pw += w * (depth == 0 ? mass : mass * layered_weight(sg, ln_d_big, depth));
                    }
                }
            }
            grad += pg;
            l2 += pl;
            wgt += pw;
            ++panel;
            s = s1;
            if (panel >= opt.min_panels && pg <= opt.tail_rel * (grad + tiny) &&
                pw <= opt.tail_rel * (wgt + tiny)) {
                resolved = true;
                break;
            }
        }
        rep.grad_term += grad;
        rep.l2_term += l2;
        rep.weighted_term += 0.25 * wgt;
        rep.s_max_used = std::max(rep.s_max_used, s);
        rep.resolved = rep.resolved && resolved;
    }
    if (!(rep.weighted_term > 0))
        throw std::domain_error("hardy: test function carries no boundary-weighted mass");
    rep.quotient = (rep.grad_term + a_const * rep.l2_term) / rep.weighted_term;
    return rep;
}

}  // namespace

QuotientReport hardy_quotient(const TestFunction& phi, double a_const,
                              const HardyOptions& opt) {
    return weighted_quotient(phi, a_const, 0.0, 0, opt);
}

QuotientReport improved_quotient(const TestFunction& phi, double d_big, int depth,
                                 const HardyOptions& opt) {
    return weighted_quotient(phi, 0.0, d_big, depth, opt);
}

SharpnessProbe sharpness_probe(const std::vector<double>& eps_sequence, double a_const,
                               const HardyOptions& opt) {
    if (eps_sequence.empty())
        throw std::invalid_argument("sharpness_probe: empty sequence");
    for (size_t i = 1; i < eps_sequence.size(); ++i)
        if (!(eps_sequence[i] < eps_sequence[i - 1]))
            throw std::invalid_argument("sharpness_probe: eps must decrease");
    SharpnessProbe probe;
    probe.eps = eps_sequence;
    for (double e : eps_sequence)
        probe.quotient.push_back(
            hardy_quotient(TestFunction::power_boundary(e), a_const, opt).quotient);
    probe.final_gap = probe.quotient.back() - 1.0;
    return probe;
}

}  // namespace confining
