#include "confining/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace confining {

LogValue LogValue::from_double(double v) {
    if (v == 0.0) return LogValue{};
    return LogValue{v > 0 ? 1 : -1, std::log(std::abs(v))};
}

double LogValue::to_double() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(log_abs);
}

LogValue log_mul(LogValue a, LogValue b) {
    if (a.sign == 0 || b.sign == 0) return LogValue{};
    return LogValue{a.sign * b.sign, a.log_abs + b.log_abs};
}

double logaddexp(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    double m = std::max(a, b);
    return m + std::log1p(std::exp(std::min(a, b) - m));
}

LogValue log_add(LogValue a, LogValue b) {
    if (a.sign == 0) return b;
    if (b.sign == 0) return a;
    if (a.sign == b.sign) return LogValue{a.sign, logaddexp(a.log_abs, b.log_abs)};
    // opposite signs: subtract magnitudes
    if (a.log_abs == b.log_abs) return LogValue{};
    const LogValue& big = (a.log_abs > b.log_abs) ? a : b;
    const LogValue& small = (a.log_abs > b.log_abs) ? b : a;
    double diff = big.log_abs + std::log1p(-std::exp(small.log_abs - big.log_abs));
    return LogValue{big.sign, diff};
}

// --- Dormand-Prince 5(4) ----------------------------------------------------

namespace {

struct Dp45 {
    // classic DOPRI5 tableau
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
};

using Vec2 = std::array<double, 2>;

inline Vec2 axpy(double h, const Vec2& d, const Vec2& y) {
    return {y[0] + h * d[0], y[1] + h * d[1]};
}

}  // namespace

LinearOdeResult integrate_linear2(const std::function<double(double)>& a,
                                  const std::function<double(double)>& b,
                                  const std::vector<double>& nodes,
                                  Vec2 y0, const Rk45Options& opt) {
    if (nodes.size() < 2) throw std::invalid_argument("integrate_linear2: need at least 2 nodes");
    const double dir = (nodes.back() > nodes.front()) ? 1.0 : -1.0;
    for (size_t i = 1; i < nodes.size(); ++i)
        if ((nodes[i] - nodes[i - 1]) * dir <= 0)
            throw std::invalid_argument("integrate_linear2: nodes must be strictly monotone");

    auto rhs = [&](double x, const Vec2& y) -> Vec2 { return {y[1], a(x) * y[1] + b(x) * y[0]}; };

    LinearOdeResult res;
    res.y.reserve(nodes.size());
    res.log_scale.reserve(nodes.size());

    Vec2 y = y0;
    double scale = 0.0;
    res.y.push_back(y);
    res.log_scale.push_back(scale);

    const double span = std::abs(nodes.back() - nodes.front());
    double h = dir * std::min(1e-3 * span + 1e-12, 0.1);
    double x = nodes.front();
    Vec2 k1 = rhs(x, y);
    int last_sign = (y[0] > 0) - (y[0] < 0);

    for (size_t target = 1; target < nodes.size(); ++target) {
        const double xt = nodes[target];
        while (dir * (xt - x) > 0) {
            bool clipped = false;
            if (dir * (x + h - xt) > 0) {
                h = xt - x;
                clipped = true;
            }
            if (std::abs(h) < 1e-15 * (std::abs(x) + 1.0)) {
                if (clipped) break;  // already at the node up to rounding
                throw std::runtime_error("integrate_linear2: step size underflow at x=" +
                                         std::to_string(x));
            }
            if (++res.steps > opt.max_steps)
                throw std::runtime_error("integrate_linear2: step budget exhausted");

            Vec2 k2 = rhs(x + Dp45::c2 * h, axpy(h * Dp45::a21, k1, y));
            Vec2 k3 = rhs(x + Dp45::c3 * h,
                          {y[0] + h * (Dp45::a31 * k1[0] + Dp45::a32 * k2[0]),
                           y[1] + h * (Dp45::a31 * k1[1] + Dp45::a32 * k2[1])});
            Vec2 k4 = rhs(x + Dp45::c4 * h,
                          {y[0] + h * (Dp45::a41 * k1[0] + Dp45::a42 * k2[0] + Dp45::a43 * k3[0]),
                           y[1] + h * (Dp45::a41 * k1[1] + Dp45::a42 * k2[1] + Dp45::a43 * k3[1])});
            Vec2 k5 = rhs(x + Dp45::c5 * h,
                          {y[0] + h * (Dp45::a51 * k1[0] + Dp45::a52 * k2[0] + Dp45::a53 * k3[0] +
                                       Dp45::a54 * k4[0]),
                           y[1] + h * (Dp45::a51 * k1[1] + Dp45::a52 * k2[1] + Dp45::a53 * k3[1] +
                                       Dp45::a54 * k4[1])});
            Vec2 k6 = rhs(x + h,
                          {y[0] + h * (Dp45::a61 * k1[0] + Dp45::a62 * k2[0] + Dp45::a63 * k3[0] +
                                       Dp45::a64 * k4[0] + Dp45::a65 * k5[0]),
                           y[1] + h * (Dp45::a61 * k1[1] + Dp45::a62 * k2[1] + Dp45::a63 * k3[1] +
                                       Dp45::a64 * k4[1] + Dp45::a65 * k5[1])});
            Vec2 ynew = {y[0] + h * (Dp45::b1 * k1[0] + Dp45::b3 * k3[0] + Dp45::b4 * k4[0] +
                                     Dp45::b5 * k5[0] + Dp45::b6 * k6[0]),
                         y[1] + h * (Dp45::b1 * k1[1] + Dp45::b3 * k3[1] + Dp45::b4 * k4[1] +
                                     Dp45::b5 * k5[1] + Dp45::b6 * k6[1])};
            Vec2 k7 = rhs(x + h, ynew);
            Vec2 errv = {h * (Dp45::e1 * k1[0] + Dp45::e3 * k3[0] + Dp45::e4 * k4[0] +
                              Dp45::e5 * k5[0] + Dp45::e6 * k6[0] + Dp45::e7 * k7[0]),
                         h * (Dp45::e1 * k1[1] + Dp45::e3 * k3[1] + Dp45::e4 * k4[1] +
                              Dp45::e5 * k5[1] + Dp45::e6 * k6[1] + Dp45::e7 * k7[1])};
            double err = 0;
            for (int i = 0; i < 2; ++i) {
                double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
                err = std::max(err, std::abs(errv[i]) / sc);
            }
            if (err <= 1.0) {  // accept
                x += h;
                y = ynew;
                k1 = k7;  // FSAL
                res.max_local_error = std::max(res.max_local_error, err * opt.rtol);
                int s = (y[0] > 0) - (y[0] < 0);
                if (s != 0 && last_sign != 0 && s != last_sign) ++res.sign_changes;
                if (s != 0) last_sign = s;
                double m = std::max(std::abs(y[0]), std::abs(y[1]));
                if (m > 1e150 || (m > 0 && m < 1e-150)) {
                    y[0] /= m;
                    y[1] /= m;
                    k1[0] /= m;
                    k1[1] /= m;
                    scale += std::log(m);
                }
            }
            double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
            h *= std::clamp(fac, 0.2, 5.0);
        }
        res.y.push_back(y);
        res.log_scale.push_back(scale);
    }
    return res;
}

// --- Gauss-Legendre ---------------------------------------------------------

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

double integrate_gl(const std::function<double(double)>& f, double a, double b, int panels,
                    int points_per_panel) {
    std::vector<double> xs, ws;
    gauss_legendre(points_per_panel, xs, ws);
    double total = 0;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        double lo = a + p * h, mid = lo + 0.5 * h;
        double acc = 0;
        for (int i = 0; i < points_per_panel; ++i) acc += ws[i] * f(mid + 0.5 * h * xs[i]);
        total += acc * 0.5 * h;
    }
    return total;
}

double integrate_simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n < 2 || n % 2) throw std::invalid_argument("integrate_simpson: n must be even and >= 2");
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

LogCumulative log_cumulative_from_deep(const std::vector<double>& s,
                                       const std::vector<double>& log_f) {
    const size_t n = s.size();
    if (n < 3 || log_f.size() != n)
        throw std::invalid_argument("log_cumulative_from_deep: need >= 3 matching nodes");
    LogCumulative out;
    out.log_integral.assign(n, -std::numeric_limits<double>::infinity());

    // decay rate at the deep end, from the last few nodes
    const double rate = (log_f[n - 1] - log_f[n - 4 < n ? n - 4 : 0]) /
                        (s[n - 1] - s[n - 4 < n ? n - 4 : 0]);
    out.tail_rate = rate;
    double acc;  // ln of accumulated integral from s_i to infinity
    if (rate < -0.05) {
        acc = log_f[n - 1] - std::log(-rate);  // exponential tail
    } else {
        acc = -std::numeric_limits<double>::infinity();
        out.tail_resolved = false;
    }
    out.log_integral[n - 1] = acc;
    for (size_t i = n - 1; i-- > 0;) {
        const double h = s[i + 1] - s[i];
        const double la = log_f[i], lb = log_f[i + 1];
        double piece;  // ln of int_{s_i}^{s_{i+1}} f, exact for exponential f
        const double d = lb - la;
        if (std::abs(d) > 1e-8)
            piece = logaddexp(la, lb) + std::log(h) - std::log(std::abs(d)) +
                    std::log(std::abs(1.0 - std::exp(-std::abs(d)))) -
                    std::log1p(std::exp(-std::abs(d)));
        else
            piece = la + std::log(h) + std::log1p(std::exp(d)) - std::log(2.0);
        acc = logaddexp(acc, piece);
        out.log_integral[i] = acc;
    }
    return out;
}

// --- least squares ----------------------------------------------------------

LstsqFit lstsq(const std::vector<std::vector<double>>& columns, const std::vector<double>& y) {
    const size_t k = columns.size(), m = y.size();
    if (k == 0 || m < k) throw std::invalid_argument("lstsq: need m >= k >= 1");
    for (auto& c : columns)
        if (c.size() != m) throw std::invalid_argument("lstsq: ragged columns");

    // column equilibration
    std::vector<double> scale(k, 1.0);
    std::vector<double> A(m * k);  // column-major
    for (size_t j = 0; j < k; ++j) {
        double nrm = 0;
        for (size_t i = 0; i < m; ++i) nrm += columns[j][i] * columns[j][i];
        nrm = std::sqrt(nrm);
        scale[j] = (nrm > 0) ? nrm : 1.0;
        for (size_t i = 0; i < m; ++i) A[j * m + i] = columns[j][i] / scale[j];
    }
    std::vector<double> b = y;

    // Householder QR, applied in place
    for (size_t j = 0; j < k; ++j) {
        double nrm = 0;
        for (size_t i = j; i < m; ++i) nrm += A[j * m + i] * A[j * m + i];
        nrm = std::sqrt(nrm);
        if (nrm == 0) throw std::runtime_error("lstsq: rank-deficient design matrix");
        double alpha = (A[j * m + j] > 0) ? -nrm : nrm;
        std::vector<double> v(m, 0.0);
        for (size_t i = j; i < m; ++i) v[i] = A[j * m + i];
        v[j] -= alpha;
        double vnorm2 = 0;
        for (size_t i = j; i < m; ++i) vnorm2 += v[i] * v[i];
        if (vnorm2 > 0) {
            for (size_t col = j; col < k; ++col) {
                double dot = 0;
                for (size_t i = j; i < m; ++i) dot += v[i] * A[col * m + i];
                double f = 2.0 * dot / vnorm2;
                for (size_t i = j; i < m; ++i) A[col * m + i] -= f * v[i];
            }
            double dot = 0;
            for (size_t i = j; i < m; ++i) dot += v[i] * b[i];
            double f = 2.0 * dot / vnorm2;
            for (size_t i = j; i < m; ++i) b[i] -= f * v[i];
        }
        A[j * m + j] = alpha;
    }

    LstsqFit fit;
    fit.coef.assign(k, 0.0);
    for (size_t j = k; j-- > 0;) {
        double acc = b[j];
        for (size_t l = j + 1; l < k; ++l) acc -= A[l * m + j] * fit.coef[l];
        fit.coef[j] = acc / A[j * m + j];
    }
    for (size_t j = 0; j < k; ++j) fit.coef[j] /= scale[j];

    double ss_res = 0;
    for (size_t i = k; i < m; ++i) ss_res += b[i] * b[i];
    double mean = 0;
    for (double v : y) mean += v;
    mean /= m;
    double ss_tot = 0;
    for (double v : y) ss_tot += (v - mean) * (v - mean);
    fit.rms_residual = std::sqrt(ss_res / m);
    fit.r2 = (ss_tot > 0) ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

}  // namespace confining
