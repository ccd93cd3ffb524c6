#include "confining/potentials.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace confining {

namespace {
constexpr double kLn2 = 0.69314718055994530942;
}

IntegrableProfile IntegrableProfile::zero() {
    IntegrableProfile pr;
    pr.name = "zero";
    pr.f = [](double) { return 0.0; };
    pr.cum = [](double) { return 0.0; };
    pr.cum_s = [](double) { return 0.0; };
    pr.tf_s = [](double) { return 0.0; };
    return pr;
}

IntegrableProfile IntegrableProfile::one() {
    IntegrableProfile pr;
    pr.name = "one";
    pr.f = [](double) { return 1.0; };
    pr.cum = [](double t) { return 1.0 - t; };
    pr.cum_s = [](double s) { return -std::expm1(-s); };
    pr.tf_s = [](double s) { return std::exp(-s); };
    return pr;
}

// --- coefficient formulas -----------------------------------------------------

double critical_coeff(int p, LogCoordinate x) {
    if (p < 1) throw std::invalid_argument("critical_coeff: p must be >= 1");
    double w = 0.75;
    for (int j = 2; j <= p; ++j) w -= prod_inv(j - 1, x);
    return w;
}

double optimality_coeff(int p, double c, LogCoordinate x) {
    if (p < 2) throw std::invalid_argument("optimality_coeff: p must be >= 2");
    double w = 0.75;
    for (int j = 2; j <= p - 1; ++j) w -= prod_inv(j - 1, x);
    return w - c * prod_inv(p - 1, x);
}

// --- potential families -------------------------------------------------------

struct PotentialFamily::Impl {
    Kind kind;
    std::string name;
    int p = 1;
    double c = 0;
    double alpha = 0;
    double leading = 0;
    double min_s = 0;
    std::function<double(double)> w_fn;
};

PotentialFamily PotentialFamily::power_critical(double c) {
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::PowerCritical;
    impl->c = c;
    impl->min_s = 0;
    impl->w_fn = [c](double) { return c; };
    std::ostringstream os;
    os << "power[c=" << c << "]";
    impl->name = os.str();
    return PotentialFamily(impl);
}

PotentialFamily PotentialFamily::log_hierarchy(int p, double leading, double last_constant) {
    if (p < 2 || p > 5)
        throw std::invalid_argument("log_hierarchy: p must be in [2,5]");
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::LogHierarchy;
    impl->p = p;
    impl->leading = leading;
    impl->c = last_constant;
    impl->min_s = iterlog_threshold(p - 1);
    impl->w_fn = [p, leading, last_constant](double s) {
        return optimality_coeff(p, last_constant, LogCoordinate(s)) - 0.75 + leading;
    };
    std::ostringstream os;
    os << "loghier[p=" << p << ",lead=" << leading << ",c=" << last_constant << "]";
    impl->name = os.str();
    return PotentialFamily(impl);
}

PotentialFamily PotentialFamily::counterexample(int p, double alpha) {
    if (p < 1 || p > 4)
        throw std::invalid_argument("counterexample: p must be in [1,4]");
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Counterexample;
    impl->p = p;
    impl->alpha = alpha;
    impl->min_s = iterlog_threshold(p);
    impl->w_fn = [p, alpha](double s) {
        return counterexample_potential(p, alpha, LogCoordinate(s));
    };
    std::ostringstream os;
    os << "counterexample[p=" << p << ",alpha=" << alpha << "]";
    impl->name = os.str();
    return PotentialFamily(impl);
}

PotentialFamily PotentialFamily::bounded_perturbation(PotentialFamily base, IntegrableProfile f) {
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::BoundedPerturbation;
    impl->p = base.p();
    impl->c = base.c();
    impl->alpha = base.alpha();
    impl->min_s = base.domain_min_s();
    auto base_impl = base.impl_;
    auto tf = f.tf_s;
    // V - f shifts the coefficient by t^2 f(t) = e^{-s} * (t f(t))
    impl->w_fn = [base_impl, tf](double s) {
        return base_impl->w_fn(s) - std::exp(-s) * tf(s);
    };
    impl->name = base.describe() + "-" + f.name;
    return PotentialFamily(impl);
}

PotentialFamily PotentialFamily::custom(std::string name, std::function<double(double)> w,
                                        double domain_min_s) {
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Custom;
    impl->min_s = domain_min_s;
    impl->w_fn = std::move(w);
    impl->name = "custom:" + name;
    return PotentialFamily(impl);
}

double PotentialFamily::w(double s) const {
    if (!(s >= impl_->min_s))
        throw std::domain_error("PotentialFamily::w: s below admissible domain");
    return impl_->w_fn(s);
}

double PotentialFamily::v_at(double t) const {
    LogCoordinate x = LogCoordinate::from_t(t);
    return w(x.s) / (t * t);
}

double PotentialFamily::domain_min_s() const { return impl_->min_s; }
PotentialFamily::Kind PotentialFamily::kind() const { return impl_->kind; }
int PotentialFamily::p() const { return impl_->p; }
double PotentialFamily::c() const { return impl_->c; }
double PotentialFamily::alpha() const { return impl_->alpha; }
double PotentialFamily::leading() const { return impl_->leading; }
std::string PotentialFamily::profile_name() const { return impl_->name; }
std::string PotentialFamily::describe() const { return impl_->name; }

// --- explicit borderline solutions ---------------------------------------------

namespace {

// P_j = prod_inv(j), Q_j = P_1 + ... + P_j, evaluated in one pass
struct LogDerivs {
    double sum_p_below;  // sum_{j=1}^{p-1} P_j
    double p_p;          // P_p
    double us;           // d(ln psi)/ds
    double uss;
    double sum_lnl_below;  // sum_{j=1}^{p-1} ln L_j
    double ln_l_p;
};

LogDerivs psi_derivs(int p, double alpha, LogCoordinate x) {
    if (p < 1 || p > 4) throw std::invalid_argument("counterexample: p must be in [1,4]");
    LogDerivs d{0, 0, 0, 0, 0, 0};
    double log_prod = 0;  // ln(L_1 ... L_j)
    double q = 0;         // Q_j
    double sum_pq_below = 0;
    double pq_p = 0;
    for (int j = 1; j <= p; ++j) {
        double lj = iterlog(j, x);
        if (lj <= 0 && j == p)
            throw std::domain_error("counterexample: s below level-p domain");
        double lnlj = std::log(lj);
        log_prod += lnlj;
        double pj = std::exp(-log_prod);
        q += pj;
        if (j < p) {
            d.sum_p_below += pj;
            d.sum_lnl_below += lnlj;
            sum_pq_below += pj * q;
        } else {
            d.p_p = pj;
            d.ln_l_p = lnlj;
            pq_p = pj * q;
        }
    }
    d.us = 0.5 - 0.5 * d.sum_p_below + alpha * d.p_p;
    d.uss = 0.5 * sum_pq_below - alpha * pq_p;
    return d;
}

}  // namespace

double counterexample_psi_log(int p, double alpha, LogCoordinate x) {
    LogDerivs d = psi_derivs(p, alpha, x);
    return 0.5 * x.s - 0.5 * d.sum_lnl_below + alpha * d.ln_l_p;
}

double counterexample_psi_dlog(int p, double alpha, double s) {
    return psi_derivs(p, alpha, LogCoordinate(s)).us;
}

double counterexample_potential(int p, double alpha, LogCoordinate x) {
    LogDerivs d = psi_derivs(p, alpha, x);
    return d.us * d.us + d.us + d.uss;
}

double counterexample_potential_display(int p, double alpha, LogCoordinate x) {
    // leading terms 3/4 - sum P_j + 2 alpha P_p plus the quadratic remainder,
    // grouped the way the asymptotic expansion prints them
    LogDerivs d = psi_derivs(p, alpha, x);
    double a = d.sum_p_below;
    double pp = d.p_p;
    double lead = 0.75 - a + 2.0 * alpha * pp;
    // remainder: (1/4)A^2 + alpha^2 P_p^2 - alpha A P_p + (1/2) sum_{j<p} P_j Q_j
    //            - alpha P_p Q_p, with the PQ sums recomputed here
    double log_prod = 0, q = 0, sum_pq_below = 0, pq_p = 0;
    for (int j = 1; j <= p; ++j) {
        double lj = iterlog(j, x);
        log_prod += std::log(lj);
        double pj = std::exp(-log_prod);
        q += pj;
        if (j < p)
            sum_pq_below += pj * q;
        else
            pq_p = pj * q;
    }
    double rem = 0.25 * a * a + alpha * alpha * pp * pp - alpha * a * pp +
                 0.5 * sum_pq_below - alpha * pq_p;
    return lead + rem;
}

SampledSolution counterexample_psi_sample(int p, double alpha,
                                          const std::vector<double>& s_grid) {
    SampledSolution out;
    out.s = s_grid;
    out.u.reserve(s_grid.size());
    out.du.reserve(s_grid.size());
    for (double s : s_grid) {
        LogCoordinate x(s);
        double lnpsi = counterexample_psi_log(p, alpha, x);
        double us = counterexample_psi_dlog(p, alpha, s);
        out.u.push_back(LogValue::from_parts(1, lnpsi));
        // d psi/dt = -e^s * u_s * psi
        if (us == 0)
            out.du.push_back(LogValue{});
        else
            out.du.push_back(LogValue::from_parts(us > 0 ? -1 : 1,
                                                  lnpsi + s + std::log(std::abs(us))));
    }
    return out;
}

SampledSolution second_solution(int p, double alpha, const std::vector<double>& s_grid) {
    if (s_grid.size() < 8)
        throw std::invalid_argument("second_solution: grid too small");
    SampledSolution psi = counterexample_psi_sample(p, alpha, s_grid);
    std::vector<double> log_f(s_grid.size());
    for (size_t i = 0; i < s_grid.size(); ++i)
        log_f[i] = -2.0 * psi.u[i].log_abs - s_grid[i];
    LogCumulative cum = log_cumulative_from_deep(s_grid, log_f);

    SampledSolution out;
    out.s = s_grid;
    out.tail_resolved = cum.tail_resolved;
    out.u.reserve(s_grid.size());
    out.du.reserve(s_grid.size());
    for (size_t i = 0; i < s_grid.size(); ++i) {
        LogValue big_i = LogValue::from_parts(1, cum.log_integral[i]);
        out.u.push_back(log_mul(psi.u[i], big_i));
        // phi' = psi' * I + 1/psi
        LogValue inv_psi = LogValue::from_parts(1, -psi.u[i].log_abs);
        out.du.push_back(log_add(log_mul(psi.du[i], big_i), inv_psi));
    }
    return out;
}

// --- weight functions ---------------------------------------------------------

double GFunction::d0() const {
    if (!d0_materializable())
        throw std::domain_error("GFunction: cutoff too deep to materialize as t");
    return std::exp(-s0);
}

namespace {

void check_d0(double d0) {
    if (!(d0 > 0) || !(d0 < 1))
        throw std::invalid_argument("weight function: d0 must lie in (0,1)");
}

}  // namespace

GFunction g_log(double d0) {
    check_d0(d0);
    double s0 = std::log(1.0 / d0);
    GFunction g;
    g.name = "log";
    g.s0 = s0;
    g.value = [s0](double s) { return s < s0 ? -s0 : -s; };
    g.slope_t = [s0](double s) { return s <= s0 ? 0.0 : 1.0; };
    return g;
}

GFunction g_log_minus_ct(double c, double d0) {
    check_d0(d0);
    if (!(c >= 0) || c * d0 > 1.0)
        throw std::invalid_argument("g_log_minus_ct: need 0 <= c <= 1/d0");
    double s0 = std::log(1.0 / d0);
    GFunction g;
    std::ostringstream os;
    os << "log-ct[c=" << c << "]";
    g.name = os.str();
    g.s0 = s0;
    g.value = [s0, c](double s) {
        double se = s < s0 ? s0 : s;
        return -se - c * std::exp(-se);
    };
    g.slope_t = [s0, c](double s) { return s <= s0 ? 0.0 : 1.0 - c * std::exp(-s); };
    return g;
}

GFunction g_log_plus_klog1(double kcoef, double d0) {
    check_d0(d0);
    double s0 = std::log(1.0 / d0);
    if (!(kcoef >= 0) || (kcoef > 0 && s0 < kcoef))
        throw std::invalid_argument("g_log_plus_klog1: need ln(1/d0) >= k so the slope stays in [0,1]");
    GFunction g;
    std::ostringstream os;
    os << "log+klog1[k=" << kcoef << "]";
    g.name = os.str();
    g.s0 = s0;
    g.value = [s0, kcoef](double s) {
        double se = s < s0 ? s0 : s;
        return -se + kcoef * std::log(se);
    };
    g.slope_t = [s0, kcoef](double s) { return s <= s0 ? 0.0 : 1.0 - kcoef / s; };
    return g;
}

namespace {

struct HParts {
    double s_h;
    double hprime;
    double t_over_h;
};

// h(t): identity below d0/2, frozen at (3/4) d0 above d0, C^2 quartic joint
// q(tau) = tau - tau^3 + tau^4/2 in between; all in s = ln(1/t)
HParts h_parts(double s, double s0) {
    if (s >= s0 + kLn2) return {s, 1.0, 1.0};
    if (s < s0) {
        double sh = s0 + std::log(4.0 / 3.0);
        return {sh, 0.0, std::exp(sh - s)};
    }
    double tau = 2.0 * std::exp(s0 - s) - 1.0;
    double q = tau * (1.0 - tau * tau * (1.0 - 0.5 * tau));
    double sh = s0 + kLn2 - std::log1p(q);
    double hp = (1.0 - tau) * (1.0 - tau) * (1.0 + 2.0 * tau);
    return {sh, hp, std::exp(sh - s)};
}

double script_l_or_zero(int p, double s) {
    return p >= 2 ? script_l(p, LogCoordinate(s)) : 0.0;
}

// integral of scriptL_p^2 / 4 from s_base to sigma, geometric panels
double scriptl_tail_integral(int p, double s_base, double sigma) {
    if (p < 2 || sigma <= s_base) return 0.0;
    auto f = [p](double x) {
        double l = script_l(p, LogCoordinate(x));
        return 0.25 * l * l;
    };
    double span = sigma - s_base;
    int panels = 24;
    double lw = std::log1p(span);
    double total = 0;
    double lo = s_base;
    for (int i = 1; i <= panels; ++i) {
        double hi = s_base + std::expm1(lw * i / panels);
        if (i == panels) hi = sigma;
        total += integrate_gl(f, lo, hi, 1, 10);
        lo = hi;
    }
    return total;
}

}  // namespace

GFunction g_hierarchy_build(int p, const IntegrableProfile& f, double d_omega) {
    if (p < 1 || p > 4)
        throw std::invalid_argument("g_hierarchy_build: p must be in [1,4]");
    if (!(d_omega > 0) || d_omega > 1)
        throw std::invalid_argument("g_hierarchy_build: d_omega must lie in (0,1]");
    double s_support = iterlog_threshold(p);  // ln(e_p) = e_{p-1}
    double s_floor = std::max(s_support, std::log(1.0 / d_omega));

    auto tf = f.tf_s;
    auto bracket = [p, tf](double s) {
        double l = script_l_or_zero(p, s);
        return 1.0 - 0.5 * l - tf(s) - 0.25 * l * l;
    };

    // largest admissible cutoff: scan a grid below s_floor + 64 and move the
    // cutoff past the last violation; scriptL and t f(t) decay further in, so
    // passing the window certifies the tail for the shipped profiles
    constexpr int kGrid = 512;
    constexpr double kMargin = 1e-6;
    double s0 = s_floor;
    int last_bad = -1;
    for (int i = 0; i < kGrid; ++i) {
        double s = s_floor + 64.0 * i / (kGrid - 1);
        if (bracket(s) < 2.0 / 3.0 + kMargin) last_bad = i;
    }
    if (last_bad == kGrid - 1)
        throw std::domain_error("g_hierarchy_build: no admissible cutoff in search window");
    if (last_bad >= 0) s0 = s_floor + 64.0 * (last_bad + 1) / (kGrid - 1);

    auto cum_s = f.cum_s;
    double cum_at_support = cum_s(s_support);

    GFunction g;
    std::ostringstream os;
    os << "hierarchy[p=" << p << ",f=" << f.name << "]";
    g.name = os.str();
    g.s0 = s0;
    g.value = [p, s0, s_support, cum_s, cum_at_support](double s) {
        HParts h = h_parts(s, s0);
        double v = -h.s_h;
        LogCoordinate xh(h.s_h);
        for (int j = 2; j <= p; ++j) v += 0.5 * iterlog(j, xh);
        v += cum_s(h.s_h) - cum_at_support;
        v += scriptl_tail_integral(p, s_support, h.s_h);
        return v;
    };
    g.slope_t = [p, s0, tf](double s) {
        HParts h = h_parts(s, s0);
        if (h.hprime == 0) return 0.0;
        double l = script_l_or_zero(p, h.s_h);
        return h.t_over_h * h.hprime * (1.0 - 0.5 * l - tf(h.s_h) - 0.25 * l * l);
    };
    return g;
}

}  // namespace confining
