#include "confining/sturm.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace confining {

QuadratureGrid::QuadratureGrid(double s_min, double s_max, int n) {
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("QuadratureGrid: node count must be odd and >= 3");
    if (!(s_max > s_min) || !(s_min > 0))
        throw std::invalid_argument("QuadratureGrid: need 0 < s_min < s_max");
    s.resize(n);
    weight.resize(n);
    double h = (s_max - s_min) / (n - 1);
    for (int i = 0; i < n; ++i) {
        s[i] = s_min + h * i;
        weight[i] = (i == 0 || i == n - 1) ? h / 3.0 : (i % 2 ? 4.0 * h / 3.0 : 2.0 * h / 3.0);
    }
}

double QuadratureGrid::integrate_s(const std::function<double(double)>& f) const {
    double acc = 0;
    for (size_t i = 0; i < s.size(); ++i) acc += weight[i] * f(s[i]);
    return acc;
}

double QuadratureGrid::log_mass_dt(const std::vector<LogValue>& u) const {
    if (u.size() != s.size())
        throw std::invalid_argument("log_mass_dt: sample size mismatch");
    double peak = -std::numeric_limits<double>::infinity();
    std::vector<double> terms(s.size(), -std::numeric_limits<double>::infinity());
    for (size_t i = 0; i < s.size(); ++i) {
        if (u[i].sign == 0) continue;
        terms[i] = std::log(weight[i]) + 2.0 * u[i].log_abs - s[i];
        peak = std::max(peak, terms[i]);
    }
    if (!std::isfinite(peak)) return -std::numeric_limits<double>::infinity();
    double acc = 0;
    for (double t : terms) acc += std::exp(t - peak);
    return peak + std::log(acc);
}

double QuadratureGrid::self_check_rel_err() const {
    double approx = 0;
    for (size_t i = 0; i < s.size(); ++i) approx += weight[i] * std::exp(-2.0 * s[i]);
    double exact = 0.5 * (std::exp(-2.0 * s.front()) - std::exp(-2.0 * s.back()));
    return std::abs(approx - exact) / exact;
}

std::vector<double> make_s_grid(double s_lo, double s_hi, int n) {
    if (n < 2 || !(s_hi > s_lo))
        throw std::invalid_argument("make_s_grid: bad window");
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = s_lo + (s_hi - s_lo) * i / (n - 1);
    return g;
}

SampledSolution integrate_solution(const PotentialFamily& fam, double energy,
                                   const std::vector<double>& s_grid, double u0,
                                   double du0_t, double rtol, double atol) {
    if (s_grid.size() < 2)
        throw std::invalid_argument("integrate_solution: grid too small");
    if (s_grid.front() < fam.domain_min_s() - 1e-9)
        throw std::domain_error("integrate_solution: grid starts below the family domain");
    // u'' = (V - E) u in t becomes u_ss + u_s = (w(s) - E e^{-2s}) u
    auto a = [](double) { return -1.0; };
    auto b = [&fam, energy](double sx) { return fam.w(sx) - energy * std::exp(-2.0 * sx); };
    double s0 = s_grid.front();
    std::array<double, 2> y0{u0, -std::exp(-s0) * du0_t};
    Rk45Options opt;
    opt.rtol = rtol;
    opt.atol = atol;
    LinearOdeResult r = integrate_linear2(a, b, s_grid, y0, opt);

    SampledSolution out;
    out.s = s_grid;
    out.energy = energy;
    out.max_local_error = r.max_local_error;
    out.u.resize(s_grid.size());
    out.du.resize(s_grid.size());
    for (size_t i = 0; i < s_grid.size(); ++i) {
        double v = r.y[i][0], d = r.y[i][1];
        out.u[i] = v == 0 ? LogValue{}
                          : LogValue::from_parts(v > 0 ? 1 : -1,
                                                 r.log_scale[i] + std::log(std::abs(v)));
        // du/dt = -e^{s} u_s
        out.du[i] = d == 0 ? LogValue{}
                           : LogValue::from_parts(d > 0 ? -1 : 1,
                                                  r.log_scale[i] + std::log(std::abs(d)) + s_grid[i]);
    }
    return out;
}

SampledSolution recessive_from_dominant(const SampledSolution& dom) {
    size_t n = dom.s.size();
    if (n < 8) throw std::invalid_argument("recessive_from_dominant: grid too small");
    std::vector<double> log_f(n);
    for (size_t i = 0; i < n; ++i) {
        if (dom.u[i].sign == 0)
            throw std::domain_error("recessive_from_dominant: dominant solution vanishes on grid");
        log_f[i] = -2.0 * dom.u[i].log_abs - dom.s[i];
    }
    LogCumulative cum = log_cumulative_from_deep(dom.s, log_f);
    SampledSolution out;
    out.s = dom.s;
    out.energy = dom.energy;
    out.max_local_error = dom.max_local_error;
    out.tail_resolved = cum.tail_resolved;
    out.u.resize(n);
    out.du.resize(n);
    for (size_t i = 0; i < n; ++i) {
        LogValue big_i = LogValue::from_parts(1, cum.log_integral[i]);
        out.u[i] = log_mul(dom.u[i], big_i);
        LogValue inv = LogValue::from_parts(dom.u[i].sign, -dom.u[i].log_abs);
        out.du[i] = log_add(log_mul(dom.du[i], big_i), inv);
    }
    return out;
}

TailExponent tail_exponent(const SampledSolution& u, int max_levels) {
    TailExponent te;
    size_t n = u.s.size();
    if (n < 48) return te;
    double front = u.s.front(), back = u.s.back();
    double target = std::max(front + 5.0, std::min(50.0, front + 0.25 * (back - front)));
    size_t lo = 0;
    while (lo < n && u.s[lo] < target) ++lo;
    if (n - lo < 32) lo = n - std::min<size_t>(n, 32);
    int levels = 0;
    for (int k = 1; k <= std::min(max_levels, 3); ++k)
        if (u.s[lo] >= iterlog_threshold(k) + 0.5) levels = k;
    if (levels == 0) return te;

    size_t m = n - lo;
    std::vector<std::vector<double>> cols(static_cast<size_t>(levels) + 5,
                                          std::vector<double>(m));
    std::vector<double> y(m);
    for (size_t i = 0; i < m; ++i) {
        double sx = u.s[lo + i];
        if (u.u[lo + i].sign == 0 || !std::isfinite(u.u[lo + i].log_abs)) return te;
        cols[0][i] = 1.0;
        cols[1][i] = -sx;
        LogCoordinate xc(sx);
        for (int k = 1; k <= levels; ++k) cols[1 + k][i] = std::log(iterlog(k, xc));
        // power tails of the asymptotic corrections; keeps them from leaking
        // into the iterated-log coefficients
        cols[static_cast<size_t>(levels) + 2][i] = 1.0 / sx;
        cols[static_cast<size_t>(levels) + 3][i] = 1.0 / (sx * std::log(sx));
        cols[static_cast<size_t>(levels) + 4][i] = 1.0 / (sx * sx);
        y[i] = u.u[lo + i].log_abs;
    }
    LstsqFit fit;
    try {
        fit = lstsq(cols, y);
    } catch (const std::exception&) {
        return te;
    }
    te.sigma = fit.coef[1];
    te.gamma.assign(fit.coef.begin() + 2, fit.coef.begin() + 2 + levels);
    te.rms = fit.rms_residual;
    te.valid = std::isfinite(te.sigma) && std::isfinite(te.rms);
    return te;
}

L2Status l2_status(const TailExponent& te) {
    if (!te.valid || te.rms > 0.01) return L2Status::Borderline;
    constexpr double kSigmaBand = 0.005;
    constexpr double kStructBand = 0.01;
    constexpr double kDecisionBand = 0.05;
    double d = te.sigma + 0.5;
    if (d > kSigmaBand) return L2Status::SquareIntegrable;
    if (d < -kSigmaBand) return L2Status::NotSquareIntegrable;
    // sigma is structurally -1/2: walk the iterated-log ladder
    for (double g : te.gamma) {
        double e = 2.0 * g + 1.0;
        if (e < -kDecisionBand) return L2Status::SquareIntegrable;
        if (e > kDecisionBand) return L2Status::NotSquareIntegrable;
        if (std::abs(e) > kStructBand) return L2Status::Borderline;
    }
    return L2Status::Borderline;
}

namespace {

EndpointType combine(L2Status dom, L2Status rec) {
    if (rec == L2Status::NotSquareIntegrable || dom == L2Status::NotSquareIntegrable)
        return EndpointType::LimitPoint;
    if (dom == L2Status::SquareIntegrable && rec == L2Status::SquareIntegrable)
        return EndpointType::LimitCircle;
    return EndpointType::Borderline;
}

int deep_sign_changes(const SampledSolution& u) {
    size_t n = u.s.size();
    int changes = 0;
    for (size_t i = n / 2; i + 1 < n; ++i)
        if (u.u[i].sign * u.u[i + 1].sign < 0) ++changes;
    return changes;
}

}  // namespace

EndpointClassification classify_endpoint(const PotentialFamily& fam,
                                         const SolveOptions& opt) {
    double s_a = std::max(opt.s_anchor, fam.domain_min_s());
    std::vector<double> grid = make_s_grid(s_a, s_a + opt.s_span, opt.n_nodes);
    EndpointClassification out;
    out.per_energy.reserve(opt.energies.size());
    for (double e : opt.energies) {
        EnergyDetail det;
        det.energy = e;
        SampledSolution dom = integrate_solution(fam, e, grid, 1.0, 0.0, opt.rtol, opt.atol);
        if (deep_sign_changes(dom) >= 2) {
            // oscillatory tail: both solutions are O(t^{1/2}) envelopes, hence L^2
            det.oscillatory = true;
            det.dominant_l2 = det.recessive_l2 = L2Status::SquareIntegrable;
            det.type = EndpointType::LimitCircle;
            out.per_energy.push_back(det);
            continue;
        }
        SampledSolution rec = recessive_from_dominant(dom);
        det.dominant_tail = tail_exponent(dom, opt.tail_levels);
        det.recessive_tail = tail_exponent(rec, opt.tail_levels);
        det.dominant_l2 = l2_status(det.dominant_tail);
        det.recessive_l2 = rec.tail_resolved ? l2_status(det.recessive_tail)
                                             : L2Status::Borderline;
        det.type = combine(det.dominant_l2, det.recessive_l2);
        out.per_energy.push_back(det);
    }
    out.agree = true;
    for (const auto& d : out.per_energy)
        if (d.type != out.per_energy.front().type) out.agree = false;
    out.type = out.agree ? out.per_energy.front().type : EndpointType::Borderline;
    return out;
}

EsaResult esa_verdict(const PotentialFamily& left, const PotentialFamily& right,
                      const SolveOptions& opt) {
    EsaResult r{EsaVerdictType::Borderline, classify_endpoint(left, opt),
                classify_endpoint(right, opt)};
    if (r.left.type == EndpointType::LimitCircle || r.right.type == EndpointType::LimitCircle)
        r.verdict = EsaVerdictType::NotEssentiallySelfAdjoint;
    else if (r.left.type == EndpointType::LimitPoint &&
             r.right.type == EndpointType::LimitPoint)
        r.verdict = EsaVerdictType::EssentiallySelfAdjoint;
    return r;
}

SweepResult threshold_sweep(const std::function<PotentialFamily(double)>& make,
                            double c_lo, double c_hi, double tol,
                            const SolveOptions& opt) {
    if (!(c_hi > c_lo) || !(tol > 0))
        throw std::invalid_argument("threshold_sweep: bad bracket");
    SweepResult res;
    std::map<double, EndpointType> memo;
    auto verdict = [&](double c) {
        auto it = memo.find(c);
        if (it != memo.end()) return it->second;
        EndpointClassification cls = classify_endpoint(make(c), opt);
        memo.emplace(c, cls.type);
        const EnergyDetail& d0 = cls.per_energy.front();
        res.evaluations.push_back(SweepEval{c, cls.type, d0.dominant_tail.sigma,
                                            d0.recessive_tail.sigma, cls.agree});
        return cls.type;
    };

    EndpointType v_lo = verdict(c_lo), v_hi = verdict(c_hi);
    bool increasing;
    if (v_lo == EndpointType::LimitCircle && v_hi == EndpointType::LimitPoint)
        increasing = true;
    else if (v_lo == EndpointType::LimitPoint && v_hi == EndpointType::LimitCircle)
        increasing = false;
    else {
        res.status = SweepResult::Status::NoThreshold;
        res.band_lo = c_lo;
        res.band_hi = c_hi;
        return res;
    }
    res.increasing = increasing;
    double a0 = increasing ? c_lo : c_hi;  // limit circle end
    double b0 = increasing ? c_hi : c_lo;  // limit point end
    auto at = [&](double u) { return a0 + (b0 - a0) * u; };
    double span = std::abs(b0 - a0);

    // edge between limit circle and everything else
    double ua = 0, ub = 1;
    while (span * (ub - ua) > tol) {
        double m = 0.5 * (ua + ub);
        (verdict(at(m)) == EndpointType::LimitCircle ? ua : ub) = m;
    }
    double edge_lc = 0.5 * (ua + ub);
    double deepest_lc = ua;
    // edge between everything else and limit point
    ua = 0, ub = 1;
    while (span * (ub - ua) > tol) {
        double m = 0.5 * (ua + ub);
        (verdict(at(m)) == EndpointType::LimitPoint ? ub : ua) = m;
    }
    double edge_lp = 0.5 * (ua + ub);
    double shallowest_lp = ub;

    res.status = SweepResult::Status::Found;
    res.c_hat = 0.5 * (at(edge_lc) + at(edge_lp));
    res.band_lo = at(deepest_lc);
    res.band_hi = at(shallowest_lp);

    // the verdicts must never revert to limit circle past a limit point
    std::vector<SweepEval> ordered = res.evaluations;
    std::sort(ordered.begin(), ordered.end(),
              [](const SweepEval& a, const SweepEval& b) { return a.param < b.param; });
    if (!increasing) std::reverse(ordered.begin(), ordered.end());
    bool seen_lp = false;
    for (const auto& e : ordered) {
        if (e.type == EndpointType::LimitPoint) seen_lp = true;
        if (seen_lp && e.type == EndpointType::LimitCircle)
            throw std::runtime_error("threshold_sweep: classification is not monotone in the parameter");
    }
    return res;
}

WronskianCertificate wronskian_certificate(const SampledSolution& a,
                                           const SampledSolution& b) {
    if (a.s.size() != b.s.size() || a.s.empty() || a.s.front() != b.s.front())
        throw std::invalid_argument("wronskian_certificate: samples on different grids");
    constexpr double kResolvableLog = -23.025850929940457;  // ln 1e-10
    WronskianCertificate cert;
    LogValue w_ref{};
    bool have_ref = false;
    size_t last_ok = 0;
    for (size_t i = 0; i < a.s.size(); ++i) {
        LogValue t1 = log_mul(a.u[i], b.du[i]);
        LogValue t2 = log_mul(a.du[i], b.u[i]);
        LogValue w = log_add(t1, LogValue{-t2.sign, t2.log_abs});
        double denom = std::max(t1.log_abs, t2.log_abs);
        bool ok = w.sign != 0 && std::isfinite(denom) && (w.log_abs - denom) > kResolvableLog;
        if (!ok) break;
        if (!have_ref) {
            w_ref = w;
            cert.reference = w.to_double();
            have_ref = true;
        } else {
            double ratio = (w.sign * w_ref.sign) * std::exp(w.log_abs - w_ref.log_abs);
            cert.max_drift_rel = std::max(cert.max_drift_rel, std::abs(ratio - 1.0));
        }
        last_ok = i;
    }
    if (!have_ref)
        throw std::domain_error("wronskian_certificate: pair is unresolvable at the anchor");
    cert.resolvable_s_max = a.s[last_ok];
    cert.fully_resolvable = last_ok + 1 == a.s.size();
    return cert;
}

const char* to_string(EndpointType t) {
    switch (t) {
        case EndpointType::LimitPoint: return "limit_point";
        case EndpointType::LimitCircle: return "limit_circle";
        default: return "borderline";
    }
}

const char* to_string(L2Status s) {
    switch (s) {
        case L2Status::SquareIntegrable: return "L2";
        case L2Status::NotSquareIntegrable: return "not_L2";
        default: return "borderline";
    }
}

const char* to_string(EsaVerdictType v) {
    switch (v) {
        case EsaVerdictType::EssentiallySelfAdjoint: return "essentially_self_adjoint";
        case EsaVerdictType::NotEssentiallySelfAdjoint: return "not_essentially_self_adjoint";
        default: return "borderline";
    }
}

}  // namespace confining
