#include "confining/agmon.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace confining {

IntervalPotential::IntervalPotential(PotentialFamily l, PotentialFamily r)
    : left(std::move(l)), right(std::move(r)) {
    if (left.domain_min_s() > 1e-12 || right.domain_min_s() > 1e-12)
        throw std::invalid_argument(
            "IntervalPotential: both families must be defined on all of (0,1); "
            "families admissible only near their own endpoint cannot be combined");
}

double IntervalPotential::v(double x) const {
    if (!(x > 0) || !(x < 1))
        throw std::domain_error("IntervalPotential: x outside (0,1)");
    double sx = std::log(1.0 / x);
    double sy = std::log(1.0 / (1.0 - x));
    return left.w(sx) / (x * x) + right.w(sy) / ((1.0 - x) * (1.0 - x));
}

namespace {

struct Shot {
    LinearOdeResult ode;
    int nodes;
    int end_sign;
};

Shot shoot(const IntervalPotential& v, double energy, const std::vector<double>& grid,
           const GroundStateOptions& opt) {
    auto a = [](double) { return 0.0; };
    // clamp so endpoint stage evaluations stay inside (0,1); with a zero
    // truncation the potential must be bounded there anyway
    auto b = [&v, energy](double x) {
        return v.v(std::min(std::max(x, 1e-12), 1.0 - 1e-12)) - energy;
    };
    Rk45Options rk;
    rk.rtol = opt.rtol;
    rk.atol = opt.atol;
    LinearOdeResult r = integrate_linear2(a, b, grid, {0.0, 1.0}, rk);
    double end = r.y.back()[0];
    return Shot{std::move(r), 0, end > 0 ? 1 : (end < 0 ? -1 : 0)};
}

}  // namespace

GroundState ground_state(const IntervalPotential& v, int index,
                         const GroundStateOptions& opt) {
    if (index < 0) throw std::invalid_argument("ground_state: index must be >= 0");
    double cl = opt.cutoff;
    double cr = opt.cutoff_right < 0 ? cl : opt.cutoff_right;
    if (cl < 0 || cl > 0.05 || cr > 0.05 || cl >= 1.0 - cr)
        throw std::invalid_argument("ground_state: truncations must lie in [0, 0.05]");
    if (opt.n_nodes < 101) throw std::invalid_argument("ground_state: too few nodes");
    std::vector<double> grid(opt.n_nodes);
    for (int i = 0; i < opt.n_nodes; ++i)
        grid[i] = cl + (1.0 - cl - cr) * i / (opt.n_nodes - 1);

    auto count = [&](double e) { return shoot(v, e, grid, opt).ode.sign_changes; };

    double lo = opt.e_lo;
    if (count(lo) > index)
        throw std::invalid_argument("ground_state: e_lo already above the requested level");
    double hi = std::max(lo + 1.0, 1.0);
    while (count(hi) <= index) {
        hi = lo + 2.0 * (hi - lo);
        if (hi > opt.e_hi)
            throw std::runtime_error("ground_state: no eigenvalue found below e_hi");
    }
    // narrow on the node count first
    while (hi - lo > 1e-3 * std::max(1.0, std::abs(hi))) {
        double mid = 0.5 * (lo + hi);
        (count(mid) > index ? hi : lo) = mid;
    }
    // then on the sign of the far-end value, which flips at the eigenvalue
    int sign_lo = shoot(v, lo, grid, opt).end_sign;
    while (hi - lo > 1e-10 * std::max(1.0, std::abs(hi))) {
        double mid = 0.5 * (lo + hi);
        (shoot(v, mid, grid, opt).end_sign == sign_lo ? lo : hi) = mid;
    }

    double e_star = 0.5 * (lo + hi);
    Shot fin = shoot(v, e_star, grid, opt);
    GroundState gs;
    gs.energy = e_star;
    gs.index = index;
    gs.nodes = count(lo);  // interior nodes: just below the eigenvalue the far end has not flipped
    gs.x = grid;
    gs.u.resize(grid.size());
    gs.du.resize(grid.size());
    double peak = -std::numeric_limits<double>::infinity();
    std::vector<double> lg(grid.size(), -std::numeric_limits<double>::infinity());
    for (size_t i = 0; i < grid.size(); ++i) {
        double y = fin.ode.y[i][0];
        if (y != 0) {
            lg[i] = fin.ode.log_scale[i] + std::log(std::abs(y));
            peak = std::max(peak, lg[i]);
        }
    }
    for (size_t i = 0; i < grid.size(); ++i) {
        double y = fin.ode.y[i][0], d = fin.ode.y[i][1];
        gs.u[i] = y == 0 ? 0.0 : std::copysign(std::exp(lg[i] - peak), y);
        gs.du[i] = d == 0 ? 0.0
                          : std::copysign(
                                std::exp(fin.ode.log_scale[i] + std::log(std::abs(d)) - peak), d);
    }
    gs.boundary_residual = std::abs(gs.u.back());
    return gs;
}

DecayFit decay_fit(const GroundState& gs, double rho, bool right_end) {
    if (!(rho > 0) || 8.0 * rho >= std::min(0.1, 80.0 * rho))
        throw std::invalid_argument("decay_fit: empty window");
    double lo = 8.0 * rho, hi = std::min(0.1, 80.0 * rho);
    std::vector<std::vector<double>> cols(2);
    std::vector<double> y;
    for (size_t i = 0; i < gs.x.size(); ++i) {
        double t = right_end ? 1.0 - gs.x[i] : gs.x[i];
        if (t < lo || t > hi || gs.u[i] == 0) continue;
        cols[0].push_back(1.0);
        cols[1].push_back(std::log(t));
        y.push_back(std::log(std::abs(gs.u[i])));
    }
    if (y.size() < 16)
        throw std::invalid_argument("decay_fit: window contains too few samples");
    LstsqFit fit = lstsq(cols, y);
    return DecayFit{fit.coef[1], fit.rms_residual, lo, hi};
}

double bump_value(double x, double a, double b) {
    if (!(a < b)) throw std::invalid_argument("bump: need a < b");
    double w = 0.25 * (b - a);
    if (x <= a || x >= b) return 0.0;
    if (x >= a + w && x <= b - w) return 1.0;
    double tau = x < a + w ? (x - a) / w : (b - x) / w;
    return tau * tau * tau * (10.0 + tau * (-15.0 + 6.0 * tau));
}

double bump_derivative(double x, double a, double b) {
    if (!(a < b)) throw std::invalid_argument("bump: need a < b");
    double w = 0.25 * (b - a);
    if (x <= a || x >= b || (x >= a + w && x <= b - w)) return 0.0;
    double tau = x < a + w ? (x - a) / w : (b - x) / w;
    double slope = 30.0 * tau * tau * (1.0 - tau) * (1.0 - tau) / w;
    return x < a + w ? slope : -slope;
}

FormIdentityReport form_identity_check(const IntervalPotential& v, double energy,
                                       double bump_lo, double bump_hi, int n_panels) {
    if (!(bump_lo > 0) || !(bump_hi < 1) || !(bump_lo < bump_hi))
        throw std::invalid_argument("form_identity_check: bump must sit inside (0,1)");
    if (n_panels < 4) throw std::invalid_argument("form_identity_check: need >= 4 panels");
    double w = 0.25 * (bump_hi - bump_lo);
    double breaks[4] = {bump_lo, bump_lo + w, bump_hi - w, bump_hi};

    // piecewise-uniform Simpson nodes across the three smooth pieces
    std::vector<double> nodes;
    double cutoff = std::min(1e-6, 0.5 * bump_lo);
    nodes.push_back(cutoff);
    for (int p = 0; p < 3; ++p) {
        int m = 2 * n_panels;
        for (int i = p == 0 ? 0 : 1; i <= m; ++i)
            nodes.push_back(breaks[p] + (breaks[p + 1] - breaks[p]) * i / m);
    }
    auto a = [](double) { return 0.0; };
    auto b = [&v, energy](double x) { return v.v(x) - energy; };
    LinearOdeResult r = integrate_linear2(a, b, nodes, {0.0, 1.0}, Rk45Options{});

    // normalize inside the bump so the quadratic forms stay O(1)
    double lref = -std::numeric_limits<double>::infinity();
    for (size_t i = 1; i < nodes.size(); ++i)
        if (r.y[i][0] != 0)
            lref = std::max(lref, r.log_scale[i] + std::log(std::abs(r.y[i][0])));

    double lhs = 0, rhs = 0;
    size_t base = 1;  // node index of breaks[0]
    for (int p = 0; p < 3; ++p) {
        int m = 2 * n_panels;
        double h = (breaks[p + 1] - breaks[p]) / m;
        for (int i = 0; i <= m; ++i) {
            size_t idx = base + i;
            double x = nodes[idx];
            double sc = std::exp(r.log_scale[idx] - lref);
            double u = r.y[idx][0] * sc, du = r.y[idx][1] * sc;
            double f = bump_value(x, bump_lo, bump_hi);
            double df = bump_derivative(x, bump_lo, bump_hi);
            double wt = (i == 0 || i == m) ? h / 3.0 : (i % 2 ? 4.0 * h / 3.0 : 2.0 * h / 3.0);
            double fu = f * u, dfu = df * u + f * du;
            lhs += wt * (dfu * dfu + (v.v(x) - energy) * fu * fu);
            rhs += wt * (df * df * u * u);
        }
        base += m;
    }
    double scale = std::max(std::abs(lhs), std::abs(rhs));
    return FormIdentityReport{lhs, rhs, std::abs(lhs - rhs) / std::max(scale, 1e-300)};
}

FormIdentityReport form_identity_check(const std::function<double(double)>& u,
                                       const std::function<double(double)>& du,
                                       const std::function<double(double)>& v, double energy,
                                       double bump_lo, double bump_hi, int n_panels) {
    if (!(bump_lo < bump_hi))
        throw std::invalid_argument("form_identity_check: need bump_lo < bump_hi");
    if (n_panels < 4) throw std::invalid_argument("form_identity_check: need >= 4 panels");
    double w = 0.25 * (bump_hi - bump_lo);
    double breaks[4] = {bump_lo, bump_lo + w, bump_hi - w, bump_hi};

    int m = 2 * n_panels;
    double ref = 0;
    for (int p = 0; p < 3; ++p)
        for (int i = 0; i <= m; ++i)
            ref = std::max(ref, std::abs(u(breaks[p] + (breaks[p + 1] - breaks[p]) * i / m)));
    if (!(ref > 0)) throw std::invalid_argument("form_identity_check: solution vanishes");

    double lhs = 0, rhs = 0;
    for (int p = 0; p < 3; ++p) {
        double h = (breaks[p + 1] - breaks[p]) / m;
        for (int i = 0; i <= m; ++i) {
            double x = breaks[p] + (breaks[p + 1] - breaks[p]) * i / m;
            double uv = u(x) / ref, dv = du(x) / ref;
            double f = bump_value(x, bump_lo, bump_hi);
            double df = bump_derivative(x, bump_lo, bump_hi);
            double wt = (i == 0 || i == m) ? h / 3.0 : (i % 2 ? 4.0 * h / 3.0 : 2.0 * h / 3.0);
            double fu = f * uv, dfu = df * uv + f * dv;
            lhs += wt * (dfu * dfu + (v(x) - energy) * fu * fu);
            rhs += wt * (df * df * uv * uv);
        }
    }
    double scale = std::max(std::abs(lhs), std::abs(rhs));
    return FormIdentityReport{lhs, rhs, std::abs(lhs - rhs) / std::max(scale, 1e-300)};
}

AgmonReport agmon_ratio(const IntervalPotential& v, const GroundState& gs,
                        const GFunction& g, double rho0, int n_max, int n_grid) {
    if (!(rho0 > 0) || 2.0 * rho0 >= 0.5)
        throw std::invalid_argument("agmon_ratio: need 2 rho0 < 1/2");
    if (g.d0_materializable() && rho0 > 0.5 * g.d0())
        throw std::invalid_argument("agmon_ratio: rho0 must not exceed half the weight cutoff");
    if (n_max < 0 || n_max > 40)
        throw std::invalid_argument("agmon_ratio: n_max out of range");
    double rho_min = rho0 * std::pow(0.5, n_max);
    double cutoff = rho_min / 16.0;
    int need = static_cast<int>(std::ceil(16.0 / rho_min));
    int n = std::max(n_grid, need);
    if (n % 2 == 0) ++n;

    struct Level {
        double lhs, rhs;
    };
    auto levels_on = [&](int nn) {
        std::vector<double> grid(nn);
        for (int i = 0; i < nn; ++i)
            grid[i] = cutoff + (1.0 - 2.0 * cutoff) * i / (nn - 1);
        auto a = [](double) { return 0.0; };
        auto b = [&](double x) { return v.v(x) - gs.energy; };
        LinearOdeResult r = integrate_linear2(a, b, grid, {0.0, 1.0}, Rk45Options{});
        double lref = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < nn; ++i)
            if (r.y[i][0] != 0)
                lref = std::max(lref, r.log_scale[i] + std::log(std::abs(r.y[i][0])));
        // weighted mass e^{2G(d)} u^2 and |g'| at every node
        std::vector<double> mass(nn), gp_abs(nn);
        for (int i = 0; i < nn; ++i) {
            double x = grid[i];
            double d = std::min(x, 1.0 - x);
            double sd = std::log(1.0 / d);
            double gv = g.value(sd);
            gp_abs[i] = std::abs(g.slope_t(sd) / d);
            double u = r.y[i][0] * std::exp(r.log_scale[i] - lref + gv);
            mass[i] = u * u;
        }
        double h = grid[1] - grid[0];
        std::vector<Level> out;
        for (int lev = 0; lev <= n_max; ++lev) {
            double rho = rho0 * std::pow(0.5, lev);
            double norm = std::exp(-2.0 * g.value(std::log(1.0 / rho)));
            double lhs = 0, rhs = 0;
            for (int i = 0; i < nn; ++i) {
                double d = std::min(grid[i], 1.0 - grid[i]);
                double wt = (i == 0 || i == nn - 1) ? 0.5 * h : h;
                if (d > 2.0 * rho) lhs += wt * mass[i];
                if (d > rho && d < 2.0 * rho)
                    rhs += wt * (1.0 / rho + gp_abs[i]) * mass[i];
            }
            rhs /= rho;
            if (!(rhs > 0))
                throw std::domain_error("agmon_ratio: annulus carries no mass at this level");
            out.push_back(Level{lhs * norm, rhs * norm});
        }
        return out;
    };

    AgmonReport rep;
    rep.energy = gs.energy;
    std::vector<Level> coarse = levels_on(n);
    std::vector<Level> fine = levels_on(2 * (n - 1) + 1);
    double sup_c = 0;
    rep.sup_ratio = 0;
    for (int lev = 0; lev <= n_max; ++lev) {
        rep.rho.push_back(rho0 * std::pow(0.5, lev));
        rep.lhs.push_back(fine[lev].lhs);
        rep.rhs.push_back(fine[lev].rhs);
        rep.ratio.push_back(fine[lev].lhs / fine[lev].rhs);
        rep.sup_ratio = std::max(rep.sup_ratio, rep.ratio.back());
        sup_c = std::max(sup_c, coarse[lev].lhs / coarse[lev].rhs);
    }
    rep.stable = std::abs(rep.sup_ratio - sup_c) <=
                 0.2 * std::max(std::abs(rep.sup_ratio), 1e-12);
    return rep;
}

}  // namespace confining
