#include "confining/domains.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace confining {

Domain Domain::interval() { return Domain(Shape::Interval, 0.0, 1.0); }

Domain Domain::disk(double radius) {
    if (!(radius > 0)) throw std::invalid_argument("disk: radius must be positive");
    return Domain(Shape::Disk, radius, 0.0);
}

Domain Domain::annulus(double inner, double outer) {
    if (!(inner > 0) || !(inner < outer))
        throw std::invalid_argument("annulus: need 0 < inner < outer");
    return Domain(Shape::Annulus, inner, outer);
}

Domain Domain::ellipse(double a, double b) {
    if (!(b > 0) || !(b <= a))
        throw std::invalid_argument("ellipse: need 0 < b <= a");
    return Domain(Shape::Ellipse, a, b);
}

double Domain::reach() const {
    switch (shape_) {
        case Shape::Interval: return 0.5;
        case Shape::Disk: return p1_;
        case Shape::Annulus: return 0.5 * (p2_ - p1_);
        case Shape::Ellipse: return p2_ * p2_ / p1_;
    }
    throw std::logic_error("unreachable");
}

bool Domain::contains(double x, double y) const {
    switch (shape_) {
        case Shape::Interval: return x > 0 && x < 1 && y == 0;
        case Shape::Disk: return x * x + y * y < p1_ * p1_;
        case Shape::Annulus: {
            double r2 = x * x + y * y;
            return r2 > p1_ * p1_ && r2 < p2_ * p2_;
        }
        case Shape::Ellipse: {
            double u = x / p1_, v = y / p2_;
            return u * u + v * v < 1.0;
        }
    }
    throw std::logic_error("unreachable");
}

std::string Domain::describe() const {
    switch (shape_) {
        case Shape::Interval: return "interval(0,1)";
        case Shape::Disk: return "disk(R=" + std::to_string(p1_) + ")";
        case Shape::Annulus:
            return "annulus(r=" + std::to_string(p1_) + ",R=" + std::to_string(p2_) + ")";
        case Shape::Ellipse:
            return "ellipse(a=" + std::to_string(p1_) + ",b=" + std::to_string(p2_) + ")";
    }
    throw std::logic_error("unreachable");
}

namespace {

constexpr double kMedialSlack = 1e-12;

DistGrad ellipse_dist(double a, double b, double px, double py, double reach) {
    double sx = px < 0 ? -1.0 : 1.0;
    double sy = py < 0 ? -1.0 : 1.0;
    double qx = std::abs(px), qy = std::abs(py);
    double cth, sth;
    if (qy == 0 && a > b && a * qx < a * a - b * b) {
        // inside the evolute on the major axis: interior foot point
        cth = a * qx / (a * a - b * b);
        sth = std::sqrt(1.0 - cth * cth);
    } else if (qy == 0) {
        cth = 1.0;
        sth = 0.0;
    } else if (qx == 0) {
        cth = 0.0;
        sth = 1.0;
    } else {
        // stationarity of the squared distance in the boundary parameter
        auto g = [&](double th) {
            double c = std::cos(th), s = std::sin(th);
            return (a * a - b * b) * c * s - a * qx * s + b * qy * c;
        };
        double lo = 0.0, hi = M_PI / 2;  // g(lo) > 0 >= g(hi)
        while (hi - lo > 1e-12) {
            double mid = 0.5 * (lo + hi);
            (g(mid) > 0 ? lo : hi) = mid;
        }
        cth = std::cos(0.5 * (lo + hi));
        sth = std::sin(0.5 * (lo + hi));
    }
    double dx = qx - a * cth, dy = qy - b * sth;
    double d = std::hypot(dx, dy);
    DistGrad out;
    out.d = d;
    out.gx = sx * dx / d;
    out.gy = sy * dy / d;
    out.on_medial_axis = d >= reach - kMedialSlack;
    return out;
}

}  // namespace

DistGrad Domain::dist_and_grad(double x, double y) const {
    if (!contains(x, y))
        throw std::domain_error("dist_and_grad: point outside " + describe());
    switch (shape_) {
        case Shape::Interval: {
            double d = std::min(x, 1.0 - x);
            return DistGrad{d, x <= 0.5 ? 1.0 : -1.0, 0.0, d >= 0.5 - kMedialSlack};
        }
        case Shape::Disk: {
            double r = std::hypot(x, y);
            if (r == 0) return DistGrad{p1_, 0.0, 0.0, true};
            return DistGrad{p1_ - r, -x / r, -y / r, p1_ - r >= reach() - kMedialSlack};
        }
        case Shape::Annulus: {
            double r = std::hypot(x, y);
            double din = r - p1_, dout = p2_ - r;
            bool medial = std::min(din, dout) >= reach() - kMedialSlack;
            if (din <= dout) return DistGrad{din, x / r, y / r, medial};
            return DistGrad{dout, -x / r, -y / r, medial};
        }
        case Shape::Ellipse:
            return ellipse_dist(p1_, p2_, x, y, reach());
    }
    throw std::logic_error("unreachable");
}

GradNormReport grad_norm_check(const Domain& dom, int n_samples, std::uint64_t seed) {
    if (n_samples < 100)
        throw std::invalid_argument("grad_norm_check: need at least 100 samples");
    double bx, by;
    switch (dom.shape()) {
        case Domain::Shape::Interval: bx = 1.0; by = 0.0; break;
        case Domain::Shape::Disk: bx = by = dom.p1(); break;
        case Domain::Shape::Annulus: bx = by = dom.p2(); break;
        case Domain::Shape::Ellipse: bx = dom.p1(); by = dom.p2(); break;
        default: throw std::logic_error("unreachable");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(-bx, bx), uy(-by, by);

    const double h = 1e-6;
    GradNormReport rep{n_samples, 0, 0.0, 0.0, 0.0, 0.0, true};
    long guard = 0;
    while (rep.tested < n_samples) {
        if (++guard > 2000L * n_samples)
            throw std::runtime_error("grad_norm_check: sampler starved; domain too thin");
        double x = ux(rng);
        double y = dom.shape() == Domain::Shape::Interval ? 0.0 : uy(rng);
        if (dom.shape() == Domain::Shape::Interval) x = 0.5 * (x + 1.0);
        if (!dom.contains(x, y)) continue;
        DistGrad dg = dom.dist_and_grad(x, y);
        if (dg.d <= 2 * h) continue;  // too close to the boundary for central differences
        double fx = (dom.dist_and_grad(x + h, y).d - dom.dist_and_grad(x - h, y).d) / (2 * h);
        double fy = dom.shape() == Domain::Shape::Interval
                        ? 0.0
                        : (dom.dist_and_grad(x, y + h).d - dom.dist_and_grad(x, y - h).d) /
                              (2 * h);
        double norm = std::hypot(fx, fy);
        rep.max_norm = std::max(rep.max_norm, norm);
        if (dg.d >= dom.reach() - 2 * h) continue;  // medial neighbourhood excluded
        ++rep.tested;
        double dev = std::abs(norm - 1.0);
        if (dev > rep.max_dev) {
            rep.max_dev = dev;
            rep.worst_x = x;
            rep.worst_y = y;
        }
    }
    rep.pass = rep.max_dev <= 1e-6 && rep.max_norm <= 1.0 + 1e-5;
    return rep;
}

PotentialFamily radial_reduce(const PotentialFamily& boundary, int dim, double radius) {
    if (dim < 1) throw std::invalid_argument("radial_reduce: dimension must be >= 1");
    if (!(radius > 0)) throw std::invalid_argument("radial_reduce: radius must be positive");
    double k = 0.25 * (dim - 1) * (dim - 3);
    double min_s = std::max(boundary.domain_min_s(), std::log(1.0 / radius) + std::log(2.0));
    std::string name = boundary.profile_name() + "+centrifugal(n=" + std::to_string(dim) + ")";
    auto w = [boundary, k, radius](double s) {
        double t = std::exp(-s);
        double r = radius - t;
        return boundary.w(s) + k * t * t / (r * r);
    };
    return PotentialFamily::custom(name, w, min_s);
}

RadialVerdict radial_esa(const PotentialFamily& boundary, int dim, double radius,
                         const SolveOptions& opt) {
    RadialVerdict out;
    out.dim = dim;
    out.boundary = classify_endpoint(radial_reduce(boundary, dim, radius), opt);
    switch (out.boundary.type) {
        case EndpointType::LimitPoint:
            out.verdict = EsaVerdictType::EssentiallySelfAdjoint;
            break;
        case EndpointType::LimitCircle:
            out.verdict = EsaVerdictType::NotEssentiallySelfAdjoint;
            break;
        default: out.verdict = EsaVerdictType::Borderline;
    }
    return out;
}

}  // namespace confining
