#include "confining/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace confining {

using nlohmann::json;

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json to_json(const TailExponent& t) {
    return json{{"sigma", t.sigma},
                {"gamma", t.gamma},
                {"rms", t.rms},
                {"valid", t.valid}};
}

json to_json(const EnergyDetail& d) {
    return json{{"energy", d.energy},
                {"verdict", to_string(d.type)},
                {"oscillatory", d.oscillatory},
                {"dominant", {{"tail", to_json(d.dominant_tail)}, {"l2", to_string(d.dominant_l2)}}},
                {"recessive",
                 {{"tail", to_json(d.recessive_tail)}, {"l2", to_string(d.recessive_l2)}}}};
}

json to_json(const EndpointClassification& c) {
    const EnergyDetail& d0 = c.per_energy.front();
    json per = json::array();
    json energies = json::array();
    for (const auto& d : c.per_energy) {
        per.push_back(to_json(d));
        energies.push_back(d.energy);
    }
    return json{{"endpoint", "t->0"},
                {"verdict", to_string(c.type)},
                {"sigma",
                 {{"dominant", d0.dominant_tail.sigma},
                  {"recessive", d0.recessive_tail.sigma},
                  {"gamma_dominant", d0.dominant_tail.gamma},
                  {"gamma_recessive", d0.recessive_tail.gamma}}},
                {"confidence", c.agree ? "high" : "low"},
                {"energies", energies},
                {"per_energy", per}};
}

json to_json(const EsaResult& r) {
    return json{{"verdict", to_string(r.verdict)},
                {"left", to_json(r.left)},
                {"right", to_json(r.right)}};
}

json to_json(const SweepResult& r) {
    json evals = json::array();
    for (const auto& e : r.evaluations)
        evals.push_back(json{{"param", e.param},
                             {"verdict", to_string(e.type)},
                             {"sigma_dominant", e.sigma_dominant},
                             {"sigma_recessive", e.sigma_recessive},
                             {"confidence", e.agree ? "high" : "low"}});
    json out{{"status", r.status == SweepResult::Status::Found ? "found" : "no_threshold"},
             {"evaluations", evals}};
    if (r.status == SweepResult::Status::Found) {
        out["c_hat"] = r.c_hat;
        out["band"] = {r.band_lo, r.band_hi};
        out["increasing"] = r.increasing;
    }
    return out;
}

json to_json(const Sigma1Check& c) {
    return json{{"ok", c.ok},
                {"min_slope", c.min_slope},
                {"max_slope", c.max_slope},
                {"max_plateau_slope", c.max_plateau_slope}};
}

json to_json(const DivergenceReport& r) {
    return json{{"verdict", to_string(r.verdict)},
                {"decided_level", r.decided_level},
                {"exhausted", r.exhausted},
                {"beta", r.beta},
                {"residual", r.rms}};
}

json to_json(const SigmaVerdict& v) {
    json runs = json::array();
    for (int i = 0; i < 2; ++i) {
        json run = to_json(v.per_rho[i]);
        run["s_rho0"] = v.s_rho0[i];
        run["rho0"] = std::exp(-v.s_rho0[i]);
        run["n_terms"] = v.n_terms;
        runs.push_back(run);
    }
    return json{{"verdict", to_string(v.verdict)}, {"agree", v.agree}, {"runs", runs}};
}

json to_json(const BrusentsevReport& r) {
    return json{{"gamma", r.gamma}, {"ln_b_deep", r.ln_b_deep}, {"satisfied", r.satisfied}};
}

json to_json(const WronskianCertificate& w) {
    return json{{"reference", w.reference},
                {"max_drift_rel", w.max_drift_rel},
                {"resolvable_s_max", w.resolvable_s_max},
                {"fully_resolvable", w.fully_resolvable}};
}

json to_json(const QuotientReport& q) {
    return json{{"grad_term", q.grad_term},
                {"l2_term", q.l2_term},
                {"weighted_term", q.weighted_term},
                {"quotient", q.quotient},
                {"s_max_used", q.s_max_used},
                {"resolved", q.resolved}};
}

json to_json(const SharpnessProbe& p) {
    return json{{"eps", p.eps}, {"quotient", p.quotient}, {"final_gap", p.final_gap}};
}

json to_json(const GroundState& g) {
    return json{{"energy", g.energy},
                {"index", g.index},
                {"nodes", g.nodes},
                {"boundary_residual", g.boundary_residual},
                {"samples", g.x.size()},
                {"x_first", g.x.front()},
                {"x_last", g.x.back()}};
}

json to_json(const DecayFit& f) {
    return json{{"exponent", f.exponent},
                {"rms", f.rms},
                {"window", {f.window_lo, f.window_hi}}};
}

json to_json(const FormIdentityReport& r) {
    return json{{"lhs", r.lhs}, {"rhs", r.rhs}, {"rel_residual", r.rel_residual}};
}

json to_json(const AgmonReport& r) {
    json levels = json::array();
    for (size_t i = 0; i < r.rho.size(); ++i)
        levels.push_back(json{{"n", i},
                              {"rho", r.rho[i]},
                              {"lhs", r.lhs[i]},
                              {"rhs", r.rhs[i]},
                              {"ratio", r.ratio[i]}});
    return json{{"energy", r.energy},
                {"sup_ratio", r.sup_ratio},
                {"stable", r.stable},
                {"levels", levels}};
}

json to_json(const Domain& d) {
    switch (d.shape()) {
        case Domain::Shape::Interval:
            return json{{"shape", "interval"}, {"params", json::object()}};
        case Domain::Shape::Disk:
            return json{{"shape", "disk"}, {"params", {{"R", d.p1()}}}};
        case Domain::Shape::Annulus:
            return json{{"shape", "annulus"}, {"params", {{"r", d.p1()}, {"R", d.p2()}}}};
        case Domain::Shape::Ellipse:
            return json{{"shape", "ellipse"}, {"params", {{"a", d.p1()}, {"b", d.p2()}}}};
    }
    throw std::logic_error("unreachable");
}

json to_json(const GradNormReport& r) {
    return json{{"requested", r.requested},
                {"tested", r.tested},
                {"max_dev", r.max_dev},
                {"max_norm", r.max_norm},
                {"worst", {r.worst_x, r.worst_y}},
                {"pass", r.pass}};
}

json to_json(const RadialVerdict& v) {
    return json{{"dim", v.dim},
                {"verdict", to_string(v.verdict)},
                {"boundary", to_json(v.boundary)}};
}

void CsvTable::row(std::vector<std::string> cells) {
    if (cells.size() != header.size())
        throw std::logic_error("CsvTable: row width does not match the header");
    rows.push_back(std::move(cells));
}

std::string CsvTable::str() const {
    std::string out;
    auto line = [&out](const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out;
}

void write_text(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << text;
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace confining
