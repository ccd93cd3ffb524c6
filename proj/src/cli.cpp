#include "confining/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <set>

#include <CLI11.hpp>

#include "confining/serialize.hpp"

namespace confining {

namespace {

using nlohmann::json;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- config access with JSON-pointer diagnostics ----------------------------

const json* find(const json& root, const std::string& ptr) {
    json::json_pointer p(ptr);
    if (!root.contains(p)) return nullptr;
    return &root.at(p);
}

const json& need(const json& root, const std::string& ptr) {
    const json* j = find(root, ptr);
    if (!j) throw ConfigError(ptr + ": missing required field");
    return *j;
}

double num(const json& root, const std::string& ptr) {
    const json& j = need(root, ptr);
    if (!j.is_number()) throw ConfigError(ptr + ": expected a number");
    return j.get<double>();
}

int integer(const json& root, const std::string& ptr) {
    const json& j = need(root, ptr);
    if (!j.is_number_integer()) throw ConfigError(ptr + ": expected an integer");
    return j.get<int>();
}

bool boolean(const json& root, const std::string& ptr) {
    const json& j = need(root, ptr);
    if (!j.is_boolean()) throw ConfigError(ptr + ": expected a boolean");
    return j.get<bool>();
}

std::string text(const json& root, const std::string& ptr) {
    const json& j = need(root, ptr);
    if (!j.is_string()) throw ConfigError(ptr + ": expected a string");
    return j.get<std::string>();
}

const json& array(const json& root, const std::string& ptr) {
    const json& j = need(root, ptr);
    if (!j.is_array()) throw ConfigError(ptr + ": expected an array");
    return j;
}

// deep merge like RFC 7386, except that kind/shape-discriminated specs replace
// the default wholesale so stale parameters cannot leak across kinds
void merge_cfg(json& base, const json& patch) {
    if (!patch.is_object() || !base.is_object() || patch.contains("kind") ||
        patch.contains("shape")) {
        base = patch;
        return;
    }
    for (const auto& [k, v] : patch.items()) {
        if (v.is_null())
            base.erase(k);
        else
            merge_cfg(base[k], v);
    }
}

void allow_keys(const json& root, const std::string& ptr,
                const std::set<std::string>& allowed) {
    const json* j = ptr.empty() ? &root : find(root, ptr);
    if (!j || !j->is_object()) return;
    for (const auto& [k, v] : j->items())
        if (!allowed.count(k))
            throw ConfigError(ptr + "/" + k + ": unknown field");
}

// ---- config parsers ----------------------------------------------------------

IntegrableProfile parse_profile(const json& root, const std::string& ptr) {
    std::string name = text(root, ptr);
    if (name == "zero") return IntegrableProfile::zero();
    if (name == "one") return IntegrableProfile::one();
    throw ConfigError(ptr + ": unknown profile '" + name + "' (zero|one)");
}

PotentialFamily parse_family(const json& root, const std::string& ptr) {
    std::string kind = text(root, ptr + "/kind");
    if (kind == "power_critical") {
        allow_keys(root, ptr, {"kind", "c"});
        return PotentialFamily::power_critical(num(root, ptr + "/c"));
    }
    if (kind == "log_hierarchy") {
        allow_keys(root, ptr, {"kind", "p", "leading", "last_constant"});
        return PotentialFamily::log_hierarchy(integer(root, ptr + "/p"),
                                              num(root, ptr + "/leading"),
                                              num(root, ptr + "/last_constant"));
    }
    if (kind == "counterexample") {
        allow_keys(root, ptr, {"kind", "p", "alpha"});
        return PotentialFamily::counterexample(integer(root, ptr + "/p"),
                                               num(root, ptr + "/alpha"));
    }
    if (kind == "bounded_perturbation") {
        allow_keys(root, ptr, {"kind", "base", "profile"});
        return PotentialFamily::bounded_perturbation(parse_family(root, ptr + "/base"),
                                                     parse_profile(root, ptr + "/profile"));
    }
    throw ConfigError(ptr + "/kind: unknown family '" + kind +
                      "' (power_critical|log_hierarchy|counterexample|bounded_perturbation)");
}

GFunction parse_g(const json& root, const std::string& ptr) {
    std::string kind = text(root, ptr + "/kind");
    if (kind == "log") {
        allow_keys(root, ptr, {"kind", "d0"});
        return g_log(num(root, ptr + "/d0"));
    }
    if (kind == "log_minus_ct") {
        allow_keys(root, ptr, {"kind", "c", "d0"});
        return g_log_minus_ct(num(root, ptr + "/c"), num(root, ptr + "/d0"));
    }
    if (kind == "log_plus_klog1") {
        allow_keys(root, ptr, {"kind", "k", "d0"});
        return g_log_plus_klog1(num(root, ptr + "/k"), num(root, ptr + "/d0"));
    }
    if (kind == "hierarchy") {
        allow_keys(root, ptr, {"kind", "p", "profile", "d_omega"});
        return g_hierarchy_build(integer(root, ptr + "/p"), parse_profile(root, ptr + "/profile"),
                                 num(root, ptr + "/d_omega"));
    }
    throw ConfigError(ptr + "/kind: unknown weight '" + kind +
                      "' (log|log_minus_ct|log_plus_klog1|hierarchy)");
}

SolveOptions parse_solve(const json& root, const std::string& ptr) {
    allow_keys(root, ptr,
               {"s_anchor", "s_span", "n_nodes", "rtol", "atol", "energies", "tail_levels"});
    SolveOptions opt;
    opt.s_anchor = num(root, ptr + "/s_anchor");
    opt.s_span = num(root, ptr + "/s_span");
    opt.n_nodes = integer(root, ptr + "/n_nodes");
    opt.rtol = num(root, ptr + "/rtol");
    opt.atol = num(root, ptr + "/atol");
    opt.tail_levels = integer(root, ptr + "/tail_levels");
    opt.energies.clear();
    const json& es = array(root, ptr + "/energies");
    for (size_t i = 0; i < es.size(); ++i)
        opt.energies.push_back(num(root, ptr + "/energies/" + std::to_string(i)));
    if (opt.energies.empty()) throw ConfigError(ptr + "/energies: must be nonempty");
    if (!(opt.s_span > 0) || !(opt.rtol > 0) || !(opt.atol > 0))
        throw ConfigError(ptr + ": spans and tolerances must be positive");
    return opt;
}

TestFunction parse_test_function(const json& root, const std::string& ptr) {
    std::string kind = text(root, ptr + "/kind");
    if (kind == "sine") {
        allow_keys(root, ptr, {"kind"});
        return TestFunction::sine();
    }
    if (kind == "parabola") {
        allow_keys(root, ptr, {"kind"});
        return TestFunction::parabola();
    }
    if (kind == "power") {
        allow_keys(root, ptr, {"kind", "eps"});
        return TestFunction::power_boundary(num(root, ptr + "/eps"));
    }
    if (kind == "bump") {
        allow_keys(root, ptr, {"kind", "a", "b"});
        return TestFunction::bump_product(num(root, ptr + "/a"), num(root, ptr + "/b"));
    }
    throw ConfigError(ptr + "/kind: unknown test function '" + kind +
                      "' (sine|parabola|power|bump)");
}

Domain parse_domain(const json& root, const std::string& ptr) {
    std::string shape = text(root, ptr + "/shape");
    if (shape == "interval") {
        allow_keys(root, ptr, {"shape"});
        return Domain::interval();
    }
    if (shape == "disk") {
        allow_keys(root, ptr, {"shape", "R"});
        return Domain::disk(num(root, ptr + "/R"));
    }
    if (shape == "annulus") {
        allow_keys(root, ptr, {"shape", "r", "R"});
        return Domain::annulus(num(root, ptr + "/r"), num(root, ptr + "/R"));
    }
    if (shape == "ellipse") {
        allow_keys(root, ptr, {"shape", "a", "b"});
        return Domain::ellipse(num(root, ptr + "/a"), num(root, ptr + "/b"));
    }
    throw ConfigError(ptr + "/shape: unknown shape '" + shape +
                      "' (interval|disk|annulus|ellipse)");
}

// ---- defaults ----------------------------------------------------------------

json default_solve() {
    return json{{"s_anchor", 1.3862943611198906}, {"s_span", 2500.0}, {"n_nodes", 5001},
                {"rtol", 1e-12},                  {"atol", 1e-12},    {"energies", {0.0, -1.0, 1.0}},
                {"tail_levels", 3}};
}

json default_config(const std::string& sub) {
    json base{{"seed", 12345}, {"threads", 1}};
    if (sub == "classify") {
        base["potential"] = {{"kind", "power_critical"}, {"c", 1.0}};
        base["solve"] = default_solve();
    } else if (sub == "sweep") {
        base["family"] = {{"kind", "power_critical"}};
        base["lo"] = 0.5;
        base["hi"] = 1.0;
        base["tol"] = 0.01;
        base["solve"] = default_solve();
    } else if (sub == "sigma") {
        base["g"] = {{"kind", "log"}, {"d0", 0.25}};
        base["rho0"] = {0.01, 0.005};
        base["n_terms"] = 2048;
        base["brusentsev"] = true;
    } else if (sub == "counterexample") {
        base["p"] = 2;
        base["alpha"] = -0.6;
        base["grid"] = {{"s_min", 5.0}, {"s_max", 40.0}, {"nodes", 2001}};
        base["residual_tol"] = 1e-5;
        base["drift_tol"] = 1e-6;
    } else if (sub == "hardy") {
        base["a_const"] = 0.0;
        base["families"] = json::array({{{"kind", "sine"}},
                                        {{"kind", "parabola"}},
                                        {{"kind", "power"}, {"eps", 0.05}},
                                        {{"kind", "bump"}, {"a", 0.2}, {"b", 0.8}}});
        base["improved"] = {{"enable", true}, {"d", 2.0}, {"depth", 3}};
        base["d_sweep"] = json::array();
        base["sharpness"] = {0.4, 0.2, 0.1, 0.05, 0.02, 0.01};
    } else if (sub == "agmon") {
        base["left"] = {{"kind", "power_critical"}, {"c", 0.75}};
        base["right"] = {{"kind", "power_critical"}, {"c", 0.75}};
        base["index"] = 0;
        base["truncation"] = {{"left", 1e-6}, {"right", -1.0}};
        base["eigen"] = {{"n_nodes", 8001}, {"rtol", 1e-12}, {"atol", 1e-14},
                         {"e_lo", 0.0},     {"e_hi", 1e4}};
        base["decay"] = {{"rho", 1e-3}};
        base["identity"] = {{"bump", {0.2, 0.8}}, {"panels", 32}, {"tol", 1e-5}};
        base["ratio"] = {{"g", {{"kind", "log"}, {"d0", 0.25}}},
                         {"rho0", 0.05},
                         {"n_max", 6},
                         {"n_grid", 20001}};
    } else if (sub == "geometry") {
        base["domains"] = json::array({{{"shape", "interval"}},
                                       {{"shape", "disk"}, {"R", 1.0}},
                                       {{"shape", "annulus"}, {"r", 1.0}, {"R", 2.0}},
                                       {{"shape", "ellipse"}, {"a", 2.0}, {"b", 1.0}}});
        base["samples"] = 1000;
        base["radial"] = {{"enable", true},
                          {"radius", 1.0},
                          {"dims", {1, 2, 3}},
                          {"coefficients", {0.75, 0.5}}};
        base["solve"] = default_solve();
    }
    return base;
}

const std::set<std::string>& top_keys(const std::string& sub) {
    static const std::map<std::string, std::set<std::string>> k = {
        {"classify", {"seed", "threads", "potential", "solve"}},
        {"sweep", {"seed", "threads", "family", "lo", "hi", "tol", "solve"}},
        {"sigma", {"seed", "threads", "g", "rho0", "n_terms", "brusentsev"}},
        {"counterexample",
         {"seed", "threads", "p", "alpha", "grid", "residual_tol", "drift_tol"}},
        {"hardy",
         {"seed", "threads", "a_const", "families", "improved", "d_sweep", "sharpness"}},
        {"agmon",
         {"seed", "threads", "left", "right", "index", "truncation", "eigen", "decay",
          "identity", "ratio"}},
        {"geometry", {"seed", "threads", "domains", "samples", "radial", "solve"}},
    };
    return k.at(sub);
}

// ---- run context -------------------------------------------------------------

struct Ctx {
    json cfg;
    std::string sub;
    std::string out_path;  // empty -> stream
    std::string format = "json";
    std::uint64_t seed = 12345;
    int threads = 1;
    std::ostream* out;

    void emit_json(json j) const { write(j.dump(2) + "\n"); }
    void emit(const CsvTable& t, json j) const {
        write(format == "csv" ? t.str() : j.dump(2) + "\n");
    }
    void write(const std::string& s) const {
        if (out_path.empty())
            *out << s;
        else
            write_text(s, out_path);
    }
};

// ---- subcommand handlers -----------------------------------------------------

std::vector<std::string> classify_row(double key, const char* keyname, const EnergyDetail& d,
                                      bool agree) {
    (void)keyname;
    return {fmt17(key),
            to_string(d.type),
            fmt17(d.dominant_tail.sigma),
            fmt17(d.recessive_tail.sigma),
            agree ? "high" : "low"};
}

int handle_classify(const Ctx& ctx) {
    PotentialFamily fam = parse_family(ctx.cfg, "/potential");
    SolveOptions opt = parse_solve(ctx.cfg, "/solve");
    EndpointClassification cls = classify_endpoint(fam, opt);
    json j = to_json(cls);
    j["potential"] = fam.describe();
    CsvTable t;
    t.header = {"energy", "verdict", "sigma_dominant", "sigma_recessive", "confidence"};
    for (const auto& d : cls.per_energy)
        t.row(classify_row(d.energy, "energy", d, cls.agree));
    ctx.emit(t, j);
    return cls.agree ? 0 : 1;
}

int handle_sweep(const Ctx& ctx) {
    std::string kind = text(ctx.cfg, "/family/kind");
    std::function<PotentialFamily(double)> make;
    if (kind == "power_critical") {
        allow_keys(ctx.cfg, "/family", {"kind"});
        make = [](double c) { return PotentialFamily::power_critical(c); };
    } else if (kind == "log_hierarchy") {
        allow_keys(ctx.cfg, "/family", {"kind", "p", "leading"});
        int p = integer(ctx.cfg, "/family/p");
        double leading = num(ctx.cfg, "/family/leading");
        make = [p, leading](double c) { return PotentialFamily::log_hierarchy(p, leading, c); };
    } else if (kind == "counterexample") {
        allow_keys(ctx.cfg, "/family", {"kind", "p"});
        int p = integer(ctx.cfg, "/family/p");
        make = [p](double a) { return PotentialFamily::counterexample(p, a); };
    } else {
        throw ConfigError("/family/kind: unknown sweep family '" + kind +
                          "' (power_critical|log_hierarchy|counterexample)");
    }
    SolveOptions opt = parse_solve(ctx.cfg, "/solve");
    SweepResult res = threshold_sweep(make, num(ctx.cfg, "/lo"), num(ctx.cfg, "/hi"),
                                      num(ctx.cfg, "/tol"), opt);
    json j = to_json(res);
    j["family"] = ctx.cfg.at("/family"_json_pointer);
    CsvTable t;
    t.header = {"param", "verdict", "sigma_dominant", "sigma_recessive", "confidence"};
    std::vector<SweepEval> evals = res.evaluations;
    std::sort(evals.begin(), evals.end(),
              [](const SweepEval& a, const SweepEval& b) { return a.param < b.param; });
    for (const auto& e : evals)
        t.row({fmt17(e.param), to_string(e.type), fmt17(e.sigma_dominant),
               fmt17(e.sigma_recessive), e.agree ? "high" : "low"});
    ctx.emit(t, j);
    return 0;
}

int handle_sigma(const Ctx& ctx) {
    GFunction g = parse_g(ctx.cfg, "/g");
    const json& rhos = array(ctx.cfg, "/rho0");
    if (rhos.size() != 2) throw ConfigError("/rho0: expected exactly two starting radii");
    double r0 = num(ctx.cfg, "/rho0/0"), r1 = num(ctx.cfg, "/rho0/1");
    if (!(r0 > 0) || !(r1 > 0) || r0 == r1)
        throw ConfigError("/rho0: radii must be positive and distinct");
    int n_terms = integer(ctx.cfg, "/n_terms");
    Sigma1Check s1 = check_sigma1(g);
    SigmaVerdict sv = sigma_verdict(g, std::log(1.0 / r0), std::log(1.0 / r1), n_terms);
    json j{{"g", g.name}, {"sigma1", to_json(s1)}, {"series", to_json(sv)}};
    if (boolean(ctx.cfg, "/brusentsev")) j["brusentsev"] = to_json(brusentsev_sup(g));
    CsvTable t;
    t.header = {"rho0", "verdict", "decided_level", "residual",
                "beta0", "beta1", "beta2", "beta3", "beta4"};
    for (int i = 0; i < 2; ++i) {
        const DivergenceReport& r = sv.per_rho[i];
        t.row({fmt17(std::exp(-sv.s_rho0[i])), to_string(r.verdict),
               std::to_string(r.decided_level), fmt17(r.rms), fmt17(r.beta[0]),
               fmt17(r.beta[1]), fmt17(r.beta[2]), fmt17(r.beta[3]), fmt17(r.beta[4])});
    }
    ctx.emit(t, j);
    return s1.ok ? 0 : 1;
}

int handle_counterexample(const Ctx& ctx) {
    int p = integer(ctx.cfg, "/p");
    double alpha = num(ctx.cfg, "/alpha");
    allow_keys(ctx.cfg, "/grid", {"s_min", "s_max", "nodes"});
    double s_min = num(ctx.cfg, "/grid/s_min");
    double s_max = num(ctx.cfg, "/grid/s_max");
    int nodes = integer(ctx.cfg, "/grid/nodes");
    if (!(s_min < s_max) || nodes < 33)
        throw ConfigError("/grid: need s_min < s_max and >= 33 nodes");
    PotentialFamily fam = PotentialFamily::counterexample(p, alpha);
    s_min = std::max(s_min, fam.domain_min_s());
    if (!(s_min < s_max))
        throw ConfigError("/grid/s_max: window sits below the family's admissible depth");

    std::vector<double> grid = make_s_grid(s_min, s_max, nodes);
    SampledSolution psi = counterexample_psi_sample(p, alpha, grid);
    SampledSolution phi = second_solution(p, alpha, grid);
    WronskianCertificate cert = wronskian_certificate(psi, phi);

    // reproduce psi through the integrator and track the relative deviation
    SampledSolution ode = integrate_solution(fam, 0.0, grid, psi.u.front().to_double(),
                                             psi.du.front().to_double());
    double max_rel = 0;
    std::vector<double> rel(grid.size(), 0.0);
    for (size_t i = 0; i < grid.size(); ++i) {
        double r = std::exp(ode.u[i].log_abs - psi.u[i].log_abs);
        rel[i] = ode.u[i].sign == psi.u[i].sign ? std::abs(r - 1.0) : r + 1.0;
        max_rel = std::max(max_rel, rel[i]);
    }

    double residual_tol = num(ctx.cfg, "/residual_tol");
    double drift_tol = num(ctx.cfg, "/drift_tol");
    bool ok = max_rel <= residual_tol && cert.max_drift_rel <= drift_tol &&
              std::abs(cert.reference - 1.0) <= 1e-8;

    json j{{"p", p},
           {"alpha", alpha},
           {"grid", {{"s_min", s_min}, {"s_max", s_max}, {"nodes", nodes}}},
           {"max_rel_residual", max_rel},
           {"wronskian", to_json(cert)},
           {"psi_tail", to_json(tail_exponent(psi))},
           {"phi_tail", to_json(tail_exponent(phi))},
           {"ok", ok}};
    CsvTable t;
    t.header = {"s", "w", "ln_abs_psi", "sign_psi", "ln_abs_phi", "sign_phi", "rel_residual"};
    for (size_t i = 0; i < grid.size(); ++i)
        t.row({fmt17(grid[i]), fmt17(fam.w(grid[i])), fmt17(psi.u[i].log_abs),
               std::to_string(psi.u[i].sign), fmt17(phi.u[i].log_abs),
               std::to_string(phi.u[i].sign), fmt17(rel[i])});
    ctx.emit(t, j);
    return ok ? 0 : 1;
}

int handle_hardy(const Ctx& ctx) {
    double a_const = num(ctx.cfg, "/a_const");
    allow_keys(ctx.cfg, "/improved", {"enable", "d", "depth"});
    bool improved = boolean(ctx.cfg, "/improved/enable");
    double d_big = num(ctx.cfg, "/improved/d");
    int depth = integer(ctx.cfg, "/improved/depth");

    const json& fams = array(ctx.cfg, "/families");
    if (fams.empty()) throw ConfigError("/families: must be nonempty");
    std::vector<TestFunction> tfs;
    for (size_t i = 0; i < fams.size(); ++i)
        tfs.push_back(parse_test_function(ctx.cfg, "/families/" + std::to_string(i)));

    CsvTable t;
    t.header = {"family", "param", "a", "d", "depth", "quotient"};
    json rows = json::array();
    bool violated = false;
    for (const auto& tf : tfs) {
        QuotientReport q = hardy_quotient(tf, a_const);
        violated = violated || !(q.quotient >= 1.0) || !q.resolved;
        t.row({tf.name, fmt17(tf.param), fmt17(a_const), fmt17(0.0), "0", fmt17(q.quotient)});
        rows.push_back(json{{"family", tf.name}, {"param", tf.param}, {"a", a_const},
                            {"d", 0.0},          {"depth", 0},        {"report", to_json(q)}});
        if (improved) {
            QuotientReport qi = improved_quotient(tf, d_big, depth);
            t.row({tf.name, fmt17(tf.param), fmt17(0.0), fmt17(d_big), std::to_string(depth),
                   fmt17(qi.quotient)});
            rows.push_back(json{{"family", tf.name}, {"param", tf.param}, {"a", 0.0},
                                {"d", d_big},        {"depth", depth},    {"report", to_json(qi)}});
        }
    }
    const json& dsweep = array(ctx.cfg, "/d_sweep");
    for (size_t k = 0; k < dsweep.size(); ++k) {
        double d = num(ctx.cfg, "/d_sweep/" + std::to_string(k));
        for (const auto& tf : tfs) {
            QuotientReport qi = improved_quotient(tf, d, depth);
            t.row({tf.name, fmt17(tf.param), fmt17(0.0), fmt17(d), std::to_string(depth),
                   fmt17(qi.quotient)});
            rows.push_back(json{{"family", tf.name}, {"param", tf.param}, {"a", 0.0},
                                {"d", d},            {"depth", depth},    {"report", to_json(qi)}});
        }
    }
    json j{{"rows", rows}};
    const json& sharp = array(ctx.cfg, "/sharpness");
    if (!sharp.empty()) {
        std::vector<double> eps;
        for (size_t i = 0; i < sharp.size(); ++i)
            eps.push_back(num(ctx.cfg, "/sharpness/" + std::to_string(i)));
        j["sharpness"] = to_json(sharpness_probe(eps, a_const));
    }
    ctx.emit(t, j);
    return violated ? 1 : 0;
}

int handle_agmon(const Ctx& ctx) {
    IntervalPotential v(parse_family(ctx.cfg, "/left"), parse_family(ctx.cfg, "/right"));
    allow_keys(ctx.cfg, "/truncation", {"left", "right"});
    allow_keys(ctx.cfg, "/eigen", {"n_nodes", "rtol", "atol", "e_lo", "e_hi"});
    GroundStateOptions gopt;
    gopt.cutoff = num(ctx.cfg, "/truncation/left");
    gopt.cutoff_right = num(ctx.cfg, "/truncation/right");
    gopt.n_nodes = integer(ctx.cfg, "/eigen/n_nodes");
    gopt.rtol = num(ctx.cfg, "/eigen/rtol");
    gopt.atol = num(ctx.cfg, "/eigen/atol");
    gopt.e_lo = num(ctx.cfg, "/eigen/e_lo");
    gopt.e_hi = num(ctx.cfg, "/eigen/e_hi");
    GroundState gs = ground_state(v, integer(ctx.cfg, "/index"), gopt);

    DecayFit df = decay_fit(gs, num(ctx.cfg, "/decay/rho"));

    allow_keys(ctx.cfg, "/identity", {"bump", "panels", "tol"});
    const json& bump = array(ctx.cfg, "/identity/bump");
    if (bump.size() != 2) throw ConfigError("/identity/bump: expected [lo, hi]");
    FormIdentityReport fi =
        form_identity_check(v, gs.energy, num(ctx.cfg, "/identity/bump/0"),
                            num(ctx.cfg, "/identity/bump/1"), integer(ctx.cfg, "/identity/panels"));

    allow_keys(ctx.cfg, "/ratio", {"g", "rho0", "n_max", "n_grid"});
    GFunction g = parse_g(ctx.cfg, "/ratio/g");
    AgmonReport ar = agmon_ratio(v, gs, g, num(ctx.cfg, "/ratio/rho0"),
                                 integer(ctx.cfg, "/ratio/n_max"),
                                 integer(ctx.cfg, "/ratio/n_grid"));

    bool ok = fi.rel_residual <= num(ctx.cfg, "/identity/tol") && ar.stable;
    json j{{"ground_state", to_json(gs)}, {"decay", to_json(df)},
           {"identity", to_json(fi)},     {"ratio", to_json(ar)},
           {"weight", g.name},            {"ok", ok}};
    CsvTable t;
    t.header = {"n", "rho_n", "lhs", "rhs", "ratio"};
    for (size_t i = 0; i < ar.rho.size(); ++i)
        t.row({std::to_string(i), fmt17(ar.rho[i]), fmt17(ar.lhs[i]), fmt17(ar.rhs[i]),
               fmt17(ar.ratio[i])});
    ctx.emit(t, j);
    return ok ? 0 : 1;
}

int handle_geometry(const Ctx& ctx) {
    const json& doms = array(ctx.cfg, "/domains");
    int samples = integer(ctx.cfg, "/samples");
    CsvTable t;
    t.header = {"shape", "reach", "tested", "max_dev", "max_norm", "pass",
                "radial_dim", "radial_coeff", "radial_verdict"};
    json jdoms = json::array();
    bool violated = false;
    for (size_t i = 0; i < doms.size(); ++i) {
        Domain dom = parse_domain(ctx.cfg, "/domains/" + std::to_string(i));
        GradNormReport r = grad_norm_check(dom, samples, ctx.seed);
        violated = violated || !r.pass;
        json jd = to_json(dom);
        jd["reach"] = dom.reach();
        jd["grad_check"] = to_json(r);
        jdoms.push_back(jd);
        t.row({dom.describe(), fmt17(dom.reach()), std::to_string(r.tested), fmt17(r.max_dev),
               fmt17(r.max_norm), r.pass ? "true" : "false", "", "", ""});
    }
    json j{{"domains", jdoms}};
    allow_keys(ctx.cfg, "/radial",
               {"enable", "radius", "dims", "coefficients"});
    if (boolean(ctx.cfg, "/radial/enable")) {
        double radius = num(ctx.cfg, "/radial/radius");
        SolveOptions opt = parse_solve(ctx.cfg, "/solve");
        json jr = json::array();
        const json& dims = array(ctx.cfg, "/radial/dims");
        const json& coeffs = array(ctx.cfg, "/radial/coefficients");
        for (size_t a = 0; a < coeffs.size(); ++a) {
            double c = num(ctx.cfg, "/radial/coefficients/" + std::to_string(a));
            for (size_t b = 0; b < dims.size(); ++b) {
                int n = integer(ctx.cfg, "/radial/dims/" + std::to_string(b));
                RadialVerdict rv =
                    radial_esa(PotentialFamily::power_critical(c), n, radius, opt);
                json e = to_json(rv);
                e["coefficient"] = c;
                jr.push_back(e);
                t.row({"disk", fmt17(radius), "", "", "", "", std::to_string(n), fmt17(c),
                       to_string(rv.verdict)});
            }
        }
        j["radial"] = jr;
    }
    ctx.emit(t, j);
    return violated ? 1 : 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"numerical toolkit for confining boundary potentials"};
    app.require_subcommand(1);

    struct Flags {
        std::string config, out_path, format = "json";
        int threads = 0;
        std::int64_t seed = -1;
        bool dry_run = false;
    };
    std::map<std::string, Flags> flags;
    static const char* subs[] = {"classify", "sweep",  "sigma",   "counterexample",
                                 "hardy",    "agmon",  "geometry"};
    static const char* descs[] = {
        "endpoint limit point / limit circle verdict for one potential",
        "bisect the borderline band of a one-parameter family",
        "dyadic summability verdict for a weight function",
        "explicit borderline solution tables and integrator residuals",
        "boundary Hardy quotients and the iterated-log improvement",
        "eigenpair, decay exponent, form identity and annulus ratios",
        "distance-function checks and the radial disk reduction"};
    for (size_t i = 0; i < std::size(subs); ++i) {
        CLI::App* s = app.add_subcommand(subs[i], descs[i]);
        Flags& f = flags[subs[i]];
        s->add_option("--config", f.config, "JSON configuration file");
        s->add_option("--out", f.out_path, "report path (default: stdout)");
        s->add_option("--format", f.format, "report format")
            ->check(CLI::IsMember({"json", "csv"}));
        s->add_option("--threads", f.threads, "worker cap for sweeps")
            ->check(CLI::PositiveNumber);
        s->add_option("--seed", f.seed, "seed for sampling subcommands")
            ->check(CLI::NonNegativeNumber);
        s->add_flag("--dry-run", f.dry_run, "print the resolved configuration and exit");
    }

    std::vector<const char*> argv;
    argv.push_back("confining");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 2;
    }

    const std::string sub = app.get_subcommands().front()->get_name();
    const Flags& f = flags[sub];
    try {
        Ctx ctx;
        ctx.sub = sub;
        ctx.cfg = default_config(sub);
        if (!f.config.empty()) {
            std::ifstream in(f.config);
            if (!in) throw ConfigError("cannot read config file: " + f.config);
            json user;
            try {
                user = json::parse(in);
            } catch (const json::parse_error& e) {
                throw ConfigError(f.config + ": " + e.what());
            }
            if (!user.is_object()) throw ConfigError(f.config + ": top level must be an object");
            merge_cfg(ctx.cfg, user);
        }
        allow_keys(ctx.cfg, "", top_keys(sub));
        ctx.out_path = f.out_path;
        ctx.format = f.format;
        ctx.out = &out;
        ctx.seed = f.seed >= 0 ? static_cast<std::uint64_t>(f.seed)
                               : static_cast<std::uint64_t>(integer(ctx.cfg, "/seed"));
        ctx.threads = f.threads > 0 ? f.threads : integer(ctx.cfg, "/threads");
        if (ctx.threads < 1) throw ConfigError("/threads: must be >= 1");

        if (f.dry_run) {
            json resolved{{"subcommand", sub},       {"config", ctx.cfg},
                          {"out", ctx.out_path},     {"format", ctx.format},
                          {"seed", ctx.seed},        {"threads", ctx.threads}};
            out << resolved.dump(2) << "\n";
            return 0;
        }
        if (sub == "classify") return handle_classify(ctx);
        if (sub == "sweep") return handle_sweep(ctx);
        if (sub == "sigma") return handle_sigma(ctx);
        if (sub == "counterexample") return handle_counterexample(ctx);
        if (sub == "hardy") return handle_hardy(ctx);
        if (sub == "agmon") return handle_agmon(ctx);
        if (sub == "geometry") return handle_geometry(ctx);
        throw std::logic_error("unreachable");
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int run_cli(const std::vector<std::string>& args) {
    return run_cli(args, std::cout, std::cerr);
}

}  // namespace confining
