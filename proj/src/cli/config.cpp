#include "hamsim/experiment.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace hamsim {

using nlohmann::json;

const char* to_string(ExperimentKind k) {
    switch (k) {
    case ExperimentKind::Advection1d: return "advection1d";
    case ExperimentKind::Advection2d: return "advection2d";
    case ExperimentKind::Wave1d: return "wave1d";
    case ExperimentKind::Wave2d: return "wave2d";
    case ExperimentKind::Wave1dShots: return "wave1d_shots";
    case ExperimentKind::BoundsSweep: return "bounds_sweep";
    case ExperimentKind::CommutatorSuite: return "commutator_suite";
    }
    return "?";
}

namespace {

std::string join_issues(const std::vector<ConfigIssue>& issues) {
    std::ostringstream os;
    os << issues.size() << " config error" << (issues.size() == 1 ? "" : "s") << ":";
    for (const auto& i : issues)
        os << "\n  " << (i.field.empty() ? "<root>" : i.field) << ": " << i.message;
    return os.str();
}

} // namespace

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

namespace {

std::string num(double x) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

/// Reads one JSON object, recording every problem instead of stopping.
class Reader {
public:
    Reader(const json& obj, std::string path, std::vector<ConfigIssue>& issues)
        : obj_(obj), path_(std::move(path)), issues_(issues) {}

    std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
    void error(const std::string& key, const std::string& msg) { issues_.push_back({field(key), msg}); }

    bool has(const std::string& key) {
        used_.insert(key);
        return obj_.contains(key);
    }

    const json* get(const std::string& key, bool required) {
        used_.insert(key);
        auto it = obj_.find(key);
        if (it == obj_.end()) {
            if (required)
                error(key, "required field is missing");
            return nullptr;
        }
        return &*it;
    }

    std::optional<double> real(const std::string& key, bool required) {
        const json* v = get(key, required);
        if (!v)
            return std::nullopt;
        if (!v->is_number()) {
            error(key, "expected a number");
            return std::nullopt;
        }
        const double x = v->get<double>();
        if (!std::isfinite(x)) {
            error(key, "must be finite");
            return std::nullopt;
        }
        return x;
    }

    std::optional<long long> integer(const std::string& key, bool required) {
        const json* v = get(key, required);
        if (!v)
            return std::nullopt;
        if (!v->is_number_integer()) {
            error(key, "expected an integer");
            return std::nullopt;
        }
        return v->get<long long>();
    }

    std::optional<std::string> string(const std::string& key, bool required) {
        const json* v = get(key, required);
        if (!v)
            return std::nullopt;
        if (!v->is_string()) {
            error(key, "expected a string");
            return std::nullopt;
        }
        return v->get<std::string>();
    }

    std::optional<bool> boolean(const std::string& key, bool required) {
        const json* v = get(key, required);
        if (!v)
            return std::nullopt;
        if (!v->is_boolean()) {
            error(key, "expected true or false");
            return std::nullopt;
        }
        return v->get<bool>();
    }

    std::optional<std::vector<double>> reals(const std::string& key, bool required) {
        const json* v = get(key, required);
        if (!v)
            return std::nullopt;
        if (!v->is_array()) {
            error(key, "expected an array of numbers");
            return std::nullopt;
        }
        std::vector<double> out;
        for (std::size_t i = 0; i < v->size(); ++i) {
            const json& e = (*v)[i];
            if (!e.is_number() || !std::isfinite(e.get<double>())) {
                issues_.push_back({field(key) + "[" + std::to_string(i) + "]", "expected a finite number"});
                return std::nullopt;
            }
            out.push_back(e.get<double>());
        }
        return out;
    }

    std::optional<std::vector<long long>> integers(const std::string& key, bool required) {
        const json* v = get(key, required);
        if (!v)
            return std::nullopt;
        if (!v->is_array()) {
            error(key, "expected an array of integers");
            return std::nullopt;
        }
        std::vector<long long> out;
        for (std::size_t i = 0; i < v->size(); ++i) {
            const json& e = (*v)[i];
            if (!e.is_number_integer()) {
                issues_.push_back({field(key) + "[" + std::to_string(i) + "]", "expected an integer"});
                return std::nullopt;
            }
            out.push_back(e.get<long long>());
        }
        return out;
    }

    /// Forbids a key that is meaningful elsewhere but not here.
    void forbid(const std::string& key, const std::string& why) {
        used_.insert(key);
        if (obj_.contains(key))
            error(key, why);
    }

    /// Reports every key that no accessor asked for.
    void finish() {
        for (auto it = obj_.begin(); it != obj_.end(); ++it)
            if (!used_.count(it.key()))
                error(it.key(), "unknown key");
    }

private:
    const json& obj_;
    std::string path_;
    std::vector<ConfigIssue>& issues_;
    std::set<std::string> used_;
};

std::optional<ExperimentKind> parse_kind(const std::string& s) {
    for (auto k : {ExperimentKind::Advection1d, ExperimentKind::Advection2d, ExperimentKind::Wave1d,
                   ExperimentKind::Wave2d, ExperimentKind::Wave1dShots, ExperimentKind::BoundsSweep,
                   ExperimentKind::CommutatorSuite})
        if (s == to_string(k))
            return k;
    return std::nullopt;
}

std::optional<Order> parse_order(const std::string& s) {
    if (s == "first")
        return Order::First;
    if (s == "second")
        return Order::Second;
    return std::nullopt;
}

bool is_multiple(double t, double step) {
    const double k = std::round(t / step);
    return std::abs(k * step - t) <= 1e-9 * std::max(1.0, std::abs(t));
}

void read_initial(const json& v, const std::string& path, PDEProblem& p, std::vector<ConfigIssue>& issues) {
    if (!v.is_object()) {
        issues.push_back({path, "expected an object"});
        return;
    }
    Reader r(v, path, issues);
    const auto type = r.string("type", true);
    if (!type) {
        r.finish();
        return;
    }
    if (*type == "basis") {
        const auto idx = r.integer("index", true);
        if (idx && *idx < 0)
            r.error("index", "must be non-negative");
        else if (idx)
            p.initial = BasisState{Index(*idx)};
    } else if (*type == "window") {
        const json* ranges = r.get("ranges", true);
        if (ranges) {
            UniformWindow w;
            bool ok = ranges->is_array();
            for (std::size_t a = 0; ok && a < ranges->size(); ++a) {
                const json& e = (*ranges)[a];
                if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer() ||
                    e[0].get<long long>() < 0 || e[1].get<long long>() < 0) {
                    issues.push_back({r.field("ranges") + "[" + std::to_string(a) + "]",
                                      "expected [lo, hi] with non-negative integers"});
                    ok = false;
                    break;
                }
                w.ranges.emplace_back(Index(e[0].get<long long>()), Index(e[1].get<long long>()));
            }
            if (!ranges->is_array())
                r.error("ranges", "expected an array of [lo, hi] pairs");
            if (ok)
                p.initial = w;
        }
    } else if (*type == "amplitudes") {
        const auto re = r.reals("re", true);
        const auto im = r.reals("im", false);
        if (re) {
            if (im && im->size() != re->size())
                r.error("im", "length " + std::to_string(im->size()) + " differs from re length " +
                                  std::to_string(re->size()));
            else {
                ExplicitAmplitudes e;
                for (std::size_t i = 0; i < re->size(); ++i)
                    e.amplitudes.emplace_back((*re)[i], im ? (*im)[i] : 0.0);
                p.initial = e;
            }
        }
    } else {
        r.error("type", "unknown initial state type '" + *type + "' (basis, window, amplitudes)");
    }
    r.finish();
}

bool is_trajectory(ExperimentKind k) {
    return k == ExperimentKind::Advection1d || k == ExperimentKind::Advection2d || k == ExperimentKind::Wave1d ||
           k == ExperimentKind::Wave2d;
}

bool is_wave(ExperimentKind k) {
    return k == ExperimentKind::Wave1d || k == ExperimentKind::Wave2d || k == ExperimentKind::Wave1dShots;
}

void read_problem(const json& v, ExperimentKind kind, PDEProblem& p, std::vector<ConfigIssue>& issues) {
    if (!v.is_object()) {
        issues.push_back({"problem", "expected an object"});
        return;
    }
    Reader r(v, "problem", issues);
    const std::size_t before = issues.size();
    p.equation = is_wave(kind) ? Equation::Wave : Equation::Advection;
    p.d = (kind == ExperimentKind::Advection2d || kind == ExperimentKind::Wave2d) ? 2 : 1;

    if (auto n = r.integer("n", true)) {
        if (*n < 1 || *n > 12)
            r.error("n", "must be in [1, 12], got " + std::to_string(*n));
        else
            p.n = int(*n);
    }
    if (auto l = r.real("l", false)) {
        if (*l <= 0)
            r.error("l", "must be positive, got " + num(*l));
        else
            p.l = *l;
    }
    const auto tau = r.real("tau", true);
    const auto T = r.real("T", true);
    if (tau && *tau <= 0)
        r.error("tau", "must be positive, got " + num(*tau));
    if (T && *T <= 0)
        r.error("T", "must be positive, got " + num(*T));
    if (tau && T && *tau > 0 && *T > 0) {
        p.tau = *tau;
        p.total_time = *T;
        if (!is_multiple(*T, *tau) || std::round(*T / *tau) < 1)
            r.error("T", "T=" + num(*T) + " is not a positive multiple of tau=" + num(*tau));
    }
    if (auto o = r.string("order", false)) {
        if (auto order = parse_order(*o))
            p.order = *order;
        else
            r.error("order", "expected 'first' or 'second', got '" + *o + "'");
    }
    if (auto bc = r.string("bc", true)) {
        if (*bc == "periodic")
            p.bc = BoundaryCondition::Periodic;
        else if (*bc == "dirichlet" && !is_wave(kind))
            p.bc = BoundaryCondition::Dirichlet;
        else if (*bc == "mixed" && is_wave(kind))
            p.bc = BoundaryCondition::Dirichlet;
        else
            r.error("bc", is_wave(kind) ? "wave experiments take 'mixed' or 'periodic', got '" + *bc + "'"
                                        : "advection experiments take 'periodic' or 'dirichlet', got '" + *bc + "'");
    }
    if (kind == ExperimentKind::Wave2d && p.bc != BoundaryCondition::Periodic && r.has("bc"))
        r.error("bc", "wave2d needs 'periodic'");
    if (kind == ExperimentKind::Wave1dShots && p.bc != BoundaryCondition::Dirichlet && r.has("bc"))
        r.error("bc", "wave1d_shots needs 'mixed'");

    if (is_wave(kind)) {
        r.forbid("velocity", "not used by wave experiments");
        if (auto c = r.real("speed", true)) {
            if (*c < 0)
                r.error("speed", "must be non-negative");
            else
                p.speed = *c;
        }
    } else {
        r.forbid("speed", "not used by advection experiments");
        if (auto v = r.reals("velocity", true)) {
            if (int(v->size()) != p.d)
                r.error("velocity", "needs " + std::to_string(p.d) + " components, got " + std::to_string(v->size()));
            else
                p.velocity = *v;
        }
    }
    if (const json* init = r.get("initial", true))
        read_initial(*init, "problem.initial", p, issues);
    r.finish();

    if (issues.size() == before) {
        try {
            check_problem(p);
            const auto psi = initial_state(p);
            if (is_wave(kind)) {
                const std::size_t half = psi.size() / 2;
                for (std::size_t i = half; i < psi.size(); ++i)
                    if (psi[i] != cplx{0.0, 0.0}) {
                        issues.push_back({"problem.initial", "wave initial states must vanish on the second block "
                                                             "(the classical baseline starts from u = 0)"});
                        break;
                    }
            }
            for (const auto& a : psi)
                if (a.imag() != 0.0) {
                    issues.push_back({"problem.initial", "initial amplitudes must be real for the classical baseline"});
                    break;
                }
        } catch (const std::exception& e) {
            issues.push_back({"problem", e.what()});
        }
    }
}

void read_sweep(const json& v, SweepOptions& s, std::vector<ConfigIssue>& issues) {
    if (!v.is_object()) {
        issues.push_back({"sweep", "expected an object"});
        return;
    }
    Reader r(v, "sweep", issues);
    if (auto a = r.integer("n_min", false))
        s.n_min = int(*a);
    if (auto b = r.integer("n_max", false))
        s.n_max = int(*b);
    if (s.n_min < 2 || s.n_max < s.n_min || s.n_max > 10)
        r.error("n_max", "need 2 <= n_min <= n_max <= 10, got n_min=" + std::to_string(s.n_min) +
                             " n_max=" + std::to_string(s.n_max));
    if (const json* o = r.get("orders", false)) {
        s.orders.clear();
        bool ok = o->is_array() && !o->empty();
        for (std::size_t i = 0; ok && i < o->size(); ++i) {
            const auto order = (*o)[i].is_string() ? parse_order((*o)[i].get<std::string>()) : std::nullopt;
            if (!order)
                ok = false;
            else
                s.orders.push_back(*order);
        }
        if (!ok)
            r.error("orders", "expected a non-empty array of 'first'/'second'");
    }
    if (auto taus = r.reals("taus", false)) {
        bool ok = !taus->empty();
        for (double t : *taus)
            ok = ok && t > 0;
        if (!ok)
            r.error("taus", "expected a non-empty array of positive numbers");
        else
            s.taus = *taus;
    }
    if (auto m = r.boolean("multidim", false))
        s.include_multidim = *m;
    r.finish();
}

void read_commutators(const json& v, CommutatorSuiteOptions& c, std::vector<ConfigIssue>& issues) {
    if (!v.is_object()) {
        issues.push_back({"commutators", "expected an object"});
        return;
    }
    Reader r(v, "commutators", issues);
    if (auto ns = r.integers("n", false)) {
        c.n.clear();
        for (long long n : *ns) {
            if (n < 2 || n > 6) {
                r.error("n", "entries must be in [2, 6], got " + std::to_string(n));
                break;
            }
            c.n.push_back(int(n));
        }
    }
    if (auto ls = r.reals("lambda", false))
        c.lambda = *ls;
    if (auto tol = r.real("tol", false)) {
        if (*tol <= 0)
            r.error("tol", "must be positive");
        else
            c.tol = *tol;
    }
    r.finish();
}

} // namespace

ExperimentConfig validate_config(std::string_view json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::vector<ConfigIssue>{{"", std::string("invalid JSON: ") + e.what()}});
    }
    std::vector<ConfigIssue> issues;
    if (!root.is_object())
        throw ConfigError(std::vector<ConfigIssue>{{"", "top level must be a JSON object"}});

    ExperimentConfig cfg;
    Reader r(root, "", issues);
    if (auto v = r.integer("schema_version", true)) {
        if (*v != 1)
            r.error("schema_version", "unsupported version " + std::to_string(*v) + " (expected 1)");
    }
    if (auto d = r.string("description", false))
        cfg.description = *d;
    if (auto out = r.string("output_dir", false)) {
        if (out->empty())
            r.error("output_dir", "must not be empty");
        else
            cfg.output_dir = *out;
    }

    const auto kind_name = r.string("experiment", true);
    std::optional<ExperimentKind> kind;
    if (kind_name) {
        kind = parse_kind(*kind_name);
        if (!kind)
            r.error("experiment", "unknown experiment '" + *kind_name + "'");
    }
    if (!kind) {
        // Without a kind the remaining keys cannot be judged.
        for (const char* k : {"problem", "fdm_dt", "fdm_laplacian", "record_times", "shots", "seed", "sweep",
                              "commutators"})
            r.get(k, false);
        r.finish();
        throw ConfigError(issues);
    }
    cfg.experiment = *kind;

    const bool traj = is_trajectory(*kind);
    const bool shots = *kind == ExperimentKind::Wave1dShots;
    const bool sim = traj || shots;

    if (sim) {
        if (const json* p = r.get("problem", true))
            read_problem(*p, *kind, cfg.problem, issues);
    } else {
        r.forbid("problem", "not used by " + std::string(to_string(*kind)));
    }

    if (traj) {
        if (auto dt = r.real("fdm_dt", true)) {
            if (*dt <= 0)
                r.error("fdm_dt", "must be positive");
            else {
                cfg.fdm_dt = *dt;
                if (!is_multiple(cfg.problem.total_time, *dt))
                    r.error("fdm_dt", "T=" + num(cfg.problem.total_time) + " is not a multiple of fdm_dt=" + num(*dt));
            }
        }
        if (auto lap = r.string("fdm_laplacian", false)) {
            if (*lap == "standard")
                cfg.fdm_laplacian = WaveLaplacian::Standard;
            else if (*lap == "central_squared")
                cfg.fdm_laplacian = WaveLaplacian::CentralSquared;
            else
                r.error("fdm_laplacian", "expected 'standard' or 'central_squared'");
            if (!is_wave(*kind))
                r.error("fdm_laplacian", "only used by wave experiments");
            else if (cfg.fdm_laplacian == WaveLaplacian::CentralSquared && cfg.problem.bc != BoundaryCondition::Periodic)
                r.error("fdm_laplacian", "'central_squared' needs periodic bc");
        }
    } else {
        r.forbid("fdm_dt", "not used by " + std::string(to_string(*kind)));
        r.forbid("fdm_laplacian", "not used by " + std::string(to_string(*kind)));
    }

    if (sim) {
        if (auto times = r.reals("record_times", false)) {
            for (std::size_t i = 0; i < times->size(); ++i) {
                const double t = (*times)[i];
                const std::string f = "record_times[" + std::to_string(i) + "]";
                if (t < 0 || t > cfg.problem.total_time * (1 + 1e-12))
                    issues.push_back({f, num(t) + " lies outside [0, T=" + num(cfg.problem.total_time) + "]"});
                else if (!is_multiple(t, cfg.problem.tau))
                    issues.push_back({f, num(t) + " is not a multiple of tau=" + num(cfg.problem.tau)});
                else if (traj && cfg.fdm_dt > 0 && !is_multiple(t, cfg.fdm_dt))
                    issues.push_back({f, num(t) + " is not a multiple of fdm_dt=" + num(cfg.fdm_dt)});
                else if (i > 0 && t <= (*times)[i - 1])
                    issues.push_back({f, "record_times must be strictly increasing"});
            }
            cfg.record_times = *times;
        }
    } else {
        r.forbid("record_times", "not used by " + std::string(to_string(*kind)));
    }

    if (shots) {
        if (auto s = r.integer("shots", true)) {
            if (*s < 1 || *s > 100000000)
                r.error("shots", "must be in [1, 1e8], got " + std::to_string(*s));
            else
                cfg.shots = int(*s);
        }
        if (auto s = r.integer("seed", true)) {
            if (*s < 0)
                r.error("seed", "must be non-negative");
            else
                cfg.seed = std::uint64_t(*s);
        }
    } else {
        r.forbid("shots", "only used by wave1d_shots");
        r.forbid("seed", "only used by wave1d_shots");
    }

    if (*kind == ExperimentKind::BoundsSweep) {
        if (const json* s = r.get("sweep", false))
            read_sweep(*s, cfg.sweep, issues);
    } else {
        r.forbid("sweep", "only used by bounds_sweep");
    }
    if (*kind == ExperimentKind::CommutatorSuite) {
        if (const json* c = r.get("commutators", false))
            read_commutators(*c, cfg.commutators, issues);
    } else {
        r.forbid("commutators", "only used by commutator_suite");
    }

    r.finish();
    if (!issues.empty())
        throw ConfigError(std::move(issues));
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError(std::vector<ConfigIssue>{{"", "cannot read config file '" + path.string() + "'"}});
    std::ostringstream ss;
    ss << in.rdbuf();
    return validate_config(ss.str());
}

} // namespace hamsim
