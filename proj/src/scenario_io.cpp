#include "windmfc/scenario_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

namespace windmfc {

using nlohmann::json;

namespace {

// Object view that records consumed keys so leftovers can be rejected.
class Obj {
public:
    Obj(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(where() + " must be an object");
    }

    [[nodiscard]] bool has(const std::string& key) const { return j_.contains(key); }

    const json& at(const std::string& key) {
        if (!j_.contains(key)) throw ConfigError("missing key '" + join(key) + "'");
        used_.insert(key);
        return j_.at(key);
    }

    double num(const std::string& key) {
        const json& v = at(key);
        if (!v.is_number()) throw ConfigError("key '" + join(key) + "' must be a number");
        const double d = v.get<double>();
        if (!std::isfinite(d)) throw ConfigError("key '" + join(key) + "' must be finite");
        return d;
    }

    double num_or(const std::string& key, double fallback) { return has(key) ? num(key) : fallback; }

    std::string str(const std::string& key) {
        const json& v = at(key);
        if (!v.is_string()) throw ConfigError("key '" + join(key) + "' must be a string");
        return v.get<std::string>();
    }

    bool boolean_or(const std::string& key, bool fallback) {
        if (!has(key)) return fallback;
        const json& v = at(key);
        if (!v.is_boolean()) throw ConfigError("key '" + join(key) + "' must be a boolean");
        return v.get<bool>();
    }

    Obj child(const std::string& key) { return Obj(at(key), join(key)); }

    template <class E>
    E choice(const std::string& key, std::initializer_list<E> options) {
        const std::string s = str(key);
        std::string valid;
        for (E e : options) {
            if (s == to_string(e)) return e;
            valid += valid.empty() ? "" : ", ";
            valid += to_string(e);
        }
        throw ConfigError("key '" + join(key) + "' must be one of: " + valid);
    }

    [[nodiscard]] std::string join(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    void finish() const {
        for (const auto& item : j_.items())
            if (!used_.count(item.key())) throw ConfigError("unknown key '" + join(item.key()) + "'");
    }

private:
    [[nodiscard]] std::string where() const { return path_.empty() ? "document" : "'" + path_ + "'"; }

    const json& j_;
    std::string path_;
    std::set<std::string> used_;
};

LoopConfig read_loop(Obj o, ControllerKind kind) {
    LoopConfig l;
    if (kind == ControllerKind::ip) {
        l.alpha = o.num("alpha");
        l.K_P = o.num("K_P");
        l.tau = o.num("tau");
        l.estimator = o.has("estimator") ? o.choice("estimator", {Estimator::algebraic, Estimator::closed_loop})
                                         : Estimator::algebraic;
    } else {
        l.K_P = o.num("K_P");
        l.K_I = o.num("K_I");
    }
    l.u_scale = o.num_or("u_scale", 1.0);
    l.y_scale = o.num_or("y_scale", 1.0);
    l.u_min = o.num("u_min");
    l.u_max = o.num("u_max");
    o.finish();
    return l;
}

json write_loop(const LoopConfig& l, ControllerKind kind) {
    json j;
    if (kind == ControllerKind::ip) {
        j["alpha"] = l.alpha;
        j["K_P"] = l.K_P;
        j["tau"] = l.tau;
        j["estimator"] = to_string(l.estimator);
    } else {
        j["K_P"] = l.K_P;
        j["K_I"] = l.K_I;
    }
    j["u_scale"] = l.u_scale;
    j["y_scale"] = l.y_scale;
    j["u_min"] = l.u_min;
    j["u_max"] = l.u_max;
    return j;
}

WindProfile read_wind(Obj o) {
    const json& sched = o.at("schedule");
    if (!sched.is_array() || sched.empty()) throw ConfigError("key 'wind.schedule' must be a non-empty array");
    std::vector<WindStage> stages;
    for (std::size_t i = 0; i < sched.size(); ++i) {
        Obj st(sched[i], "wind.schedule[" + std::to_string(i) + "]");
        stages.push_back({st.num("t_start"), st.num("V_moy")});
        st.finish();
    }
    const AmplitudeRule rule = o.choice("amplitude_rule", {AmplitudeRule::table, AmplitudeRule::reciprocal});
    o.finish();
    try {
        return WindProfile(std::move(stages), rule);
    } catch (const std::logic_error& e) {
        throw ConfigError(std::string("wind: ") + e.what());
    }
}

FaultSpec read_fault(Obj o) {
    FaultSpec f;
    f.kind = o.choice("kind", {FaultKind::none, FaultKind::efficiency_loss, FaultKind::bias});
    if (f.kind == FaultKind::efficiency_loss) f.factor = o.num("factor");
    if (f.kind == FaultKind::bias) f.offset = o.num("offset");
    if (f.kind != FaultKind::none) f.t_onset = o.num("t_onset");
    o.finish();
    return f;
}

TurbineParams read_turbine(Obj o) {
    TurbineParams p;
    p.J_t = o.num("J_t");
    p.K_t = o.num("K_t");
    p.rho = o.num("rho");
    p.R = o.num("R");
    p.T_g_max = o.num("T_g_max");
    p.P_rated = o.num("P_rated");
    Obj c = o.child("cp");
    p.cp.c1 = c.num("c1");
    p.cp.c2 = c.num("c2");
    p.cp.c3 = c.num("c3");
    p.cp.c4 = c.num("c4");
    p.cp.c5 = c.num("c5");
    p.cp.c6 = c.num("c6");
    c.finish();
    o.finish();
    return p;
}

}  // namespace

ScenarioFile scenario_from_json(const json& doc) {
    Obj o(doc, "");
    {
        const json& v = o.at("version");
        if (!v.is_number_integer() || v.get<long long>() != kScenarioFileVersion)
            throw ConfigError("unsupported version; expected " + std::to_string(kScenarioFileVersion));
    }
    ScenarioFile f;
    Scenario& s = f.scenario;
    s.name = o.str("name");
    s.region = o.choice("region", {Region::low_speed, Region::high_speed});
    s.controller = o.choice("controller", {ControllerKind::ip, ControllerKind::pi});
    s.error_convention = o.choice("error_convention", {ErrorConvention::y_minus_ref, ErrorConvention::ref_minus_y});
    s.duration = o.num_or("duration", 600.0);
    s.dt = o.num_or("dt", 0.01);
    if (o.has("metrics_window")) {
        const json& w = o.at("metrics_window");
        if (!w.is_array() || w.size() != 2 || !w[0].is_number() || !w[1].is_number())
            throw ConfigError("key 'metrics_window' must be [t0, t1]");
        s.metrics_t0 = w[0].get<double>();
        s.metrics_t1 = w[1].get<double>();
    }

    {
        Obj init = o.child("initial");
        s.initial_omega = init.num("omega_t");
        s.initial_beta = init.num("beta");
        s.initial_T_g = init.num_or("T_g", 0.0);
        init.finish();
    }
    s.wind = read_wind(o.child("wind"));

    if (o.has("reference")) {
        Obj r = o.child("reference");
        s.reference_filter_tau = r.num_or("wind_filter_tau", 0.0);
        r.finish();
    }
    if (o.has("pitch")) {
        Obj p = o.child("pitch");
        s.pitch_hold = p.num_or("hold", s.pitch_hold);
        s.pitch_slew_rate = p.num_or("slew_rate", s.pitch_slew_rate);
        s.pitch_min = p.num_or("min", s.pitch_min);
        s.pitch_max = p.num_or("max", s.pitch_max);
        p.finish();
    }
    if (o.has("cut_speeds")) {
        Obj c = o.child("cut_speeds");
        s.V_cut_in = c.num_or("V_cut_in", s.V_cut_in);
        s.V_cut_off = c.num_or("V_cut_off", s.V_cut_off);
        c.finish();
    }

    {
        Obj loops = o.child("loops");
        s.speed_loop = read_loop(loops.child("speed"), s.controller);
        if (s.region == Region::high_speed) s.power_loop = read_loop(loops.child("power"), s.controller);
        loops.finish();
    }
    if (o.has("fault")) s.fault = read_fault(o.child("fault"));
    if (o.has("turbine")) s.turbine = read_turbine(o.child("turbine"));
    if (o.has("output")) {
        Obj out = o.child("output");
        f.output.timeseries = out.boolean_or("timeseries", true);
        out.finish();
    }
    o.finish();

    try {
        s.validate();
    } catch (const std::logic_error& e) {
        throw ConfigError(e.what());
    }
    return f;
}

ScenarioFile load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
    }
    return scenario_from_json(doc);
}

json scenario_to_json(const ScenarioFile& f) {
    const Scenario& s = f.scenario;
    json j;
    j["version"] = kScenarioFileVersion;
    j["name"] = s.name;
    j["region"] = to_string(s.region);
    j["controller"] = to_string(s.controller);
    j["error_convention"] = to_string(s.error_convention);
    j["duration"] = s.duration;
    j["dt"] = s.dt;
    j["metrics_window"] = {s.metrics_t0, s.metrics_t1};
    j["initial"] = {{"omega_t", s.initial_omega}, {"beta", s.initial_beta}, {"T_g", s.initial_T_g}};

    json sched = json::array();
    for (const auto& st : s.wind.schedule()) sched.push_back({{"t_start", st.t_start}, {"V_moy", st.V_moy}});
    j["wind"] = {{"schedule", sched}, {"amplitude_rule", to_string(s.wind.rule())}};
    j["reference"] = {{"wind_filter_tau", s.reference_filter_tau}};
    j["pitch"] = {{"hold", s.pitch_hold}, {"slew_rate", s.pitch_slew_rate}, {"min", s.pitch_min}, {"max", s.pitch_max}};
    j["cut_speeds"] = {{"V_cut_in", s.V_cut_in}, {"V_cut_off", s.V_cut_off}};

    json loops;
    loops["speed"] = write_loop(s.speed_loop, s.controller);
    if (s.power_loop) loops["power"] = write_loop(*s.power_loop, s.controller);
    j["loops"] = loops;

    json fault{{"kind", to_string(s.fault.kind)}};
    if (s.fault.kind == FaultKind::efficiency_loss) fault["factor"] = s.fault.factor;
    if (s.fault.kind == FaultKind::bias) fault["offset"] = s.fault.offset;
    if (s.fault.kind != FaultKind::none) fault["t_onset"] = s.fault.t_onset;
    j["fault"] = fault;

    const TurbineParams& p = s.turbine;
    j["turbine"] = {{"J_t", p.J_t},
                    {"K_t", p.K_t},
                    {"rho", p.rho},
                    {"R", p.R},
                    {"T_g_max", p.T_g_max},
                    {"P_rated", p.P_rated},
                    {"cp",
                     {{"c1", p.cp.c1},
                      {"c2", p.cp.c2},
                      {"c3", p.cp.c3},
                      {"c4", p.cp.c4},
                      {"c5", p.cp.c5},
                      {"c6", p.cp.c6}}}};
    j["output"] = {{"timeseries", f.output.timeseries}};
    return j;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string scenario_fingerprint(const ScenarioFile& f) {
    // Output options do not change the simulated system.
    json j = scenario_to_json(f);
    j.erase("output");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(j.dump())));
    return std::string("fnv1a64:") + buf;
}

namespace {

void put(std::ostream& os, double v) {
    if (v == 0.0) v = 0.0;  // no "-0" in the output
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    os << buf;
}

}  // namespace

void write_timeseries_csv(const RunRecord& r, std::ostream& os) {
    os << "t,V,omega_t,omega_ref,beta_cmd,T_g_cmd,T_g_act,P_t,P_e,F_est_loop1,F_est_loop2\n";
    for (std::size_t k = 0; k < r.size(); ++k) {
        for (const auto* col : {&r.t, &r.V, &r.omega_t, &r.omega_ref, &r.beta_cmd, &r.T_g_cmd, &r.T_g_act, &r.P_t,
                                &r.P_e}) {
            put(os, (*col)[k]);
            os << ',';
        }
        if (r.has_F_est_loop1) put(os, r.F_est_loop1[k]);
        os << ',';
        if (r.has_F_est_loop2) put(os, r.F_est_loop2[k]);
        os << '\n';
    }
}

double round_significant(double v, int digits) {
    if (!std::isfinite(v) || v == 0.0) return v;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", digits - 1, v);
    return std::strtod(buf, nullptr);
}

json metrics_to_json(const RunMetrics& m) {
    const auto r = [](double v) { return round_significant(v, kSummaryDigits); };
    json j{{"mae_omega", r(m.mae_omega)}, {"std_omega", r(m.std_omega)}, {"mean_P_t", r(m.mean_P_t)}};
    j["mae_P_e"] = m.mae_P_e ? json(r(*m.mae_P_e)) : json(nullptr);
    j["std_P_e"] = m.std_P_e ? json(r(*m.std_P_e)) : json(nullptr);
    return j;
}

json summary_json(const ScenarioFile& f, const RunResult& r) {
    const Scenario& s = f.scenario;
    const OperatingPoint op = optimal_operating_point(s.turbine);
    json j;
    j["scenario"] = s.name;
    j["fingerprint"] = scenario_fingerprint(f);
    j["build"] = {{"tool", "windmfc"}, {"version", WINDMFC_VERSION}};
    j["region"] = to_string(s.region);
    j["controller"] = to_string(s.controller);
    j["error_convention"] = to_string(s.error_convention);
    j["samples"] = r.record.size();
    j["metrics_window"] = {s.metrics_t0, s.metrics_t1};
    j["metrics"] = metrics_to_json(r.metrics);
    j["operating_point"] = {{"lambda_opt", op.lambda_opt},
                            {"cp_max", op.cp_max},
                            {"V_rated", op.V_rated},
                            {"omega_rated", op.omega_rated}};
    j["stable"] = closed_loop_stable(r.record, r.metrics);
    j["warnings"] = r.warnings;
    return j;
}

}  // namespace windmfc
