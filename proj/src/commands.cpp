#include "windmfc/commands.hpp"

#include "windmfc/presets.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace windmfc {

using nlohmann::json;
namespace fs = std::filesystem;

void apply_overrides(ScenarioFile& f, const Overrides& o) {
    Scenario& s = f.scenario;
    if (o.dt) s.dt = *o.dt;
    if (o.duration) {
        s.duration = *o.duration;
        if (s.metrics_t1 > s.duration) s.metrics_t1 = s.duration;
    }
    if (o.error_convention) s.error_convention = *o.error_convention;
    try {
        s.validate();
    } catch (const std::logic_error& e) {
        throw ConfigError(std::string("after overrides: ") + e.what());
    }
}

namespace {

void write_file(const fs::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << body;
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create '" + dir.string() + "': " + ec.message());
}

ScenarioFile load(const std::string& path, const Overrides& o) {
    ScenarioFile f = load_scenario(path);
    apply_overrides(f, o);
    return f;
}

void report_warnings(const ScenarioFile& f, const RunResult& r, std::ostream& err) {
    for (const auto& w : r.warnings) err << "warning: " << f.scenario.name << ": " << w << '\n';
}

std::string fmt(double v, const char* spec) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

json ratio_json(double a, double b) {
    const auto r = metric_ratio(a, b);
    return r ? json(round_significant(*r, kSummaryDigits)) : json(nullptr);
}

}  // namespace

std::optional<double> metric_ratio(double a, double b) {
    if (b == 0.0) return std::nullopt;
    return a / b;
}

int cmd_run(const std::string& config_path, const fs::path& out_dir, const Overrides& o, std::ostream& err) {
    ScenarioFile f;
    try {
        f = load(config_path, o);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    RunResult r;
    try {
        r = run_scenario(f.scenario);
    } catch (const ScenarioAbort& e) {
        err << "error: " << e.what() << '\n';
        return kExitControllerFault;
    }
    report_warnings(f, r, err);
    try {
        ensure_dir(out_dir);
        if (f.output.timeseries) {
            std::ostringstream csv;
            write_timeseries_csv(r.record, csv);
            write_file(out_dir / "timeseries.csv", csv.str());
        }
        write_file(out_dir / "summary.json", summary_json(f, r).dump(2) + "\n");
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitOk;
}

std::string comparison_table(const ScenarioFile& a, const RunMetrics& ma, const ScenarioFile& b,
                             const RunMetrics& mb) {
    const bool high = a.scenario.region == Region::high_speed;
    std::ostringstream os;
    char line[256];
    const auto row = [&](const char* quantity, const char* stat, const std::string& va, const std::string& vb) {
        std::snprintf(line, sizeof line, "%-14s %-20s %14s %14s\n", quantity, stat, va.c_str(), vb.c_str());
        os << line;
    };
    os << (high ? "High-speed region" : "Low-speed region") << ", metrics over [" << a.scenario.metrics_t0 << ", "
       << a.scenario.metrics_t1 << "] s\n";
    row("", "", a.scenario.name, b.scenario.name);
    row("omega_t", "MAE (rad/s)", fmt(ma.mae_omega, "%.4g"), fmt(mb.mae_omega, "%.4g"));
    row("", "Std (rad/s)", fmt(ma.std_omega, "%.4g"), fmt(mb.std_omega, "%.4g"));
    if (high) {
        row("P_e", "MAE (kW)", fmt(ma.mae_P_e.value_or(0.0) / 1e3, "%.4g"),
            fmt(mb.mae_P_e.value_or(0.0) / 1e3, "%.4g"));
        row("", "Std (kW)", fmt(ma.std_P_e.value_or(0.0) / 1e3, "%.4g"),
            fmt(mb.std_P_e.value_or(0.0) / 1e3, "%.4g"));
    } else {
        row("P_t", "mean (kW)", fmt(ma.mean_P_t / 1e3, "%.4g"), fmt(mb.mean_P_t / 1e3, "%.4g"));
    }
    return os.str();
}

int cmd_compare(const std::string& config_a, const std::string& config_b, const fs::path& out_dir,
                const Overrides& o, std::ostream& err) {
    ScenarioFile fa;
    ScenarioFile fb;
    try {
        fa = load(config_a, o);
        fb = load(config_b, o);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    const json ja = scenario_to_json(fa);
    const json jb = scenario_to_json(fb);
    if (ja["region"] != jb["region"] || ja["wind"] != jb["wind"]) {
        err << "error: scenarios '" << fa.scenario.name << "' and '" << fb.scenario.name
            << "' differ in region or wind\n";
        return kExitMismatch;
    }

    RunResult ra;
    RunResult rb;
    try {
        ra = run_scenario(fa.scenario);
        rb = run_scenario(fb.scenario);
    } catch (const ScenarioAbort& e) {
        err << "error: " << e.what() << '\n';
        return kExitControllerFault;
    }
    report_warnings(fa, ra, err);
    report_warnings(fb, rb, err);

    const RunMetrics& ma = ra.metrics;
    const RunMetrics& mb = rb.metrics;
    json ratios{{"mae_omega", ratio_json(ma.mae_omega, mb.mae_omega)},
                {"std_omega", ratio_json(ma.std_omega, mb.std_omega)},
                {"mean_P_t", ratio_json(ma.mean_P_t, mb.mean_P_t)}};
    ratios["mae_P_e"] = ma.mae_P_e && mb.mae_P_e ? ratio_json(*ma.mae_P_e, *mb.mae_P_e) : json(nullptr);
    ratios["std_P_e"] = ma.std_P_e && mb.std_P_e ? ratio_json(*ma.std_P_e, *mb.std_P_e) : json(nullptr);

    json doc;
    doc["build"] = {{"tool", "windmfc"}, {"version", WINDMFC_VERSION}};
    doc["region"] = to_string(fa.scenario.region);
    doc["a"] = {{"scenario", fa.scenario.name},
                {"fingerprint", scenario_fingerprint(fa)},
                {"metrics", metrics_to_json(ma)}};
    doc["b"] = {{"scenario", fb.scenario.name},
                {"fingerprint", scenario_fingerprint(fb)},
                {"metrics", metrics_to_json(mb)}};
    doc["ratios_a_over_b"] = ratios;

    try {
        ensure_dir(out_dir);
        write_file(out_dir / "comparison.json", doc.dump(2) + "\n");
        write_file(out_dir / "comparison.txt", comparison_table(fa, ma, fb, mb));
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitOk;
}

int cmd_presets(const std::string& name, std::ostream& out, std::ostream& err) {
    try {
        out << scenario_to_json(make_preset(name)).dump(2) << '\n';
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitOk;
}

}  // namespace windmfc
