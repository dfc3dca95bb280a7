#include "windmfc/commands.hpp"
#include "windmfc/presets.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace windmfc;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("windmfc_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path write_json(const fs::path& dir, const std::string& name, const json& j) {
    const fs::path p = dir / name;
    std::ofstream(p, std::ios::binary) << j.dump(2);
    return p;
}

json preset_json(const std::string& name) { return scenario_to_json(make_preset(name)); }

std::string config_error(const json& j) {
    try {
        (void)scenario_from_json(j);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

json short_run(const std::string& preset, double duration) {
    json j = preset_json(preset);
    j["duration"] = duration;
    j["metrics_window"] = {0.0, duration};
    return j;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

TEST_CASE("presets carry the documented gains") {
    const Scenario low = make_preset("low-ip").scenario;
    CHECK(low.speed_loop.K_P == -0.45);
    CHECK(low.speed_loop.alpha == 0.0005);
    CHECK(low.speed_loop.tau == 20.0);
    CHECK(low.wind.schedule().size() == 3);
    CHECK(low.wind.mean_speed(100.0) == 7.0);
    CHECK(low.wind.mean_speed(300.0) == 8.0);
    CHECK(low.wind.mean_speed(500.0) == 9.0);

    const Scenario lpi = make_preset("low-pi").scenario;
    CHECK(lpi.speed_loop.K_P == 500.0);
    CHECK(lpi.speed_loop.K_I == 10.0);

    const Scenario high = make_preset("high-ip").scenario;
    CHECK(high.speed_loop.K_P == -4.0);
    CHECK(high.speed_loop.alpha == 1.0);
    CHECK(high.speed_loop.tau == 20.0);
    CHECK(high.power_loop->K_P == 3.0);
    CHECK(high.power_loop->alpha == 1000.0);
    CHECK(high.power_loop->tau == 20.0);
    CHECK(high.wind.mean_speed(100.0) == 16.0);
    CHECK(high.wind.mean_speed(400.0) == 20.0);

    const Scenario hpi = make_preset("high-pi").scenario;
    CHECK(hpi.speed_loop.K_P == -0.006);
    CHECK(hpi.speed_loop.K_I == 0.52);
    CHECK(hpi.power_loop->K_P == -0.0003);
    CHECK(hpi.power_loop->K_I == -0.00026);

    const Scenario bias = make_preset("fault-bias").scenario;
    CHECK(bias.fault.kind == FaultKind::bias);
    CHECK(bias.fault.offset == -5.0e4);
    CHECK(bias.fault.t_onset == 300.0);
    CHECK(bias.wind.schedule().size() == 1);
    CHECK(bias.wind.mean_speed(0.0) == 16.0);

    const Scenario eff = make_preset("fault-efficiency").scenario;
    CHECK(eff.fault.kind == FaultKind::efficiency_loss);
    CHECK(eff.fault.factor == 0.85);
    CHECK(eff.fault.t_onset == 300.0);

    for (const auto& n : preset_names()) {
        CHECK(make_preset(n).scenario.error_convention == ErrorConvention::y_minus_ref);
        CHECK(make_preset(n).scenario.name == n);
    }
    CHECK_THROWS_AS((void)make_preset("medium"), ConfigError);
}

TEST_CASE("preset documents round-trip") {
    for (const auto& n : preset_names()) {
        CAPTURE(n);
        const json j = preset_json(n);
        const ScenarioFile back = scenario_from_json(j);
        CHECK(scenario_to_json(back) == j);
        CHECK(scenario_fingerprint(back) == scenario_fingerprint(make_preset(n)));
    }
}

TEST_CASE("strict parsing") {
    json j = preset_json("low-ip");
    j["loops"]["speed"].erase("K_P");
    CHECK(config_error(j).find("loops.speed.K_P") != std::string::npos);

    j = preset_json("low-ip");
    j.erase("version");
    CHECK(config_error(j).find("version") != std::string::npos);

    j = preset_json("low-ip");
    j["version"] = 2;
    CHECK(config_error(j).find("version") != std::string::npos);

    j = preset_json("low-ip");
    j["colour"] = "blue";
    CHECK(config_error(j).find("unknown key 'colour'") != std::string::npos);

    j = preset_json("high-ip");
    j["loops"]["power"]["K_I"] = 1.0;  // iP loops take no integral gain
    CHECK(config_error(j).find("loops.power.K_I") != std::string::npos);

    j = preset_json("high-ip");
    j["loops"].erase("power");
    CHECK(config_error(j).find("loops.power") != std::string::npos);

    j = preset_json("low-ip");
    j["region"] = "medium_speed";
    CHECK(config_error(j).find("region") != std::string::npos);

    j = preset_json("low-ip");
    j["dt"] = "fast";
    CHECK(config_error(j).find("'dt'") != std::string::npos);

    j = preset_json("low-ip");
    j["wind"]["schedule"][1]["t_start"] = 0.0;
    CHECK(config_error(j).find("increasing") != std::string::npos);

    j = preset_json("low-ip");
    j["metrics_window"] = {100.0, 50.0};
    CHECK(config_error(j).find("metrics window") != std::string::npos);
}

TEST_CASE("fingerprint ignores formatting and key order") {
    const json j = preset_json("high-pi");
    const std::string compact = j.dump();
    const std::string pretty = j.dump(4);
    const ScenarioFile a = scenario_from_json(json::parse(compact));
    const ScenarioFile b = scenario_from_json(json::parse(pretty));
    CHECK(scenario_fingerprint(a) == scenario_fingerprint(b));
    json changed = j;
    changed["loops"]["speed"]["K_P"] = -0.007;
    CHECK(scenario_fingerprint(scenario_from_json(changed)) != scenario_fingerprint(a));
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(scenario_fingerprint(a).rfind("fnv1a64:", 0) == 0);
}

TEST_CASE("run writes the time series and summary") {
    const fs::path dir = scratch("run");
    const fs::path cfg = write_json(dir, "high.json", short_run("high-ip", 20.0));
    std::ostringstream err;
    REQUIRE(cmd_run(cfg.string(), dir / "out", {}, err) == kExitOk);

    const std::string csv = slurp(dir / "out" / "timeseries.csv");
    CHECK(csv.find('\r') == std::string::npos);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "t,V,omega_t,omega_ref,beta_cmd,T_g_cmd,T_g_act,P_t,P_e,F_est_loop1,F_est_loop2");
    std::size_t rows = 0;
    while (std::getline(lines, line)) {
        REQUIRE(split(line).size() == 11);
        ++rows;
    }
    CHECK(rows == 2001);

    const json summary = json::parse(slurp(dir / "out" / "summary.json"));
    CHECK(summary["samples"] == 2001);
    CHECK(summary["metrics"]["mae_P_e"].is_number());
    CHECK(summary["fingerprint"] == scenario_fingerprint(load_scenario(cfg.string())));
    CHECK(summary["build"]["version"].is_string());
}

TEST_CASE("PI runs leave the estimate columns empty") {
    const fs::path dir = scratch("pi");
    const fs::path cfg = write_json(dir, "pi.json", short_run("low-pi", 5.0));
    std::ostringstream err;
    REQUIRE(cmd_run(cfg.string(), dir / "out", {}, err) == kExitOk);
    std::istringstream lines(slurp(dir / "out" / "timeseries.csv"));
    std::string line;
    std::getline(lines, line);
    std::getline(lines, line);
    const auto cells = split(line);
    REQUIRE(cells.size() == 11);
    CHECK(cells[9].empty());
    CHECK(cells[10].empty());
    const json summary = json::parse(slurp(dir / "out" / "summary.json"));
    CHECK(summary["metrics"]["mae_P_e"].is_null());
}

TEST_CASE("summary metrics match a recomputation from the CSV") {
    const fs::path dir = scratch("recompute");
    json j = short_run("low-ip", 30.0);
    j["metrics_window"] = {5.0, 30.0};
    const fs::path cfg = write_json(dir, "low.json", j);
    std::ostringstream err;
    REQUIRE(cmd_run(cfg.string(), dir / "out", {}, err) == kExitOk);
    std::istringstream lines(slurp(dir / "out" / "timeseries.csv"));
    std::string line;
    std::getline(lines, line);
    double sum_abs = 0.0, sum = 0.0, sum_sq = 0.0, sum_p = 0.0;
    int n = 0;
    while (std::getline(lines, line)) {
        const auto c = split(line);
        const double t = std::stod(c[0]);
        if (t < 5.0 - 1e-9) continue;
        const double e = std::stod(c[2]) - std::stod(c[3]);
        sum_abs += std::abs(e);
        sum += e;
        sum_sq += e * e;
        sum_p += std::stod(c[7]);
        ++n;
    }
    const double mean = sum / n;
    const json m = json::parse(slurp(dir / "out" / "summary.json"))["metrics"];
    const auto six = [](double v) { return round_significant(v, 6); };
    CHECK(m["mae_omega"].get<double>() == six(sum_abs / n));
    CHECK(m["std_omega"].get<double>() == doctest::Approx(six(std::sqrt(sum_sq / n - mean * mean))).epsilon(2e-6));
    CHECK(m["mean_P_t"].get<double>() == six(sum_p / n));
}

TEST_CASE("repeated runs produce identical files") {
    const fs::path dir = scratch("repeat");
    const fs::path cfg = write_json(dir, "f.json", short_run("fault-bias", 15.0));
    std::ostringstream err;
    REQUIRE(cmd_run(cfg.string(), dir / "a", {}, err) == kExitOk);
    REQUIRE(cmd_run(cfg.string(), dir / "b", {}, err) == kExitOk);
    CHECK(slurp(dir / "a" / "timeseries.csv") == slurp(dir / "b" / "timeseries.csv"));
    CHECK(slurp(dir / "a" / "summary.json") == slurp(dir / "b" / "summary.json"));
}

TEST_CASE("exit codes") {
    const fs::path dir = scratch("exit");
    std::ostringstream err;

    json missing = preset_json("low-ip");
    missing["loops"]["speed"].erase("K_P");
    CHECK(cmd_run(write_json(dir, "missing.json", missing).string(), dir / "o1", {}, err) == kExitConfig);
    CHECK(err.str().find("K_P") != std::string::npos);

    CHECK(cmd_run((dir / "absent.json").string(), dir / "o2", {}, err) == kExitConfig);

    std::ofstream(dir / "broken.json") << "{ not json";
    CHECK(cmd_run((dir / "broken.json").string(), dir / "o3", {}, err) == kExitConfig);

    json wild = short_run("low-ip", 5.0);
    wild["loops"]["speed"]["y_scale"] = 1e-308;  // scaled measurement overflows
    err.str("");
    CHECK(cmd_run(write_json(dir, "wild.json", wild).string(), dir / "o4", {}, err) == kExitControllerFault);
    CHECK(err.str().find("torque") != std::string::npos);

    std::ostringstream out;
    err.str("");
    CHECK(cmd_presets("nope", out, err) == kExitConfig);
    for (const auto& n : preset_names()) CHECK(err.str().find(n) != std::string::npos);
}

TEST_CASE("overrides") {
    const fs::path dir = scratch("override");
    const fs::path cfg = write_json(dir, "low.json", preset_json("low-ip"));
    Overrides o;
    o.duration = 100.0;
    o.dt = 0.02;
    o.error_convention = ErrorConvention::ref_minus_y;
    std::ostringstream err;
    REQUIRE(cmd_run(cfg.string(), dir / "out", o, err) == kExitOk);
    const json s = json::parse(slurp(dir / "out" / "summary.json"));
    CHECK(s["samples"] == 5001);
    CHECK(s["error_convention"] == "ref_minus_y");
    CHECK(s["metrics_window"][1] == 100.0);

    Overrides bad;
    bad.duration = 30.0;  // metrics window starts at 60 s
    CHECK(cmd_run(cfg.string(), dir / "bad", bad, err) == kExitConfig);
}

TEST_CASE("compare") {
    const fs::path dir = scratch("compare");
    const fs::path a = write_json(dir, "a.json", short_run("low-ip", 20.0));
    const fs::path b = write_json(dir, "b.json", short_run("low-pi", 20.0));
    const fs::path h = write_json(dir, "h.json", short_run("high-ip", 20.0));
    std::ostringstream err;

    REQUIRE(cmd_compare(a.string(), a.string(), dir / "same", {}, err) == kExitOk);
    const json same = json::parse(slurp(dir / "same" / "comparison.json"));
    CHECK(same["ratios_a_over_b"]["mae_omega"] == 1.0);
    CHECK(same["ratios_a_over_b"]["std_omega"] == 1.0);
    CHECK(same["ratios_a_over_b"]["mean_P_t"] == 1.0);
    CHECK(same["ratios_a_over_b"]["mae_P_e"].is_null());

    REQUIRE(cmd_compare(a.string(), b.string(), dir / "ab", {}, err) == kExitOk);
    const std::string table = slurp(dir / "ab" / "comparison.txt");
    CHECK(table.find("omega_t") != std::string::npos);
    CHECK(table.find("MAE (rad/s)") != std::string::npos);
    CHECK(table.find("P_t") != std::string::npos);
    CHECK(table.find("low-pi") != std::string::npos);

    const fs::path hp = write_json(dir, "hp.json", short_run("high-pi", 20.0));
    REQUIRE(cmd_compare(h.string(), hp.string(), dir / "hh", {}, err) == kExitOk);
    const std::string htable = slurp(dir / "hh" / "comparison.txt");
    CHECK(htable.find("P_e") != std::string::npos);
    const json hh = json::parse(slurp(dir / "hh" / "comparison.json"));
    CHECK(hh["ratios_a_over_b"]["mae_P_e"].is_number());

    CHECK(cmd_compare(a.string(), h.string(), dir / "mismatch", {}, err) == kExitMismatch);
    json other_wind = short_run("low-pi", 20.0);
    other_wind["wind"]["schedule"][0]["V_moy"] = 6.5;
    const fs::path w = write_json(dir, "w.json", other_wind);
    CHECK(cmd_compare(a.string(), w.string(), dir / "mismatch2", {}, err) == kExitMismatch);
}

TEST_CASE("ratio helper") {
    CHECK(*metric_ratio(3.0, 2.0) == 1.5);
    CHECK_FALSE(metric_ratio(1.0, 0.0).has_value());
}
