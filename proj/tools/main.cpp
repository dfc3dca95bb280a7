#include "windmfc/commands.hpp"
#include "windmfc/presets.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

using namespace windmfc;

namespace {

void add_overrides(CLI::App* cmd, Overrides& o) {
    static const std::map<std::string, ErrorConvention> conventions{
        {"y_minus_ref", ErrorConvention::y_minus_ref}, {"ref_minus_y", ErrorConvention::ref_minus_y}};
    cmd->add_option("--dt", o.dt, "Override the sample period [s]")->check(CLI::PositiveNumber);
    cmd->add_option("--duration", o.duration, "Override the run length [s]")->check(CLI::PositiveNumber);
    cmd->add_option("--error-convention", o.error_convention, "Override the tracking-error sign")
        ->transform(CLI::CheckedTransformer(conventions, CLI::ignore_case));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Model-free and PI control of a 600 kW wind turbine"};
    app.set_version_flag("--version", std::string(WINDMFC_CLI_VERSION));
    app.require_subcommand(1);

    Overrides overrides;

    std::string run_config;
    std::string run_out = "out";
    auto* run = app.add_subcommand("run", "Simulate one scenario; writes timeseries.csv and summary.json");
    run->add_option("--config", run_config, "Scenario JSON")->required();
    run->add_option("--out", run_out, "Output directory");
    add_overrides(run, overrides);

    std::vector<std::string> cmp_configs;
    std::string cmp_out = "out";
    auto* compare = app.add_subcommand("compare", "Run two scenarios; writes comparison.json and comparison.txt");
    compare->add_option("--config", cmp_configs, "Scenario JSON (give twice: A then B)")->required()->expected(2);
    compare->add_option("--out", cmp_out, "Output directory");
    add_overrides(compare, overrides);

    std::string preset_name;
    std::string preset_out;
    auto* presets = app.add_subcommand("presets", "Print a built-in scenario document");
    presets->add_option("name", preset_name, "low-ip | low-pi | high-ip | high-pi | fault-efficiency | fault-bias")
        ->required();
    presets->add_option("--out", preset_out, "Write to this file instead of standard output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    if (*run) return cmd_run(run_config, run_out, overrides, std::cerr);
    if (*compare) return cmd_compare(cmp_configs[0], cmp_configs[1], cmp_out, overrides, std::cerr);
    if (*presets) {
        if (preset_out.empty()) return cmd_presets(preset_name, std::cout, std::cerr);
        std::ofstream out(preset_out, std::ios::binary | std::ios::trunc);
        if (!out) {
            std::cerr << "error: cannot write '" << preset_out << "'\n";
            return kExitIo;
        }
        return cmd_presets(preset_name, out, std::cerr);
    }
    return kExitUsage;
}
