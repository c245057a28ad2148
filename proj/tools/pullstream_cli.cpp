// Command-line front end: run, sweep and validate simulation configurations.

#include "pullstream/config.hpp"
#include "pullstream/simulation.hpp"

#include "pullstream/detail/format.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace pullstream;

namespace {

constexpr int kOk = 0;
constexpr int kUsageError = 1;
constexpr int kRuntimeError = 2;

void print_summary(const std::string& label, const MetricsReport& r)
{
    std::cout << label << "users=" << r.users.size() << " mean_quality=" << r.mean_quality()
              << " prebuffer_s=" << r.mean_prebuffer_seconds() << " rebuffer_pct=" << r.mean_rebuffer_percentage()
              << " mean_total_backlog_bits=" << r.mean_total_backlog() << '\n';
}

void write_outputs(const MetricsReport& report, const fs::path& dir, const std::string& suffix, bool trace)
{
    fs::create_directories(dir);
    const fs::path metrics = dir / ("metrics" + suffix + ".csv");
    emit_metrics(report, metrics);
    std::cout << "wrote " << metrics.string() << '\n';
    if (trace) {
        const fs::path trace_path = dir / ("trace" + suffix + ".csv");
        emit_trace(report, trace_path);
        std::cout << "wrote " << trace_path.string() << '\n';
    }
}

std::vector<std::string> split_values(const std::string& text)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty())
            out.push_back(item);
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Pull-based adaptive video streaming simulator for multi-helper wireless networks"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir = "out";
    bool trace = false;

    auto* run = app.add_subcommand("run", "Run one simulation and write the metrics CSV");
    run->add_option("--config", config_path, "JSON configuration file")->required();
    run->add_option("--seed", seed, "Override run.seed");
    run->add_option("--out", out_dir, "Output directory")->capture_default_str();
    run->add_flag("--trace", trace, "Also write the per-slot queue trace");

    std::string param;
    std::string values;
    auto* sweep = app.add_subcommand("sweep", "Repeat runs varying one parameter");
    sweep->add_option("--config", config_path, "JSON configuration file")->required();
    sweep->add_option("--param", param, "Parameter name (V, xi, window, antennas, max_active, ...)")->required();
    sweep->add_option("--values", values, "Comma-separated values")->required();
    sweep->add_option("--seed", seed, "Override run.seed");
    sweep->add_option("--out", out_dir, "Output directory")->capture_default_str();
    sweep->add_flag("--trace", trace, "Also write per-slot queue traces");

    auto* check = app.add_subcommand("validate", "Check a configuration without running it");
    check->add_option("--config", config_path, "JSON configuration file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageError;
    }

    try {
        SimulationConfig config = load_config(config_path);
        if (seed)
            config.run.seed = *seed;

        if (*check) {
            std::cout << config_path << ": ok\n";
            return kOk;
        }
        if (*run) {
            if (trace)
                config.run.trace = true;
            const MetricsReport report = run_simulation(config);
            write_outputs(report, out_dir, "", config.run.trace);
            print_summary("", report);
            return kOk;
        }
        if (*sweep) {
            const auto items = split_values(values);
            if (items.empty())
                throw ConfigError("--values: no values given");
            if (trace)
                config.run.trace = true;
            for (const auto& item : items) {
                double value = 0.0;
                if (!detail::parse_number(item, value))
                    throw ConfigError("--values: '" + item + "' is not a number");
                SimulationConfig variant = config;
                set_parameter(variant, param, value);
                const MetricsReport report = run_simulation(variant);
                write_outputs(report, out_dir, "_" + param + "_" + item, variant.run.trace);
                print_summary(param + "=" + item + " ", report);
            }
            return kOk;
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
    return kUsageError;
}
