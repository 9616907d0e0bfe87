// quenchlab: command-line front end for the quench experiments.
//
// Subcommands:
//   run              execute an experiment from a JSON config
//   validate         schema-check a config without running it
//   list-experiments print the available experiment names
//
// Exit codes: 0 success, 1 config error, 2 domain/precondition error,
// 3 numerical failure, 4 internal error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "quench/experiments.hpp"

namespace {

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw quench::ConfigError("cannot open config file '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw quench::ConfigError(std::string("config parse error: ") + e.what());
    }
}

void emit(const quench::ResultTable& table, const quench::ExperimentConfig& cfg) {
    auto write = [&](std::ostream& out) {
        if (cfg.format == quench::OutputFormat::Json) {
            quench::write_json(table, out);
        } else {
            quench::write_csv(table, out);
        }
    };
    if (cfg.output.empty()) {
        write(std::cout);
        return;
    }
    std::ofstream out(cfg.output);
    if (!out) throw std::runtime_error("cannot open output file '" + cfg.output + "'");
    write(out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quenchlab: numerical experiments for sweeps through quantum phase transitions"};
    app.require_subcommand(1);

    std::string config_path, out_path, format_name;
    std::uint64_t seed_override = 0;
    unsigned threads_override = 0;
    bool seed_given = false;

    auto* run = app.add_subcommand("run", "execute an experiment from a JSON config");
    run->add_option("--config", config_path, "JSON config file")->required();
    auto* seed_opt = run->add_option("--seed", seed_override, "override the config seed");
    run->add_option("--out", out_path, "output path (default: config 'output' or stdout)");
    run->add_option("--format", format_name, "csv or json (overrides the config)");
    run->add_option("--threads", threads_override, "worker threads (overrides the config)");

    auto* validate = app.add_subcommand("validate", "schema-check a config without running");
    validate->add_option("--config", config_path, "JSON config file")->required();

    app.add_subcommand("list-experiments", "print the available experiment names");

    CLI11_PARSE(app, argc, argv);
    seed_given = seed_opt->count() > 0;

    try {
        if (app.got_subcommand("list-experiments")) {
            for (const auto& name : quench::list_experiments()) std::cout << name << "\n";
            return 0;
        }
        const nlohmann::json doc = load_json(config_path);
        if (app.got_subcommand("validate")) {
            const auto report = quench::validate_config(doc);
            for (const auto& w : report.warnings) std::cout << "warning: " << w << "\n";
            for (const auto& e : report.errors) std::cout << "error: " << e << "\n";
            std::cout << (report.ok() ? "ok" : "invalid") << "\n";
            return report.ok() ? 0 : 1;
        }

        quench::ExperimentConfig cfg = quench::parse_config(doc);
        if (seed_given) cfg.seed = seed_override;
        if (!out_path.empty()) cfg.output = out_path;
        if (!format_name.empty()) {
            if (format_name == "csv") {
                cfg.format = quench::OutputFormat::Csv;
            } else if (format_name == "json") {
                cfg.format = quench::OutputFormat::Json;
            } else {
                throw quench::ConfigError("--format: expected 'csv' or 'json'");
            }
        }
        if (threads_override > 0) cfg.threads = threads_override;

        const quench::ResultTable table = quench::run_experiment(cfg);
        emit(table, cfg);
        return 0;
    } catch (const quench::ConfigError& e) {
        std::cerr << "error [config]: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error [domain]: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error [numerics]: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error [internal]: " << e.what() << "\n";
        return 4;
    }
}
