#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

int threads_from_env() {
    const char* raw = std::getenv("DICKESIM_THREADS");
    if (raw == nullptr || *raw == '\0') return 0;
    char* end = nullptr;
    const long parsed = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || parsed < 0) {
        std::cerr << "warning: ignoring invalid DICKESIM_THREADS=\"" << raw << "\"\n";
        return 0;
    }
    return static_cast<int>(parsed);
}

void add_common_options(CLI::App* cmd, dicke::cli::CommandOptions& options,
                        std::optional<std::uint64_t>& seed,
                        std::optional<std::uint64_t>& samples,
                        std::optional<std::string>& engine,
                        std::optional<std::string>& out) {
    cmd->add_option("-c,--config", options.config_path, "Run configuration file (JSON)")
        ->required();
    cmd->add_option("--seed", seed, "Override the perturbation RNG seed");
    cmd->add_option("--samples", samples, "Override the Monte Carlo sample count");
    cmd->add_option("--engine", engine, "Override the amplitude engine")
        ->check(CLI::IsMember({"sequential", "permanent"}));
    cmd->add_option("-o,--out", out, "Override the output directory");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "dickesim: heralded preparation of symmetric Dicke states from a chain of "
        "lambda-type emitters, with Monte Carlo error propagation"};
    app.require_subcommand(1);

    dicke::cli::CommandOptions options;
    options.num_threads = threads_from_env();
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> samples;
    std::optional<std::string> engine;
    std::optional<std::string> out;

    CLI::App* simulate = app.add_subcommand(
        "simulate", "Run the heralding protocol once at the nominal geometry");
    CLI::App* montecarlo = app.add_subcommand(
        "montecarlo", "Propagate geometric uncertainty through a sampled ensemble");
    CLI::App* scan = app.add_subcommand(
        "scan", "Sweep one error parameter, one Monte Carlo ensemble per value");
    for (CLI::App* cmd : {simulate, montecarlo, scan}) {
        add_common_options(cmd, options, seed, samples, engine, out);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return dicke::cli::kExitConfigError;
    }

    options.seed_override = seed;
    options.samples_override = samples;
    options.engine_override = engine;
    options.out_override = out;

    if (simulate->parsed()) return dicke::cli::cmd_simulate(options);
    if (montecarlo->parsed()) return dicke::cli::cmd_montecarlo(options);
    return dicke::cli::cmd_scan(options);
}
