#include "commands.hpp"

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dicke/analysis.hpp"
#include "dicke/detection.hpp"
#include "dicke/errors.hpp"
#include "dicke/geometry.hpp"
#include "dicke/spin.hpp"
#include "run_config.hpp"

namespace dicke::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

/// 17 significant digits: enough to round-trip any double exactly.
std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::string csv_escape(const std::string& text) {
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

RunConfig load_with_overrides(const CommandOptions& options) {
    RunConfig config = load_run_config(options.config_path);
    if (options.seed_override.has_value()) {
        config.seed = *options.seed_override;
        config.perturbation.rng_seed = config.seed;
    }
    if (options.samples_override.has_value()) {
        if (*options.samples_override == 0) {
            throw InvalidArgumentError("config: samples: must be positive");
        }
        config.num_samples = *options.samples_override;
    }
    if (options.engine_override.has_value()) {
        if (*options.engine_override == "sequential") {
            config.engine = Engine::sequential;
        } else if (*options.engine_override == "permanent") {
            config.engine = Engine::permanent;
        } else {
            throw InvalidArgumentError("config: engine: expected \"sequential\" or \"permanent\"");
        }
    }
    if (options.out_override.has_value()) config.output_dir = *options.out_override;
    return config;
}

fs::path prepare_output_dir(const RunConfig& config) {
    const fs::path dir(config.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw IoError("cannot create output directory \"" + dir.string() + "\"");
    }
    return dir;
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    out.flush();
    if (!out) throw IoError("cannot write \"" + path.string() + "\"");
}

void emit_stdout(const json& record) { std::cout << record.dump() << "\n"; }

int emit_error(int code, const std::string& kind, const std::string& message) {
    emit_stdout(json{{"error", {{"exit_code", code}, {"kind", kind}, {"message", message}}}});
    return code;
}

template <typename Fn>
int run_guarded(Fn&& body) {
    try {
        return body();
    } catch (const GeometryInfeasibleError& e) {
        return emit_error(kExitGeometryInfeasible, "geometry_infeasible", e.what());
    } catch (const ZeroNormError& e) {
        return emit_error(kExitDestructiveInterference, "destructive_interference", e.what());
    } catch (const InvalidArgumentError& e) {
        return emit_error(kExitConfigError, "config_error", e.what());
    } catch (const Error& e) {
        return emit_error(kExitConfigError, "config_error", e.what());
    } catch (const IoError& e) {
        return emit_error(kExitIoError, "io_error", e.what());
    } catch (const fs::filesystem_error& e) {
        return emit_error(kExitIoError, "io_error", e.what());
    } catch (const std::exception& e) {
        return emit_error(1, "internal_error", e.what());
    }
}

json report_to_json(const MonteCarloReport& report) {
    return json{{"num_samples", report.num_samples},
                {"num_failures", report.num_failures},
                {"mean_fidelity", report.mean_fidelity},
                {"fidelity_stddev", report.fidelity_stddev},
                {"fidelity_stderr", report.fidelity_stderr},
                {"mean_relative_rate", report.mean_relative_rate},
                {"fidelity_quantiles",
                 {{"q05", report.quantile_05}, {"q50", report.quantile_50},
                  {"q95", report.quantile_95}}},
                {"analytic_estimate", report.analytic_estimate},
                {"seed", report.seed}};
}

json witness_to_json(const WitnessVerdict& verdict) {
    return json{{"fidelity", verdict.fidelity},
                {"threshold", verdict.threshold},
                {"entangled_certified", verdict.entangled_certified}};
}

EnsembleConfig make_ensemble(const RunConfig& config) {
    if (!config.target.has_value()) {
        throw InvalidArgumentError("config: target: required for ensemble commands");
    }
    EnsembleConfig ensemble;
    ensemble.geometry = config.geometry;
    ensemble.detectors = config.resolve_detectors();
    ensemble.outcomes = config.outcome_levels();
    ensemble.perturbation = config.perturbation;
    ensemble.target = *config.target;
    ensemble.emission = config.emission;
    ensemble.num_samples = config.num_samples;
    ensemble.engine = config.engine;
    return ensemble;
}

const char* basis_convention(Interpretation interpretation) {
    return interpretation == Interpretation::atomic_qubits
               ? "each character is an emitter ground level (0 or 1), emitter 1 first"
               : "each character is the polarization of one spatial mode's photon "
                 "(0 = sigma+, 1 = sigma-), mode 1 first";
}

}  // namespace

int cmd_simulate(const CommandOptions& options) {
    return run_guarded([&]() -> int {
        const RunConfig config = load_with_overrides(options);
        const auto detectors = config.resolve_detectors();
        const PhaseMatrix phases = phase_matrix(config.geometry, detectors);
        const ProtocolResult result =
            run_protocol(config.geometry.num_emitters, phases, config.outcome_levels(),
                         config.emission, config.interpretation, config.engine);

        const fs::path dir = prepare_output_dir(config);

        std::string csv = "basis,re,im\n";
        for (const auto& [basis, amplitude] : result.final_state.amplitudes()) {
            csv += basis;
            csv += ',';
            csv += format_double(amplitude.real());
            csv += ',';
            csv += format_double(amplitude.imag());
            csv += '\n';
        }
        write_text_file(dir / "state.csv", csv);

        json summary;
        summary["command"] = "simulate";
        summary["config"] = config.echo();
        summary["result"] = {{"num_terms", result.final_state.support_size()},
                             {"squared_norm", result.squared_norm},
                             {"relative_rate", result.relative_rate},
                             {"basis_convention", basis_convention(result.interpretation)}};
        if (config.target.has_value()) {
            const EmitterState target_state = make_dicke_state(*config.target);
            summary["result"]["fidelity_vs_target"] =
                fidelity(result.final_state, target_state);
        }
        summary["outputs"] = {{"state_csv", "state.csv"}, {"summary_json", "summary.json"}};
        write_text_file(dir / "summary.json", summary.dump(2) + "\n");
        emit_stdout(summary);
        return kExitOk;
    });
}

int cmd_montecarlo(const CommandOptions& options) {
    return run_guarded([&]() -> int {
        const RunConfig config = load_with_overrides(options);
        const EnsembleConfig ensemble = make_ensemble(config);
        const MonteCarloReport report = monte_carlo_fidelity(ensemble, options.num_threads);
        const WitnessVerdict verdict =
            witness_check(report.mean_fidelity, config.witness_threshold);

        json doc;
        doc["command"] = "montecarlo";
        doc["config"] = config.echo();
        doc["report"] = report_to_json(report);
        doc["witness"] = witness_to_json(verdict);

        const fs::path dir = prepare_output_dir(config);
        write_text_file(dir / "report.json", doc.dump(2) + "\n");
        emit_stdout(doc);
        return kExitOk;
    });
}

int cmd_scan(const CommandOptions& options) {
    return run_guarded([&]() -> int {
        const RunConfig config = load_with_overrides(options);
        if (!config.scan.has_value()) {
            throw InvalidArgumentError("config: scan: required for the scan command");
        }
        const EnsembleConfig ensemble = make_ensemble(config);
        const std::vector<ScanPoint> points =
            scan_parameter(config.scan->axis, config.scan->values, ensemble,
                           options.num_threads);

        const char* axis_name = [&]() {
            switch (config.scan->axis) {
                case ScanAxis::lateral_sigma: return "lateral_sigma";
                case ScanAxis::angular_halfwidth: return "angular_halfwidth";
                case ScanAxis::spacing_error: return "spacing_error";
                case ScanAxis::wavelength: return "wavelength";
            }
            return "?";
        }();

        std::string csv =
            "value,status,num_samples,num_failures,mean_fidelity,fidelity_stddev,"
            "fidelity_stderr,mean_relative_rate,q05,q50,q95,analytic_estimate,seed,error\n";
        json point_list = json::array();
        std::size_t ok_count = 0;
        for (const ScanPoint& point : points) {
            json entry{{"value", point.value}};
            csv += format_double(point.value);
            if (point.report.has_value()) {
                ++ok_count;
                const MonteCarloReport& r = *point.report;
                csv += ",ok,";
                csv += std::to_string(r.num_samples) + ',' + std::to_string(r.num_failures);
                for (double v : {r.mean_fidelity, r.fidelity_stddev, r.fidelity_stderr,
                                 r.mean_relative_rate, r.quantile_05, r.quantile_50,
                                 r.quantile_95, r.analytic_estimate}) {
                    csv += ',';
                    csv += format_double(v);
                }
                csv += ',' + std::to_string(r.seed) + ",\n";
                entry["status"] = "ok";
                entry["report"] = report_to_json(r);
            } else {
                csv += ",error,,,,,,,,,,,," + csv_escape(point.error) + "\n";
                entry["status"] = "error";
                entry["error"] = point.error;
            }
            point_list.push_back(entry);
        }

        json doc;
        doc["command"] = "scan";
        doc["config"] = config.echo();
        doc["axis"] = axis_name;
        doc["points"] = point_list;

        const fs::path dir = prepare_output_dir(config);
        write_text_file(dir / "scan.csv", csv);
        write_text_file(dir / "scan.json", doc.dump(2) + "\n");

        if (ok_count == 0) {
            return emit_error(kExitConfigError, "scan_failed",
                              "all " + std::to_string(points.size()) +
                                  " scan points failed; see scan.json for details");
        }
        emit_stdout(json{{"command", "scan"},
                         {"axis", axis_name},
                         {"points_total", points.size()},
                         {"points_ok", ok_count},
                         {"outputs", {{"scan_csv", "scan.csv"}, {"scan_json", "scan.json"}}}});
        return kExitOk;
    });
}

}  // namespace dicke::cli
