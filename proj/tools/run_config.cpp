#include "run_config.hpp"

#include <complex>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <string>

#include "dicke/errors.hpp"

namespace dicke::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& context, const std::string& what) {
    throw InvalidArgumentError("config: " + context + ": " + what);
}

void check_keys(const json& obj, const std::string& context,
                std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) fail(context, "expected an object");
    const std::set<std::string> allowed_set(allowed.begin(), allowed.end());
    for (const auto& item : obj.items()) {
        if (!allowed_set.contains(item.key())) {
            fail(context, "unknown key \"" + item.key() + "\"");
        }
    }
}

double get_number(const json& obj, const std::string& context, const char* key) {
    if (!obj.contains(key)) fail(context, std::string("missing key \"") + key + "\"");
    const json& v = obj.at(key);
    if (!v.is_number()) fail(context + "." + key, "expected a number");
    return v.get<double>();
}

double get_number_or(const json& obj, const std::string& context, const char* key,
                     double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) fail(context + "." + key, "expected a number");
    return v.get<double>();
}

int get_int(const json& obj, const std::string& context, const char* key) {
    if (!obj.contains(key)) fail(context, std::string("missing key \"") + key + "\"");
    const json& v = obj.at(key);
    if (!v.is_number_integer()) fail(context + "." + key, "expected an integer");
    return v.get<int>();
}

std::uint64_t get_uint64_or(const json& obj, const std::string& context, const char* key,
                            std::uint64_t fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        fail(context + "." + key, "expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

std::string get_string(const json& obj, const std::string& context, const char* key) {
    if (!obj.contains(key)) fail(context, std::string("missing key \"") + key + "\"");
    const json& v = obj.at(key);
    if (!v.is_string()) fail(context + "." + key, "expected a string");
    return v.get<std::string>();
}

std::vector<double> get_number_array(const json& v, const std::string& context) {
    if (!v.is_array()) fail(context, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_number()) fail(context, "expected an array of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

Distribution parse_distribution(const std::string& name, const std::string& context) {
    if (name == "gaussian") return Distribution::gaussian;
    if (name == "uniform") return Distribution::uniform;
    fail(context, "expected \"gaussian\" or \"uniform\", got \"" + name + "\"");
}

const char* distribution_name(Distribution d) {
    return d == Distribution::gaussian ? "gaussian" : "uniform";
}

std::complex<double> parse_complex(const json& v, const std::string& context) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        return {v[0].get<double>(), v[1].get<double>()};
    }
    fail(context, "expected a number or a [re, im] pair");
}

json complex_to_json(const std::complex<double>& z) {
    return json::array({z.real(), z.imag()});
}

ChainGeometry parse_geometry(const json& obj) {
    check_keys(obj, "geometry", {"num_emitters", "spacing", "wavelength"});
    ChainGeometry g;
    g.num_emitters = get_int(obj, "geometry", "num_emitters");
    g.spacing = get_number(obj, "geometry", "spacing");
    g.wavelength = get_number_or(obj, "geometry", "wavelength", ChainGeometry{}.wavelength);
    g.validate();
    return g;
}

void parse_detectors(const json& obj, RunConfig& config) {
    check_keys(obj, "detectors", {"mode", "values"});
    const std::string mode = get_string(obj, "detectors", "mode");
    if (mode == "dicke_angles") {
        config.detector_mode = DetectorMode::dicke_angles;
        if (obj.contains("values")) {
            fail("detectors", "\"values\" is not accepted in dicke_angles mode");
        }
        return;
    }
    if (mode == "angles") {
        config.detector_mode = DetectorMode::angles;
    } else if (mode == "exact_phases") {
        config.detector_mode = DetectorMode::exact_phases;
    } else {
        fail("detectors.mode",
             "expected \"dicke_angles\", \"angles\" or \"exact_phases\", got \"" + mode + "\"");
    }
    if (!obj.contains("values")) fail("detectors", "missing key \"values\"");
    config.detector_values = get_number_array(obj.at("values"), "detectors.values");
}

std::vector<Polarizer> parse_polarizers(const json& v) {
    if (!v.is_array()) fail("polarizers", "expected an array of \"+\"/\"-\" strings");
    std::vector<Polarizer> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_string()) fail("polarizers", "expected an array of \"+\"/\"-\" strings");
        const std::string s = e.get<std::string>();
        if (s == "+" || s == "sigma+") {
            out.push_back(Polarizer::sigma_plus);
        } else if (s == "-" || s == "sigma-") {
            out.push_back(Polarizer::sigma_minus);
        } else {
            fail("polarizers", "expected \"+\" or \"-\", got \"" + s + "\"");
        }
    }
    return out;
}

EmissionModel parse_emission(const json& obj) {
    check_keys(obj, "emission", {"c0", "c1"});
    if (!obj.contains("c0") && !obj.contains("c1")) return EmissionModel{};
    if (!obj.contains("c0") || !obj.contains("c1")) {
        fail("emission", "c0 and c1 must be given together");
    }
    return EmissionModel{parse_complex(obj.at("c0"), "emission.c0"),
                         parse_complex(obj.at("c1"), "emission.c1")};
}

PerturbationSpec parse_perturbation(const json& obj) {
    check_keys(obj, "perturbation",
               {"lateral_sigma", "lateral_distribution", "axial_sigma", "axial_distribution",
                "angular_halfwidth", "angular_distribution"});
    PerturbationSpec p;
    p.lateral_sigma = get_number_or(obj, "perturbation", "lateral_sigma", 0.0);
    p.axial_sigma = get_number_or(obj, "perturbation", "axial_sigma", 0.0);
    p.angular_halfwidth = get_number_or(obj, "perturbation", "angular_halfwidth", 0.0);
    if (obj.contains("lateral_distribution")) {
        p.lateral_distribution = parse_distribution(
            get_string(obj, "perturbation", "lateral_distribution"),
            "perturbation.lateral_distribution");
    }
    if (obj.contains("axial_distribution")) {
        p.axial_distribution = parse_distribution(
            get_string(obj, "perturbation", "axial_distribution"),
            "perturbation.axial_distribution");
    }
    if (obj.contains("angular_distribution")) {
        p.angular_distribution = parse_distribution(
            get_string(obj, "perturbation", "angular_distribution"),
            "perturbation.angular_distribution");
    }
    p.validate();
    return p;
}

DickeTarget parse_target(const json& obj) {
    check_keys(obj, "target", {"num_qubits", "spin_projection_times_two"});
    DickeTarget t;
    t.num_qubits = get_int(obj, "target", "num_qubits");
    t.spin_projection_times_two = get_int(obj, "target", "spin_projection_times_two");
    t.validate();
    return t;
}

ScanSpec parse_scan(const json& obj) {
    check_keys(obj, "scan", {"axis", "values"});
    ScanSpec s;
    const std::string axis = get_string(obj, "scan", "axis");
    if (axis == "lateral_sigma") {
        s.axis = ScanAxis::lateral_sigma;
    } else if (axis == "angular_halfwidth") {
        s.axis = ScanAxis::angular_halfwidth;
    } else if (axis == "spacing_error") {
        s.axis = ScanAxis::spacing_error;
    } else if (axis == "wavelength") {
        s.axis = ScanAxis::wavelength;
    } else {
        fail("scan.axis",
             "expected \"lateral_sigma\", \"angular_halfwidth\", \"spacing_error\" or "
             "\"wavelength\", got \"" + axis + "\"");
    }
    if (!obj.contains("values")) fail("scan", "missing key \"values\"");
    s.values = get_number_array(obj.at("values"), "scan.values");
    if (s.values.empty()) fail("scan.values", "must not be empty");
    return s;
}

const char* scan_axis_name(ScanAxis axis) {
    switch (axis) {
        case ScanAxis::lateral_sigma: return "lateral_sigma";
        case ScanAxis::angular_halfwidth: return "angular_halfwidth";
        case ScanAxis::spacing_error: return "spacing_error";
        case ScanAxis::wavelength: return "wavelength";
    }
    return "?";
}

}  // namespace

std::vector<DetectorSpec> RunConfig::resolve_detectors() const {
    std::vector<DetectorSpec> out;
    const auto n = polarizers.size();
    switch (detector_mode) {
        case DetectorMode::dicke_angles: {
            const auto angles = dicke_detector_angles(geometry, static_cast<int>(n));
            out.reserve(n);
            for (std::size_t i = 0; i < n; ++i) {
                out.push_back(DetectorSpec::from_angle(angles[i], polarizers[i]));
            }
            break;
        }
        case DetectorMode::angles:
            out.reserve(n);
            for (std::size_t i = 0; i < n; ++i) {
                out.push_back(DetectorSpec::from_angle(detector_values[i], polarizers[i]));
            }
            break;
        case DetectorMode::exact_phases:
            out.reserve(n);
            for (std::size_t i = 0; i < n; ++i) {
                out.push_back(DetectorSpec::with_exact_phase(detector_values[i], polarizers[i]));
            }
            break;
    }
    return out;
}

std::vector<Level> RunConfig::outcome_levels() const {
    std::vector<Level> out;
    out.reserve(polarizers.size());
    for (Polarizer p : polarizers) out.push_back(to_level(p));
    return out;
}

nlohmann::json RunConfig::echo() const {
    json root;
    root["geometry"] = {{"num_emitters", geometry.num_emitters},
                        {"spacing", geometry.spacing},
                        {"wavelength", geometry.wavelength}};
    json detectors;
    switch (detector_mode) {
        case DetectorMode::dicke_angles:
            detectors["mode"] = "dicke_angles";
            break;
        case DetectorMode::angles:
            detectors["mode"] = "angles";
            detectors["values"] = detector_values;
            break;
        case DetectorMode::exact_phases:
            detectors["mode"] = "exact_phases";
            detectors["values"] = detector_values;
            break;
    }
    root["detectors"] = detectors;
    json pols = json::array();
    for (Polarizer p : polarizers) pols.push_back(p == Polarizer::sigma_plus ? "+" : "-");
    root["polarizers"] = pols;
    root["emission"] = {{"c0", complex_to_json(emission.c0())},
                        {"c1", complex_to_json(emission.c1())}};
    root["perturbation"] = {
        {"lateral_sigma", perturbation.lateral_sigma},
        {"lateral_distribution", distribution_name(perturbation.lateral_distribution)},
        {"axial_sigma", perturbation.axial_sigma},
        {"axial_distribution", distribution_name(perturbation.axial_distribution)},
        {"angular_halfwidth", perturbation.angular_halfwidth},
        {"angular_distribution", distribution_name(perturbation.angular_distribution)}};
    if (target.has_value()) {
        root["target"] = {{"num_qubits", target->num_qubits},
                          {"spin_projection_times_two", target->spin_projection_times_two}};
    }
    root["samples"] = num_samples;
    root["seed"] = seed;
    root["interpretation"] = interpretation == Interpretation::atomic_qubits
                                 ? "atomic_qubits"
                                 : "photonic_polarization_qubits";
    root["engine"] = engine == Engine::sequential ? "sequential" : "permanent";
    root["witness_threshold"] = witness_threshold;
    if (scan.has_value()) {
        root["scan"] = {{"axis", scan_axis_name(scan->axis)}, {"values", scan->values}};
    }
    return root;
}

RunConfig parse_run_config(const json& root) {
    check_keys(root, "top level",
               {"geometry", "detectors", "polarizers", "emission", "perturbation", "target",
                "samples", "seed", "interpretation", "engine", "witness_threshold", "scan",
                "output_dir"});
    RunConfig config;

    if (!root.contains("geometry")) fail("top level", "missing key \"geometry\"");
    config.geometry = parse_geometry(root.at("geometry"));

    if (root.contains("detectors")) parse_detectors(root.at("detectors"), config);

    if (!root.contains("polarizers")) fail("top level", "missing key \"polarizers\"");
    config.polarizers = parse_polarizers(root.at("polarizers"));
    if (config.polarizers.empty()) fail("polarizers", "must not be empty");
    if (config.polarizers.size() != static_cast<std::size_t>(config.geometry.num_emitters)) {
        fail("polarizers", "need exactly one entry per emitter");
    }
    if (config.detector_mode != DetectorMode::dicke_angles &&
        config.detector_values.size() != config.polarizers.size()) {
        fail("detectors.values", "need exactly one entry per detector");
    }

    if (root.contains("emission")) config.emission = parse_emission(root.at("emission"));
    if (root.contains("perturbation")) {
        config.perturbation = parse_perturbation(root.at("perturbation"));
    }
    if (root.contains("target")) config.target = parse_target(root.at("target"));

    config.num_samples = get_uint64_or(root, "top level", "samples", config.num_samples);
    if (config.num_samples == 0) fail("samples", "must be positive");
    config.seed = get_uint64_or(root, "top level", "seed", config.seed);
    config.perturbation.rng_seed = config.seed;

    if (root.contains("interpretation")) {
        const std::string s = get_string(root, "top level", "interpretation");
        if (s == "atomic_qubits") {
            config.interpretation = Interpretation::atomic_qubits;
        } else if (s == "photonic_polarization_qubits") {
            config.interpretation = Interpretation::photonic_polarization_qubits;
        } else {
            fail("interpretation",
                 "expected \"atomic_qubits\" or \"photonic_polarization_qubits\", got \"" + s +
                     "\"");
        }
    }
    if (root.contains("engine")) {
        const std::string s = get_string(root, "top level", "engine");
        if (s == "sequential") {
            config.engine = Engine::sequential;
        } else if (s == "permanent") {
            config.engine = Engine::permanent;
        } else {
            fail("engine", "expected \"sequential\" or \"permanent\", got \"" + s + "\"");
        }
    }
    config.witness_threshold =
        get_number_or(root, "top level", "witness_threshold", config.witness_threshold);
    if (!(config.witness_threshold > 0.0 && config.witness_threshold < 1.0)) {
        fail("witness_threshold", "must lie strictly between 0 and 1");
    }
    if (root.contains("scan")) config.scan = parse_scan(root.at("scan"));
    if (root.contains("output_dir")) {
        config.output_dir = get_string(root, "top level", "output_dir");
        if (config.output_dir.empty()) fail("output_dir", "must not be empty");
    }

    // Cross-field checks that do not need detector resolution.
    if (config.target.has_value()) {
        if (config.target->num_qubits != config.geometry.num_emitters) {
            fail("target.num_qubits", "must equal geometry.num_emitters");
        }
        int minus_count = 0;
        for (Polarizer p : config.polarizers) {
            if (p == Polarizer::sigma_minus) ++minus_count;
        }
        if (config.target->ones_count() != minus_count) {
            fail("target", "spin projection is incompatible with the polarizer pattern");
        }
    }
    return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidArgumentError("config: cannot open \"" + path.string() + "\"");
    }
    json root;
    try {
        root = json::parse(in);
    } catch (const json::exception& e) {
        throw InvalidArgumentError("config: \"" + path.string() + "\" is not valid JSON: " +
                                   e.what());
    }
    return parse_run_config(root);
}

}  // namespace dicke::cli
