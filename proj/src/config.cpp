#include "risnoma/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "risnoma/errors.hpp"

namespace risnoma {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key, "expected a number, got '" + text + "'");
    }
}

int parse_int(const std::string& key, const std::string& text) {
    const double v = parse_double(key, text);
    if (v != std::floor(v)) throw ConfigError(key, "expected an integer");
    return static_cast<int>(v);
}

std::uint64_t parse_u64(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const std::uint64_t v = std::stoull(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key, "expected a non-negative integer");
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

Position parse_position(const std::string& key, const std::string& text) {
    std::istringstream is(text);
    Position p;
    if (!(is >> p.x >> p.y >> p.z)) throw ConfigError(key, "expected 'x y z'");
    std::string rest;
    if (is >> rest) throw ConfigError(key, "expected exactly three coordinates");
    return p;
}

void apply_sim_key(SimConfig& sim, const std::string& key, const std::string& value) {
    if (key == "U") sim.U = parse_int(key, value);
    else if (key == "A") sim.A = parse_int(key, value);
    else if (key == "R") sim.R = parse_int(key, value);
    else if (key == "p_dbm") sim.p_dbm = parse_double(key, value);
    else if (key == "P_watts") sim.P_watts = parse_double(key, value);
    else if (key == "beta0") sim.beta0 = parse_double(key, value);
    else if (key == "f_c") sim.f_c = parse_double(key, value);
    else if (key == "c") sim.c = parse_double(key, value);
    else if (key == "bandwidth") sim.bandwidth = parse_double(key, value);
    else if (key == "sigma2_zeta_dbm") sim.sigma2_zeta_dbm = parse_double(key, value);
    else if (key == "N0_dbm") sim.N0_dbm = parse_double(key, value);
    else if (key == "gamma_th_ue_db") sim.gamma_th_ue_db = parse_double(key, value);
    else if (key == "gamma_th_uav_db") sim.gamma_th_uav_db = parse_double(key, value);
    else if (key == "gamma_th_ris_db") sim.gamma_th_ris_db = parse_double(key, value);
    else if (key == "R_ur") sim.R_ur = parse_double(key, value);
    else if (key == "R_ra") sim.R_ra = parse_double(key, value);
    else if (key == "tau") sim.tau = parse_double(key, value);
    else if (key == "f1") sim.f1 = parse_double(key, value);
    else if (key == "f2") sim.f2 = parse_double(key, value);
    else if (key == "f_u") sim.f_u = parse_double(key, value);
    else if (key == "spread") sim.spread = parse_double(key, value);
    else if (key == "K") sim.K = parse_int(key, value);
    else if (key == "U_r") sim.U_r = parse_int(key, value);
    else if (key == "phase_bits") sim.phase_bits = parse_int(key, value);
    else if (key == "delta") sim.delta = parse_double(key, value);
    else if (key == "max_iters") sim.max_iters = parse_int(key, value);
    else if (key == "sigma2_e_ua") sim.sigma2_e_ua = parse_double(key, value);
    else if (key == "sigma2_e_ura") sim.sigma2_e_ura = parse_double(key, value);
    else if (key == "area_side") sim.area_side = parse_double(key, value);
    else if (key == "uav_altitude") sim.uav_altitude = parse_double(key, value);
    else if (key == "ris_altitude") sim.ris_altitude = parse_double(key, value);
    else if (key == "seed") sim.seed = parse_u64(key, value);
    else if (key == "trials") sim.trials = parse_int(key, value);
    else if (key == "weight_unit") {
        if (value == "db") sim.weight_unit = WeightUnit::db;
        else if (value == "linear") sim.weight_unit = WeightUnit::linear;
        else throw ConfigError(key, "expected db|linear");
    } else if (key == "pathloss_model") {
        if (value == "beta0") sim.pathloss = PathlossModel::reference_beta0;
        else if (value == "exponent") sim.pathloss = PathlossModel::exponent_only;
        else throw ConfigError(key, "expected beta0|exponent");
    } else if (key == "reliability_mode") {
        if (value == "normalized") sim.reliability_mode = ReliabilityMode::normalized;
        else if (value == "raw") sim.reliability_mode = ReliabilityMode::raw;
        else throw ConfigError(key, "expected normalized|raw");
    } else if (key == "sinr_mode") {
        if (value == "sic") sim.sinr_mode = InterferenceMode::sic;
        else if (value == "full") sim.sinr_mode = InterferenceMode::full_cluster;
        else throw ConfigError(key, "expected sic|full");
    } else {
        throw ConfigError(key, "unknown key in [sim]");
    }
}

} // namespace

std::vector<double> expand_sweep_values(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3) throw ConfigError("values", "expected lo:step:hi");
        const double lo = parse_double("values", parts[0]);
        const double step = parse_double("values", parts[1]);
        const double hi = parse_double("values", parts[2]);
        if (step <= 0.0 || hi < lo) throw ConfigError("values", "bad range");
        for (double v = lo; v <= hi + 1e-9 * step; v += step) out.push_back(v);
        return out;
    }
    for (const auto& piece : split(text, ',')) {
        if (!piece.empty()) out.push_back(parse_double("values", piece));
    }
    if (out.empty()) throw ConfigError("values", "empty sweep");
    return out;
}

RunSpec parse_config(std::istream& in) {
    RunSpec spec;
    std::string section = "sim";
    std::string line;
    int lineno = 0;
    bool scenario_seen = false;

    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError(lineno, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "sim" && section != "sweep" && section != "scenario" &&
                section != "run")
                throw ParseError(lineno, "unknown section [" + section + "]");
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(lineno, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError(lineno, "empty key");

        if (section == "sim") {
            apply_sim_key(spec.sim, key, value);
        } else if (section == "sweep") {
            if (key == "param") spec.sweep.param = value;
            else if (key == "values") spec.sweep.values = expand_sweep_values(value);
            else throw ConfigError(key, "unknown key in [sweep]");
        } else if (section == "scenario") {
            scenario_seen = true;
            if (key == "ue") spec.sim.scenario.ues.push_back(parse_position(key, value));
            else if (key == "uav") spec.sim.scenario.uavs.push_back(parse_position(key, value));
            else if (key == "ris") spec.sim.scenario.riss.push_back(parse_position(key, value));
            else if (key == "blocked") {
                std::istringstream is(value);
                int u = -1, a = -1;
                if (!(is >> u >> a)) throw ConfigError(key, "expected 'ue_index uav_index'");
                spec.sim.scenario.blocked.emplace_back(u, a);
            } else {
                throw ConfigError(key, "unknown key in [scenario]");
            }
        } else { // run
            if (key == "schemes") {
                spec.schemes.clear();
                for (const auto& s : split(value, ',')) {
                    if (s.empty()) continue;
                    if (!scheme_from_name(s)) throw ConfigError(key, "unknown scheme '" + s + "'");
                    spec.schemes.push_back(s);
                }
                if (spec.schemes.empty()) throw ConfigError(key, "empty scheme list");
            } else if (key == "timing") {
                if (value == "on") spec.timing = true;
                else if (value == "off") spec.timing = false;
                else throw ConfigError(key, "expected on|off");
            } else if (key == "threads") {
                spec.threads = parse_int(key, value);
            } else if (key == "preset") {
                spec.preset = value;
            } else {
                throw ConfigError(key, "unknown key in [run]");
            }
        }
    }

    if (scenario_seen) {
        spec.sim.scenario.active = true;
        spec.sim.U = static_cast<int>(spec.sim.scenario.ues.size());
        spec.sim.A = static_cast<int>(spec.sim.scenario.uavs.size());
        spec.sim.R = static_cast<int>(spec.sim.scenario.riss.size());
    }
    validate(spec.sim);
    if (spec.sweep.param != "none" && !spec.sweep.param.empty() && !spec.is_resilience()) {
        if (spec.sweep.values.empty()) throw ConfigError("values", "sweep has no values");
        apply_sweep_value(spec.sim, spec.sweep.param, spec.sweep.values.front()); // key check
    }
    return spec;
}

RunSpec parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    return parse_config(in);
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string serialize_manifest(const RunSpec& spec) {
    const SimConfig& s = spec.sim;
    std::ostringstream os;
    os << "# risnoma run manifest (build " << RISNOMA_VERSION << ")\n";
    os << "[sim]\n";
    os << "U = " << s.U << "\nA = " << s.A << "\nR = " << s.R << '\n';
    os << "p_dbm = " << fmt_double(s.p_dbm) << '\n';
    os << "P_watts = " << fmt_double(s.P_watts) << '\n';
    os << "beta0 = " << fmt_double(s.beta0) << '\n';
    os << "f_c = " << fmt_double(s.f_c) << '\n';
    os << "c = " << fmt_double(s.c) << '\n';
    os << "bandwidth = " << fmt_double(s.bandwidth) << '\n';
    os << "sigma2_zeta_dbm = " << fmt_double(s.sigma2_zeta_dbm) << '\n';
    os << "N0_dbm = " << fmt_double(s.N0_dbm) << '\n';
    os << "gamma_th_ue_db = " << fmt_double(s.gamma_th_ue_db) << '\n';
    os << "gamma_th_uav_db = " << fmt_double(s.gamma_th_uav_db) << '\n';
    os << "gamma_th_ris_db = " << fmt_double(s.gamma_th_ris_db) << '\n';
    os << "R_ur = " << fmt_double(s.R_ur) << '\n';
    os << "R_ra = " << fmt_double(s.R_ra) << '\n';
    os << "tau = " << fmt_double(s.tau) << '\n';
    os << "f1 = " << fmt_double(s.f1) << '\n';
    os << "f2 = " << fmt_double(s.f2) << '\n';
    os << "f_u = " << fmt_double(s.f_u) << '\n';
    os << "spread = " << fmt_double(s.spread) << '\n';
    os << "K = " << s.K << '\n';
    os << "U_r = " << s.U_r << '\n';
    os << "phase_bits = " << s.phase_bits << '\n';
    os << "delta = " << fmt_double(s.delta) << '\n';
    os << "max_iters = " << s.max_iters << '\n';
    os << "sigma2_e_ua = " << fmt_double(s.sigma2_e_ua) << '\n';
    os << "sigma2_e_ura = " << fmt_double(s.sigma2_e_ura) << '\n';
    os << "area_side = " << fmt_double(s.area_side) << '\n';
    os << "uav_altitude = " << fmt_double(s.uav_altitude) << '\n';
    os << "ris_altitude = " << fmt_double(s.ris_altitude) << '\n';
    os << "seed = " << s.seed << '\n';
    os << "trials = " << s.trials << '\n';
    os << "weight_unit = " << (s.weight_unit == WeightUnit::db ? "db" : "linear") << '\n';
    os << "pathloss_model = "
       << (s.pathloss == PathlossModel::reference_beta0 ? "beta0" : "exponent") << '\n';
    os << "reliability_mode = "
       << (s.reliability_mode == ReliabilityMode::normalized ? "normalized" : "raw") << '\n';
    os << "sinr_mode = " << (s.sinr_mode == InterferenceMode::sic ? "sic" : "full") << '\n';

    if (s.scenario.active) {
        os << "\n[scenario]\n";
        for (const auto& p : s.scenario.ues)
            os << "ue = " << fmt_double(p.x) << ' ' << fmt_double(p.y) << ' ' << fmt_double(p.z)
               << '\n';
        for (const auto& p : s.scenario.uavs)
            os << "uav = " << fmt_double(p.x) << ' ' << fmt_double(p.y) << ' ' << fmt_double(p.z)
               << '\n';
        for (const auto& p : s.scenario.riss)
            os << "ris = " << fmt_double(p.x) << ' ' << fmt_double(p.y) << ' ' << fmt_double(p.z)
               << '\n';
        for (const auto& [u, a] : s.scenario.blocked) os << "blocked = " << u << ' ' << a << '\n';
    }

    os << "\n[sweep]\n";
    os << "param = " << (spec.sweep.param.empty() ? "none" : spec.sweep.param) << '\n';
    if (!spec.sweep.values.empty()) {
        os << "values = ";
        for (std::size_t i = 0; i < spec.sweep.values.size(); ++i) {
            os << fmt_double(spec.sweep.values[i])
               << (i + 1 == spec.sweep.values.size() ? "\n" : ",");
        }
    }

    os << "\n[run]\n";
    os << "schemes = ";
    for (std::size_t i = 0; i < spec.schemes.size(); ++i)
        os << spec.schemes[i] << (i + 1 == spec.schemes.size() ? "\n" : ",");
    os << "timing = " << (spec.timing ? "on" : "off") << '\n';
    os << "threads = " << spec.threads << '\n';
    if (!spec.preset.empty()) os << "preset = " << spec.preset << '\n';
    return os.str();
}

void write_manifest(const RunSpec& spec, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write manifest: " + path);
    out << serialize_manifest(spec);
    if (!out) throw IoError("manifest write failed: " + path);
}

} // namespace risnoma
