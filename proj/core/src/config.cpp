#include "soliton/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "soliton/report.hpp"

namespace soliton {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

/// Sections and raw key -> value text, with consumption tracking so unknown
/// keys can be reported with their full path.
class RawConfig {
public:
    void set(const std::string& sec, const std::string& key, const std::string& val,
             int line) {
        auto& entry = data_[sec][key];
        if (!entry.value.empty() || entry.line > 0)
            throw ConfigError("[" + sec + "]." + key + ": duplicate key (line " +
                              std::to_string(line) + ")");
        entry.value = val;
        entry.line = line;
    }

    bool has_section(const std::string& sec) const { return data_.count(sec) > 0; }
    bool has(const std::string& sec, const std::string& key) const {
        auto it = data_.find(sec);
        return it != data_.end() && it->second.count(key) > 0;
    }

    std::string raw(const std::string& sec, const std::string& key) {
        auto it = data_.find(sec);
        if (it == data_.end() || !it->second.count(key))
            throw ConfigError("[" + sec + "]." + key + ": missing required key");
        it->second[key].consumed = true;
        return it->second[key].value;
    }

    double number(const std::string& sec, const std::string& key) {
        std::string v = raw(sec, key);
        char* end = nullptr;
        double out = std::strtod(v.c_str(), &end);
        if (end == v.c_str() || *end != '\0')
            throw ConfigError("[" + sec + "]." + key + ": expected a number, got '" + v + "'");
        return out;
    }

    double number_or(const std::string& sec, const std::string& key, double def) {
        return has(sec, key) ? number(sec, key) : def;
    }

    int integer(const std::string& sec, const std::string& key) {
        double v = number(sec, key);
        int i = static_cast<int>(v);
        if (static_cast<double>(i) != v)
            throw ConfigError("[" + sec + "]." + key + ": expected an integer");
        return i;
    }

    int integer_or(const std::string& sec, const std::string& key, int def) {
        return has(sec, key) ? integer(sec, key) : def;
    }

    std::string text(const std::string& sec, const std::string& key) { return raw(sec, key); }

    std::string text_or(const std::string& sec, const std::string& key,
                        const std::string& def) {
        return has(sec, key) ? raw(sec, key) : def;
    }

    bool boolean_or(const std::string& sec, const std::string& key, bool def) {
        if (!has(sec, key)) return def;
        std::string v = raw(sec, key);
        if (v == "true" || v == "1") return true;
        if (v == "false" || v == "0") return false;
        throw ConfigError("[" + sec + "]." + key + ": expected true or false, got '" + v + "'");
    }

    std::vector<double> numbers(const std::string& sec, const std::string& key) {
        std::string v = raw(sec, key);
        if (v.size() < 2 || v.front() != '[' || v.back() != ']')
            throw ConfigError("[" + sec + "]." + key + ": expected an array like [1, 0, 0]");
        std::vector<double> out;
        std::string body = v.substr(1, v.size() - 2);
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty())
                throw ConfigError("[" + sec + "]." + key + ": empty array element");
            char* end = nullptr;
            out.push_back(std::strtod(item.c_str(), &end));
            if (end == item.c_str() || *end != '\0')
                throw ConfigError("[" + sec + "]." + key + ": bad array element '" + item + "'");
        }
        if (out.empty())
            throw ConfigError("[" + sec + "]." + key + ": array must not be empty");
        return out;
    }

    void reject_section(const std::string& sec, const std::string& why) const {
        if (has_section(sec)) throw ConfigError("[" + sec + "]: " + why);
    }

    void finish() const {
        for (const auto& [sec, keys] : data_)
            for (const auto& [key, entry] : keys)
                if (!entry.consumed)
                    throw ConfigError("[" + sec + "]." + key + ": unknown key (line " +
                                      std::to_string(entry.line) + ")");
    }

private:
    struct Entry {
        std::string value;
        int line = 0;
        mutable bool consumed = false;
    };
    std::map<std::string, std::map<std::string, Entry>> data_;
};

RawConfig tokenize(const std::string& text) {
    RawConfig raw;
    std::stringstream ss(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw ConfigError("line " + std::to_string(lineno) + ": empty section name");
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        if (section.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": key outside any section");
        raw.set(section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), lineno);
    }
    return raw;
}

Branch branch_from_string(const std::string& s) {
    if (s == "plus") return Branch::plus;
    if (s == "minus") return Branch::minus;
    throw ConfigError("[family].branch: expected plus or minus, got '" + s + "'");
}

void read_common_sections(RawConfig& raw, RunConfig& rc) {
    if (raw.has_section("grid")) {
        rc.grid.xi_min = raw.number_or("grid", "xi_min", rc.grid.xi_min);
        rc.grid.xi_max = raw.number_or("grid", "xi_max", rc.grid.xi_max);
        rc.grid.samples = raw.integer_or("grid", "samples", rc.grid.samples);
        rc.grid.base_points = raw.integer_or("grid", "base_points", rc.grid.base_points);
        rc.grid.seed = static_cast<unsigned>(raw.integer_or("grid", "seed",
                                                            static_cast<int>(rc.grid.seed)));
    }
    if (raw.has_section("tolerances")) {
        rc.tol.ode = raw.number_or("tolerances", "ode", rc.tol.ode);
        rc.tol.ode_numeric = raw.number_or("tolerances", "ode_numeric", rc.tol.ode_numeric);
        rc.tol.pde = raw.number_or("tolerances", "pde", rc.tol.pde);
        rc.tol.oracle = raw.number_or("tolerances", "oracle", rc.tol.oracle);
    }
    if (raw.has_section("oracle")) {
        rc.oracle.enabled = raw.boolean_or("oracle", "enabled", rc.oracle.enabled);
        rc.oracle.fd_step = raw.number_or("oracle", "fd_step", rc.oracle.fd_step);
        rc.oracle.fd_order = raw.integer_or("oracle", "fd_order", rc.oracle.fd_order);
    }
    if (raw.has_section("defect")) {
        std::string target = raw.text_or("defect", "target", "none");
        if (target == "none") rc.defect.target = DefectSpec::Target::none;
        else if (target == "phi") rc.defect.target = DefectSpec::Target::phi;
        else if (target == "f") rc.defect.target = DefectSpec::Target::f;
        else if (target == "h") rc.defect.target = DefectSpec::Target::h;
        else throw ConfigError("[defect].target: expected none, phi, f or h");
        std::string mode = raw.text_or("defect", "mode", "scale-bump");
        if (mode == "zero") rc.defect.mode = DefectSpec::Mode::zero;
        else if (mode == "scale-bump") rc.defect.mode = DefectSpec::Mode::scale_bump;
        else if (mode == "add-quadratic") rc.defect.mode = DefectSpec::Mode::add_quadratic;
        else throw ConfigError("[defect].mode: expected zero, scale-bump or add-quadratic");
        rc.defect.amplitude = raw.number_or("defect", "amplitude", rc.defect.amplitude);
    }
    if (raw.has_section("output")) {
        rc.output.format = raw.text_or("output", "format", rc.output.format);
        if (rc.output.format != "json" && rc.output.format != "csv")
            throw ConfigError("[output].format: expected json or csv");
    }
}

} // namespace

RunConfig parse_run_config(const std::string& text) {
    RawConfig raw = tokenize(text);

    std::string type = raw.text("family", "type");

    if (type.rfind("preset:", 0) == 0) {
        std::string name = type.substr(7);
        raw.reject_section("config",
                           "not allowed with a preset family (the preset fixes the "
                           "problem constants)");
        raw.reject_section("direction", "not allowed with a preset family");
        RunConfig rc = preset_run_config(find_preset(name));
        read_common_sections(raw, rc);
        raw.finish();
        validate_run_config(rc);
        return rc;
    }

    std::vector<double> sig_raw = raw.numbers("config", "signature");
    std::vector<int> eps;
    for (double v : sig_raw) {
        if (v != 1.0 && v != -1.0)
            throw ConfigError("[config].signature: entries must be +1 or -1");
        eps.push_back(static_cast<int>(v));
    }
    int n = raw.integer("config", "n");
    int m = raw.integer("config", "m");
    double rho = raw.number_or("config", "rho", 0.0);
    double lambda_f = raw.number_or("config", "lambda_f", 0.0);
    if (static_cast<int>(eps.size()) != n)
        throw ConfigError("[config].signature: length must equal n");

    RunConfig rc = [&] {
        try {
            return RunConfig(SolitonConfig(n, m, Signature(std::move(eps)), rho, lambda_f));
        } catch (const DomainError& e) {
            throw ConfigError(std::string("[config]: ") + e.what());
        }
    }();

    std::vector<double> alpha_raw = raw.numbers("direction", "alpha");
    if (static_cast<int>(alpha_raw.size()) != n)
        throw ConfigError("[direction].alpha: length must equal n");
    rc.alpha = Eigen::Map<Vector>(alpha_raw.data(), static_cast<long>(alpha_raw.size()));

    if (type == "thm14") {
        rc.family.kind = FamilyKind::power_law;
        auto& p = rc.family.power_law;
        p.k = raw.number_or("family", "k", p.k);
        p.c1 = raw.number_or("family", "c1", p.c1);
        p.c2 = raw.number_or("family", "c2", p.c2);
        p.b = raw.number_or("family", "b", p.b);
        p.branch = branch_from_string(raw.text_or("family", "branch", "plus"));
    } else if (type == "thm15") {
        rc.family.kind = FamilyKind::phase_flow;
        auto& p = rc.family.phase_flow;
        p.k = raw.number_or("family", "k", p.k);
        p.c3 = raw.number_or("family", "c3", p.c3);
        p.z0 = raw.number_or("family", "z0", p.z0);
        p.xi0 = raw.number_or("family", "xi0", p.xi0);
        p.f0 = raw.number_or("family", "f0", p.f0);
        p.phi0 = raw.number_or("family", "phi0", p.phi0);
        p.h0 = raw.number_or("family", "h0", p.h0);
    } else if (type == "thm17") {
        rc.family.kind = FamilyKind::null_quadrature;
        auto& p = rc.family.null_shape;
        p.pair = null_pair_from_string(raw.text_or("family", "profiles", "exp-exp"));
        p.scale = raw.number_or("family", "scale", p.scale);
        p.rate = raw.number_or("family", "rate", p.rate);
        p.c4 = raw.number_or("family", "c4", p.c4);
        p.c5 = raw.number_or("family", "c5", p.c5);
        p.anchor = raw.number_or("family", "anchor", p.anchor);
    } else if (type == "external-profile") {
        rc.family.kind = FamilyKind::external_profile;
        rc.family.external_path = raw.text("family", "path");
    } else {
        throw ConfigError("[family].type: unknown family '" + type +
                          "' (expected thm14, thm15, thm17, external-profile or "
                          "preset:<name>)");
    }

    read_common_sections(raw, rc);
    raw.finish();
    validate_run_config(rc);
    return rc;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str());
}

RunConfig preset_run_config(const Preset& preset) {
    RunConfig rc(preset.config);
    rc.alpha = preset.alpha;
    rc.family = preset.family;
    rc.grid.xi_min = preset.default_span.lo;
    rc.grid.xi_max = preset.default_span.hi;
    rc.grid.samples = preset.default_samples;
    return rc;
}

void validate_run_config(const RunConfig& rc) {
    if (rc.alpha.size() != rc.config.n)
        throw ConfigError("[direction].alpha: length must equal n");
    if (rc.alpha.cwiseAbs().maxCoeff() == 0.0)
        throw ConfigError("[direction].alpha: must be nonzero");

    Direction dir = classify_direction(rc.config.sig, rc.alpha);
    if (dir.causal == Direction::Causal::null &&
        (rc.config.rho != 0.0 || rc.config.lambda_F != 0.0))
        throw ConfigError(
            "[direction]: a null direction forces a steady soliton over a Ricci-flat "
            "fiber; set rho = 0 and lambda_f = 0");

    if (!(rc.grid.xi_min < rc.grid.xi_max))
        throw ConfigError("[grid]: xi_min must be < xi_max");
    if (rc.grid.samples < 1) throw ConfigError("[grid].samples: grid must be nonempty");
    if (rc.grid.base_points < 0) throw ConfigError("[grid].base_points: must be >= 0");

    if (!(rc.tol.ode > 0.0 && rc.tol.ode_numeric > 0.0 && rc.tol.pde > 0.0 &&
          rc.tol.oracle > 0.0))
        throw ConfigError("[tolerances]: all tolerances must be positive");
    if (!(rc.oracle.fd_step > 0.0)) throw ConfigError("[oracle].fd_step: must be positive");
    if (rc.oracle.fd_order != 2 && rc.oracle.fd_order != 4)
        throw ConfigError("[oracle].fd_order: must be 2 or 4");

    if (rc.family.kind == FamilyKind::power_law) {
        const auto& p = rc.family.power_law;
        if (!(p.k > 0.0 && p.c1 > 0.0 && p.c2 > 0.0))
            throw ConfigError("[family]: k, c1, c2 must be positive");
    } else if (rc.family.kind == FamilyKind::phase_flow) {
        const auto& p = rc.family.phase_flow;
        if (!(p.k > 0.0 && p.c3 > 0.0))
            throw ConfigError("[family]: k, c3 must be positive");
        if (!(p.f0 > 0.0 && p.phi0 > 0.0))
            throw ConfigError("[family]: f0, phi0 must be positive");
        if (!(p.xi0 >= rc.grid.xi_min && p.xi0 <= rc.grid.xi_max))
            throw ConfigError("[family].xi0: must lie inside [xi_min, xi_max]");
    } else if (rc.family.kind == FamilyKind::null_quadrature) {
        if (dir.causal != Direction::Causal::null &&
            rc.family.null_shape.pair != NullShapeSpec::Pair::const_const)
            throw ConfigError(
                "[family]: the quadrature family is defined for null directions "
                "(sum eps_i alpha_i^2 = 0)");
        if (!(rc.family.null_shape.scale > 0.0))
            throw ConfigError("[family].scale: must be positive");
    }

    if (rc.defect.amplitude < 0.0)
        throw ConfigError("[defect].amplitude: must be >= 0");
    if (rc.defect.mode == DefectSpec::Mode::zero &&
        rc.defect.target != DefectSpec::Target::h &&
        rc.defect.target != DefectSpec::Target::none)
        throw ConfigError("[defect]: mode 'zero' applies only to the potential h");
}

std::string serialize_run_config(const RunConfig& rc) {
    std::ostringstream os;
    auto num = [](double v) { return format_g17(v); };

    os << "[config]\n";
    os << "n = " << rc.config.n << "\n";
    os << "m = " << rc.config.m << "\n";
    os << "signature = [";
    for (int i = 0; i < rc.config.n; ++i) os << (i ? ", " : "") << rc.config.sig.eps(i);
    os << "]\n";
    os << "rho = " << num(rc.config.rho) << "\n";
    os << "lambda_f = " << num(rc.config.lambda_F) << "\n\n";

    os << "[direction]\n";
    os << "alpha = [";
    for (int i = 0; i < rc.alpha.size(); ++i) os << (i ? ", " : "") << num(rc.alpha[i]);
    os << "]\n\n";

    os << "[family]\n";
    switch (rc.family.kind) {
        case FamilyKind::power_law: {
            const auto& p = rc.family.power_law;
            os << "type = thm14\n";
            os << "branch = " << (p.branch == Branch::plus ? "plus" : "minus") << "\n";
            os << "k = " << num(p.k) << "\n";
            os << "b = " << num(p.b) << "\n";
            os << "c1 = " << num(p.c1) << "\n";
            os << "c2 = " << num(p.c2) << "\n";
            break;
        }
        case FamilyKind::phase_flow: {
            const auto& p = rc.family.phase_flow;
            os << "type = thm15\n";
            os << "k = " << num(p.k) << "\n";
            os << "c3 = " << num(p.c3) << "\n";
            os << "z0 = " << num(p.z0) << "\n";
            os << "xi0 = " << num(p.xi0) << "\n";
            os << "f0 = " << num(p.f0) << "\n";
            os << "phi0 = " << num(p.phi0) << "\n";
            os << "h0 = " << num(p.h0) << "\n";
            break;
        }
        case FamilyKind::null_quadrature: {
            const auto& p = rc.family.null_shape;
            os << "type = thm17\n";
            os << "profiles = " << to_string(p.pair) << "\n";
            os << "scale = " << num(p.scale) << "\n";
            os << "rate = " << num(p.rate) << "\n";
            os << "c4 = " << num(p.c4) << "\n";
            os << "c5 = " << num(p.c5) << "\n";
            os << "anchor = " << num(p.anchor) << "\n";
            break;
        }
        case FamilyKind::external_profile:
            os << "type = external-profile\n";
            os << "path = " << rc.family.external_path << "\n";
            break;
        case FamilyKind::preset:
            throw ConfigError("serialize_run_config: preset families must be resolved first");
    }
    os << "\n";

    os << "[grid]\n";
    os << "xi_min = " << num(rc.grid.xi_min) << "\n";
    os << "xi_max = " << num(rc.grid.xi_max) << "\n";
    os << "samples = " << rc.grid.samples << "\n";
    os << "base_points = " << rc.grid.base_points << "\n";
    os << "seed = " << rc.grid.seed << "\n\n";

    os << "[tolerances]\n";
    os << "ode = " << num(rc.tol.ode) << "\n";
    os << "ode_numeric = " << num(rc.tol.ode_numeric) << "\n";
    os << "pde = " << num(rc.tol.pde) << "\n";
    os << "oracle = " << num(rc.tol.oracle) << "\n\n";

    os << "[oracle]\n";
    os << "enabled = " << (rc.oracle.enabled ? "true" : "false") << "\n";
    os << "fd_step = " << num(rc.oracle.fd_step) << "\n";
    os << "fd_order = " << rc.oracle.fd_order << "\n\n";

    os << "[defect]\n";
    os << "target = " << to_string(rc.defect.target) << "\n";
    os << "mode = " << to_string(rc.defect.mode) << "\n";
    os << "amplitude = " << num(rc.defect.amplitude) << "\n\n";

    os << "[output]\n";
    os << "format = " << rc.output.format << "\n";
    return os.str();
}

} // namespace soliton
