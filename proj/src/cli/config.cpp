#include "cbf/cli/config.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "cbf/fields/grid.hpp"

namespace cbf::cli {

namespace {

[[noreturn]] void fail(const std::string& msg, int line, const std::string& key) {
    throw config_error(msg + " (line " + std::to_string(line) + ")", line, key);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& v, int line, const std::string& key) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0' || !std::isfinite(x))
        fail("key '" + key + "' needs a finite number, got '" + v + "'", line, key);
    return x;
}

long to_long(const std::string& v, int line, const std::string& key) {
    char* end = nullptr;
    const long x = std::strtol(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0')
        fail("key '" + key + "' needs an integer, got '" + v + "'", line, key);
    return x;
}

std::uint64_t to_u64(const std::string& v, int line, const std::string& key) {
    char* end = nullptr;
    const unsigned long long x = std::strtoull(v.c_str(), &end, 0);
    if (end == v.c_str() || *end != '\0' || v.find('-') != std::string::npos)
        fail("key '" + key + "' needs an unsigned 64-bit integer, got '" + v + "'", line, key);
    return x;
}

bool to_bool(const std::string& v, int line, const std::string& key) {
    if (v == "true") return true;
    if (v == "false") return false;
    fail("key '" + key + "' needs true or false, got '" + v + "'", line, key);
}

std::vector<double> to_list(const std::string& v, int line, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) fail("key '" + key + "' has an empty list entry", line, key);
        out.push_back(to_double(item, line, key));
    }
    if (out.empty()) fail("key '" + key + "' needs a comma-separated list", line, key);
    return out;
}

void require_positive(double x, int line, const std::string& key) {
    if (!(x > 0.0)) fail("key '" + key + "' must be > 0", line, key);
}

void require_one_of(const std::string& v, std::initializer_list<const char*> allowed, int line,
                    const std::string& key) {
    for (const char* a : allowed)
        if (v == a) return;
    std::string list;
    for (const char* a : allowed) list += (list.empty() ? "" : " | ") + std::string(a);
    fail("key '" + key + "' must be one of {" + list + "}, got '" + v + "'", line, key);
}

struct Parser {
    RunConfig cfg;
    std::set<std::string> seen;
    bool have_mode = false;

    void assign(const std::string& section, const std::string& key, const std::string& value,
                int line) {
        if (!seen.insert(section + "." + key).second)
            fail("duplicate key '" + section + "." + key + "'", line, key);
        if (section == "run")
            run_key(key, value, line);
        else if (section == "grid")
            grid_key(key, value, line);
        else if (section == "params")
            params_key(key, value, line);
        else if (section == "solver")
            solver_key(key, value, line);
        else if (section == "source")
            source_key(key, value, line);
        else if (section == "invert")
            invert_key(key, value, line);
        else if (section == "stability")
            stability_key(key, value, line);
        else if (section == "admissibility")
            admissibility_key(key, value, line);
        else if (section == "energy")
            energy_key(key, value, line);
        else
            fail("unknown section [" + section + "]", line, section);
    }

    [[noreturn]] void unknown(const std::string& section, const std::string& key, int line) {
        fail("unknown key '" + key + "' in section [" + section + "]", line, key);
    }

    void run_key(const std::string& key, const std::string& value, int line) {
        if (key == "mode") {
            cfg.mode = parse_mode(value, line);
            have_mode = true;
        } else if (key == "seed") {
            cfg.seed = to_u64(value, line, key);
        } else if (key == "out") {
            if (value.empty()) fail("key 'out' must not be empty", line, key);
            cfg.out_dir = value;
        } else {
            unknown("run", key, line);
        }
    }

    void grid_key(const std::string& key, const std::string& value, int line) {
        if (key == "dim")
            cfg.dim = static_cast<int>(to_long(value, line, key));
        else if (key == "n")
            cfg.n = static_cast<int>(to_long(value, line, key));
        else
            unknown("grid", key, line);
    }

    void params_key(const std::string& key, const std::string& value, int line) {
        if (key == "mu")
            cfg.params.mu = to_double(value, line, key);
        else if (key == "alpha")
            cfg.params.alpha = to_double(value, line, key);
        else if (key == "beta")
            cfg.params.beta = to_double(value, line, key);
        else if (key == "r")
            cfg.params.r = to_double(value, line, key);
        else if (key == "T")
            cfg.params.T = to_double(value, line, key);
        else if (key == "dt")
            cfg.params.dt = to_double(value, line, key);
        else
            unknown("params", key, line);
    }

    void solver_key(const std::string& key, const std::string& value, int line) {
        if (key == "cfl") {
            cfg.solver.cfl = to_double(value, line, key);
            require_positive(cfg.solver.cfl, line, key);
        } else if (key == "snapshot_stride") {
            cfg.solver.snapshot_stride = static_cast<int>(to_long(value, line, key));
            if (cfg.solver.snapshot_stride < 0)
                fail("key 'snapshot_stride' must be >= 0", line, key);
        } else if (key == "record_ut") {
            cfg.solver.record_ut = to_bool(value, line, key);
        } else if (key == "helmholtz_tol") {
            cfg.solver.helmholtz_tol = to_double(value, line, key);
            require_positive(cfg.solver.helmholtz_tol, line, key);
        } else if (key == "helmholtz_max_iter") {
            cfg.solver.helmholtz_max_iter = static_cast<int>(to_long(value, line, key));
            if (cfg.solver.helmholtz_max_iter < 1)
                fail("key 'helmholtz_max_iter' must be >= 1", line, key);
        } else {
            unknown("solver", key, line);
        }
    }

    void source_key(const std::string& key, const std::string& value, int line) {
        if (key == "case") {
            require_one_of(value,
                           {"zero", "random", "decaying-vortex", "steady-state",
                            "separable-source"},
                           line, key);
            cfg.source.case_id = value;
        } else if (key == "amplitude") {
            cfg.source.amplitude = to_double(value, line, key);
        } else if (key == "u0_amplitude") {
            cfg.source.u0_amplitude = to_double(value, line, key);
        } else if (key == "mms_amplitude") {
            cfg.source.mms_amplitude = to_double(value, line, key);
        } else if (key == "modulation") {
            require_one_of(value, {"linear", "constant"}, line, key);
            cfg.source.modulation = value;
        } else {
            unknown("source", key, line);
        }
    }

    void invert_key(const std::string& key, const std::string& value, int line) {
        if (key == "data") {
            require_one_of(value, {"synthetic", "files"}, line, key);
            cfg.invert.data = value;
        } else if (key == "refine") {
            cfg.invert.refine = static_cast<int>(to_long(value, line, key));
            if (cfg.invert.refine != 1 && cfg.invert.refine != 2)
                fail("key 'refine' must be 1 or 2", line, key);
        } else if (key == "tol") {
            cfg.invert.tol = to_double(value, line, key);
            require_positive(cfg.invert.tol, line, key);
        } else if (key == "max_iter") {
            cfg.invert.max_iter = static_cast<int>(to_long(value, line, key));
            if (cfg.invert.max_iter < 1) fail("key 'max_iter' must be >= 1", line, key);
        } else if (key == "omega") {
            cfg.invert.omega = to_double(value, line, key);
            if (!(cfg.invert.omega > 0.0 && cfg.invert.omega <= 1.0))
                fail("key 'omega' must be in (0, 1]", line, key);
        } else if (key == "lambda1") {
            cfg.invert.lambda1 = to_double(value, line, key);
        } else if (key == "override_admissibility") {
            cfg.invert.override_admissibility = to_bool(value, line, key);
        } else if (key == "rescale_to_ball") {
            cfg.invert.rescale_to_ball = to_bool(value, line, key);
        } else if (key == "g_floor") {
            cfg.invert.g_floor = to_double(value, line, key);
            require_positive(cfg.invert.g_floor, line, key);
        } else if (key == "phi_path") {
            cfg.invert.phi_path = value;
        } else if (key == "grad_psi_path") {
            cfg.invert.grad_psi_path = value;
        } else if (key == "u0_path") {
            cfg.invert.u0_path = value;
        } else {
            unknown("invert", key, line);
        }
    }

    void stability_key(const std::string& key, const std::string& value, int line) {
        if (key == "deltas") {
            cfg.stability.deltas = to_list(value, line, key);
            for (double d : cfg.stability.deltas)
                if (!(d > 0.0)) fail("key 'deltas' entries must be > 0", line, key);
        } else if (key == "target") {
            require_one_of(value, {"modulation", "initial"}, line, key);
            cfg.stability.target = value;
        } else if (key == "tol") {
            cfg.stability.tol = to_double(value, line, key);
            require_positive(cfg.stability.tol, line, key);
        } else if (key == "max_iter") {
            cfg.stability.max_iter = static_cast<int>(to_long(value, line, key));
            if (cfg.stability.max_iter < 1) fail("key 'max_iter' must be >= 1", line, key);
        } else {
            unknown("stability", key, line);
        }
    }

    void admissibility_key(const std::string& key, const std::string& value, int line) {
        if (key == "phi_l4") {
            cfg.admissibility.phi_l4 = to_double(value, line, key);
            if (cfg.admissibility.phi_l4 < 0.0) fail("key 'phi_l4' must be >= 0", line, key);
        } else if (key == "phi_path") {
            cfg.admissibility.phi_path = value;
        } else if (key == "lambda1") {
            cfg.admissibility.lambda1 = to_double(value, line, key);
        } else {
            unknown("admissibility", key, line);
        }
    }

    void energy_key(const std::string& key, const std::string& value, int line) {
        if (key == "tol_scale") {
            cfg.energy.tol_scale = to_double(value, line, key);
            require_positive(cfg.energy.tol_scale, line, key);
        } else {
            unknown("energy", key, line);
        }
    }
};

void require_file(const std::string& path, const std::string& key) {
    if (path.empty())
        fail("the files data route requires key 'invert." + key + "'", 0, key);
    if (!std::filesystem::exists(path)) fail("file not found: " + path, 0, key);
}

}  // namespace

std::string mode_name(Mode m) {
    switch (m) {
        case Mode::direct: return "direct";
        case Mode::invert: return "invert";
        case Mode::verify_energy: return "verify-energy";
        case Mode::stability: return "stability";
        case Mode::admissibility: return "admissibility";
    }
    throw structural_error("mode_name: bad enum value");
}

Mode parse_mode(const std::string& name, int line) {
    if (name == "direct") return Mode::direct;
    if (name == "invert") return Mode::invert;
    if (name == "verify-energy") return Mode::verify_energy;
    if (name == "stability") return Mode::stability;
    if (name == "admissibility") return Mode::admissibility;
    fail("unknown mode '" + name +
             "' (expected direct | invert | verify-energy | stability | admissibility)",
         line, "mode");
}

RunConfig parse_config(const std::string& text) {
    Parser p;
    p.cfg.text = text;
    std::stringstream ss(text);
    std::string raw, section;
    int line = 0;
    while (std::getline(ss, raw)) {
        ++line;
        const std::string s = trim(raw);
        if (s.empty() || s[0] == '#') continue;
        if (s.front() == '[') {
            if (s.back() != ']') fail("unterminated section header", line, s);
            section = trim(s.substr(1, s.size() - 2));
            if (section.empty()) fail("empty section header", line, s);
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) fail("expected key = value, got '" + s + "'", line, s);
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty()) fail("empty key", line, s);
        if (section.empty()) fail("key '" + key + "' appears before any [section]", line, key);
        p.assign(section, key, value, line);
    }

    if (!p.have_mode)
        throw config_error("missing required key 'run.mode'", 0, "mode");

    fields::Grid grid(p.cfg.dim, p.cfg.n);
    (void)grid;
    p.cfg.params.validate(p.cfg.dim);

    if (p.cfg.mode == Mode::invert && p.cfg.invert.data == "files") {
        require_file(p.cfg.invert.phi_path, "phi_path");
        require_file(p.cfg.invert.grad_psi_path, "grad_psi_path");
        require_file(p.cfg.invert.u0_path, "u0_path");
    }
    if (p.cfg.mode == Mode::admissibility && !p.cfg.admissibility.phi_path.empty() &&
        !std::filesystem::exists(p.cfg.admissibility.phi_path))
        fail("file not found: " + p.cfg.admissibility.phi_path, 0, "phi_path");

    return p.cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace cbf::cli
