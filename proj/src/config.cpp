#include "blowup/config.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "blowup/errors.hpp"
#include "blowup/lifespan.hpp"

namespace blowup {

namespace {

std::string trim_quotes(std::string s) {
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
        return s.substr(1, s.size() - 2);
    }
    return s;
}

double to_double(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw InputError("config: " + key + " expects a number, got '" + text + "'");
    }
}

int to_int(const std::string& key, const std::string& text) {
    int v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end) {
        throw InputError("config: " + key + " expects an integer, got '" + text + "'");
    }
    return v;
}

std::vector<double> to_list(const std::string& key, const std::string& text) {
    std::string body = text;
    if (!body.empty() && body.front() == '[') body.erase(0, 1);
    if (!body.empty() && body.back() == ']') body.pop_back();
    std::vector<double> out;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        const auto last = item.find_last_not_of(" \t");
        out.push_back(to_double(key, item.substr(first, last - first + 1)));
    }
    return out;
}

}  // namespace

SolveSpec Config::solve_spec() const {
    SolveSpec spec;
    spec.h = h;
    spec.cap = cap;
    spec.cap_factor = cap_factor;
    spec.sweeps = sweeps;
    spec.horizon = horizon ? *horizon
                           : horizon_factor * bound(params, mode).log_T_bound - std::log(params.R);
    return spec;
}

AuditOptions Config::audit_options() const {
    AuditOptions out;
    out.mode = mode;
    out.max_dominance_frame = max_dominance_frame;
    out.max_step_frame = max_step_frame;
    out.step_samples = static_cast<std::size_t>(std::max(step_samples, 1));
    out.rel_tol = rel_tol;
    out.step.tolerance = step_tolerance;
    out.step.oracle.rel_tol = oracle_rel_tol;
    return out;
}

SweepOptions Config::sweep_options() const {
    SweepOptions out;
    out.mode = mode;
    out.h = h;
    out.cap_factor = cap_factor;
    out.sweeps = sweeps;
    out.refinements = refinements;
    out.horizon_factor = horizon_factor;
    out.max_log_T_bound = max_log_T_bound;
    out.threads = threads;
    return out;
}

void apply_setting(Config& c, const std::string& key, const std::string& raw) {
    const std::string value = trim_quotes(raw);
    auto num = [&] { return to_double(key, value); };
    auto integer = [&] { return to_int(key, value); };
    auto& q = c.params;

    if (key == "params.a") q.a = num();
    else if (key == "params.b") q.b = num();
    else if (key == "params.c") q.c = num();
    else if (key == "params.x") q.x = num();
    else if (key == "params.y") q.y = num();
    else if (key == "params.z") q.z = num();
    else if (key == "params.p") q.p = num();
    else if (key == "params.A") q.A = num();
    else if (key == "params.B") q.B = num();
    else if (key == "params.R") q.R = num();
    else if (key == "run.mode") c.mode = parse_index_mode(value);
    else if (key == "solve.h") c.h = num();
    else if (key == "solve.cap") c.cap = num();
    else if (key == "solve.cap_factor") c.cap_factor = num();
    else if (key == "solve.horizon") c.horizon = num();
    else if (key == "solve.horizon_factor") c.horizon_factor = num();
    else if (key == "solve.sweeps") c.sweeps = integer();
    else if (key == "solve.refinements") c.refinements = integer();
    else if (key == "audit.max_dominance_frame") c.max_dominance_frame = integer();
    else if (key == "audit.max_step_frame") c.max_step_frame = integer();
    else if (key == "audit.samples") c.step_samples = integer();
    else if (key == "audit.rel_tol") c.rel_tol = num();
    else if (key == "audit.step_tolerance") c.step_tolerance = num();
    else if (key == "audit.oracle_rel_tol") c.oracle_rel_tol = num();
    else if (key == "iterate.frames") c.frames = integer();
    else if (key == "sweep.amplitudes") c.amplitudes = to_list(key, raw);
    else if (key == "sweep.threads") c.threads = static_cast<unsigned>(std::max(integer(), 0));
    else if (key == "sweep.max_log_T_bound") c.max_log_T_bound = num();
    else throw InputError("config: unknown key '" + key + "'");
}

Config parse_config(std::istream& input, bool require_params) {
    std::vector<CLI::ConfigItem> items;
    try {
        items = CLI::ConfigTOML().from_config(input);
    } catch (const CLI::Error& e) {
        throw InputError(std::string("config: ") + e.what());
    }
    Config config;
    std::set<std::string> seen;
    for (const auto& item : items) {
        if (item.name == "++" || item.name == "--") continue;  // section markers
        std::string key;
        for (const auto& parent : item.parents) key += parent + ".";
        key += item.name;
        std::string value;
        if (item.inputs.size() == 1) {
            value = item.inputs.front();
        } else {
            value = "[";
            for (std::size_t i = 0; i < item.inputs.size(); ++i) {
                value += (i ? "," : "") + item.inputs[i];
            }
            value += "]";
        }
        apply_setting(config, key, value);
        seen.insert(key);
    }
    if (require_params) {
        for (const char* name : {"a", "b", "c", "x", "y", "z", "p", "A", "B", "R"}) {
            if (!seen.contains(std::string("params.") + name)) {
                throw InputError(std::string("config: [params] must name ") + name);
            }
        }
    }
    return config;
}

Config load_config(const std::string& path, bool require_params) {
    std::ifstream in(path);
    if (!in) throw InputError("config: cannot open " + path);
    return parse_config(in, require_params);
}

}  // namespace blowup
