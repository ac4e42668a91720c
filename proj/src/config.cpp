#include "nlarz/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "nlarz/errors.hpp"

namespace nlarz {

namespace {

struct DoubleKey {
    const char* name;
    double RunConfig::*field;
};

constexpr DoubleKey double_keys[] = {
    {"length", &RunConfig::length},
    {"dx", &RunConfig::dx},
    {"dt", &RunConfig::dt},
    {"tau", &RunConfig::tau},
    {"v_f", &RunConfig::v_f},
    {"rho_f", &RunConfig::rho_f},
    {"rho_j", &RunConfig::rho_j},
    {"pressure_scale", &RunConfig::pressure_scale},
    {"lookahead", &RunConfig::lookahead},
    {"cfl_limit", &RunConfig::cfl_limit},
    {"rho_mean", &RunConfig::rho_mean},
    {"rho_amplitude", &RunConfig::rho_amplitude},
    {"penetration", &RunConfig::penetration},
    {"duration", &RunConfig::duration},
    {"sample_every", &RunConfig::sample_every},
    {"threshold_fraction", &RunConfig::threshold_fraction},
};

std::string trim(const std::string& s) {
    const char* ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::string at_line(int line) {
    return line > 0 ? " (line " + std::to_string(line) + ")" : "";
}

double parse_double(const std::string& text, const std::string& key, int line) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw config_error("malformed number for '" + key + "': '" + text +
                               "'" + at_line(line),
                           key, line);
    return v;
}

std::string format_double(double v) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

bool near_integer_ratio(double num, double den, long& out) {
    const double ratio = num / den;
    out = std::lround(ratio);
    return std::abs(ratio - std::round(ratio)) <= 1e-9 * std::max(1.0, ratio);
}

} // namespace

RingGrid RunConfig::grid() const { return RingGrid::make(length, dx); }

ModelParams RunConfig::params() const {
    ModelParams p;
    p.fd = FundamentalDiagram{v_f, rho_f, rho_j};
    p.pl = PressureLaw{pressure_scale, rho_f, rho_j};
    p.tau = tau;
    p.lookahead = lookahead;
    return p;
}

StepConfig RunConfig::step_config() const {
    StepConfig s;
    s.dt = dt;
    s.params = params();
    s.cfl_limit = cfl_limit;
    return s;
}

ScenarioSpec RunConfig::scenario_spec() const {
    return ScenarioSpec{scenario, penetration, lookahead, duration};
}

void RunConfig::validate() const {
    auto fail = [](const std::string& msg, const char* key) {
        throw config_error(msg, key, 0);
    };
    if (!(length > 0.0)) fail("length must be positive", "length");
    long n = 0;
    if (!(dx > 0.0) || !near_integer_ratio(length, dx, n) || n < 4)
        fail("dx must divide length into at least 4 cells", "dx");
    if (!(dt > 0.0)) fail("dt must be positive", "dt");
    if (!(tau > 0.0)) fail("tau must be positive", "tau");
    if (!(v_f > 0.0)) fail("v_f must be positive", "v_f");
    if (!(rho_f > 0.0) || !(rho_f < rho_j))
        fail("rho_f must be positive and below rho_j", "rho_f");
    if (!(pressure_scale > 0.0))
        fail("pressure_scale must be positive", "pressure_scale");
    if (!(lookahead >= 0.0)) fail("lookahead must be non-negative", "lookahead");
    if (lookahead > 0.0 &&
        std::max(1L, std::lround(lookahead / dx)) > n)
        fail("lookahead window exceeds the ring", "lookahead");
    if (!(cfl_limit > 0.0) || !(cfl_limit <= 1.0))
        fail("cfl_limit must lie in (0, 1]", "cfl_limit");
    if (!(rho_amplitude >= 0.0) || !(rho_mean - rho_amplitude > 0.0) ||
        !(rho_mean + rho_amplitude < rho_j))
        fail("initial profile must stay inside (0, rho_j)", "rho_amplitude");
    if (!(penetration >= 0.0) || !(penetration <= 1.0))
        fail("penetration must lie in [0, 1]", "penetration");
    if (!(duration > 0.0)) fail("duration must be positive", "duration");
    long stride = 0;
    if (!(sample_every > 0.0) || !near_integer_ratio(sample_every, dt, stride) ||
        stride < 1)
        fail("sample_every must be a positive multiple of dt", "sample_every");
    if (!(threshold_fraction > 0.0) || !(threshold_fraction < 1.0))
        fail("threshold_fraction must lie in (0, 1)", "threshold_fraction");
    if (output_dir.empty()) fail("output_dir must not be empty", "output_dir");
}

void RunConfig::set(const std::string& key, const std::string& value, int line) {
    for (const auto& dk : double_keys) {
        if (key == dk.name) {
            this->*dk.field = parse_double(value, key, line);
            return;
        }
    }
    if (key == "scenario") {
        auto kind = scenario_from_string(value);
        if (!kind)
            throw config_error("unknown scenario '" + value + "'" + at_line(line),
                               key, line);
        scenario = *kind;
        return;
    }
    if (key == "output_dir") {
        output_dir = value;
        return;
    }
    throw config_error("unknown key '" + key + "'" + at_line(line), key, line);
}

std::string RunConfig::get(const std::string& key) const {
    for (const auto& dk : double_keys)
        if (key == dk.name) return format_double(this->*dk.field);
    if (key == "scenario") return to_string(scenario);
    if (key == "output_dir") return output_dir;
    throw config_error("unknown key '" + key + "'", key, 0);
}

std::string RunConfig::serialize() const {
    static const char* order[] = {
        "length",    "dx",          "dt",          "tau",
        "v_f",       "rho_f",       "rho_j",       "pressure_scale",
        "lookahead", "cfl_limit",   "rho_mean",    "rho_amplitude",
        "scenario",  "penetration", "duration",    "sample_every",
        "threshold_fraction", "output_dir",
    };
    std::string out;
    for (const char* key : order) {
        out += key;
        out += " = ";
        out += get(key);
        out += "\n";
    }
    return out;
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::string stripped = trim(raw);
        if (stripped.empty()) continue;
        auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw config_error("expected 'key = value'" + at_line(line), "", line);
        std::string key = trim(stripped.substr(0, eq));
        std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            throw config_error("missing key" + at_line(line), "", line);
        if (value.empty())
            throw config_error("empty value for '" + key + "'" + at_line(line),
                               key, line);
        cfg.set(key, value, line);
    }
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace nlarz
