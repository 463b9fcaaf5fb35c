#include "spinbath/scenario.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <type_traits>

#include "spinbath/errors.hpp"

namespace spinbath {

namespace {

std::string trim(const std::string& s, std::size_t* lead = nullptr) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        if (lead) *lead = s.size();
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    if (lead) *lead = b;
    return s.substr(b, e - b + 1);
}

std::string to_string(CorrelationSetting c) {
    switch (c) {
        case CorrelationSetting::Both: return "both";
        case CorrelationSetting::With: return "with";
        case CorrelationSetting::Without: return "without";
    }
    return "both";
}

struct Field {
    std::string value;
    int line;
    int column;  // of the value
};

double parse_double(const Field& f) {
    const char* begin = f.value.c_str();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || errno == ERANGE)
        throw ParseError("expected a number, got '" + f.value + "'", f.line, f.column + static_cast<int>(end - begin));
    return v;
}

int parse_int(const Field& f) {
    const char* begin = f.value.c_str();
    char* end = nullptr;
    errno = 0;
    const long v = std::strtol(begin, &end, 10);
    if (end == begin || *end != '\0' || errno == ERANGE || v < -2147483647L || v > 2147483647L)
        throw ParseError("expected an integer, got '" + f.value + "'", f.line, f.column + static_cast<int>(end - begin));
    return static_cast<int>(v);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

template <typename T>
std::string join(const std::vector<T>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        if constexpr (std::is_same_v<T, std::string>)
            out += xs[i];
        else
            out += to_string(xs[i]);
    }
    return out;
}

const std::vector<std::string> known_outputs{"jz", "jz2", "jy", "jx"};

}  // namespace

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string to_string(Engine e) {
    switch (e) {
        case Engine::MasterEquation: return "master_equation";
        case Engine::ExactDephasing: return "exact_dephasing";
        case Engine::ShortTime: return "short_time";
    }
    return "unknown";
}

Engine engine_from_string(const std::string& name) {
    if (name == "master_equation") return Engine::MasterEquation;
    if (name == "exact_dephasing") return Engine::ExactDephasing;
    if (name == "short_time") return Engine::ShortTime;
    throw std::invalid_argument("unknown engine '" + name + "'");
}

ParseError::ParseError(const std::string& msg, int line, int column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

std::vector<bool> Scenario::correlation_flags() const {
    switch (correlations) {
        case CorrelationSetting::With: return {true};
        case CorrelationSetting::Without: return {false};
        case CorrelationSetting::Both: break;
    }
    return {true, false};
}

void Scenario::validate() const {
    if (name.empty()) throw DomainError("scenario: name must not be empty");
    if (name.find_first_of("/\\ \t") != std::string::npos)
        throw DomainError("scenario: name '" + name + "' must not contain spaces or path separators");
    if (sys.n_atoms < 1) throw DomainError("scenario: n_atoms must be >= 1");
    if (!(sys.delta_tilde() > 0.0)) throw DegenerateHamiltonianError("scenario: eps = Delta = 0 is degenerate");
    bath.validate();
    sim.resolved(sys).validate();
    if (engines.empty()) throw DomainError("scenario: no engines selected");
    for (Engine e : engines) {
        if (e == Engine::ExactDephasing && sys.epsilon != 0.0)
            throw UnsupportedModelError("scenario '" + name + "': exact_dephasing requires epsilon = 0");
        if (e == Engine::ShortTime && prep != Preparation::DownZ)
            throw UnsupportedModelError("scenario '" + name + "': short_time requires preparation down_z");
    }
    for (const auto& o : outputs)
        if (std::find(known_outputs.begin(), known_outputs.end(), o) == known_outputs.end())
            throw DomainError("scenario: unknown output '" + o + "'");
}

bool Scenario::operator==(const Scenario& o) const {
    const auto& q = sim.quadrature;
    const auto& oq = o.sim.quadrature;
    return name == o.name && sys.epsilon == o.sys.epsilon && sys.delta == o.sys.delta &&
           sys.n_atoms == o.sys.n_atoms && bath.g == o.bath.g && bath.omega_c == o.bath.omega_c &&
           bath.beta == o.bath.beta && prep == o.prep && sim.t_max == o.sim.t_max && sim.dt == o.sim.dt &&
           sim.kernel_grid_dt == o.sim.kernel_grid_dt && sim.record_every == o.sim.record_every &&
           q.rel_tol == oq.rel_tol && q.abs_tol == oq.abs_tol && q.max_subdivisions == oq.max_subdivisions &&
           q.tail_cutoff_multiplier == oq.tail_cutoff_multiplier && correlations == o.correlations &&
           engines == o.engines && outputs == o.outputs;
}

Scenario parse_scenario(const std::string& text) {
    Scenario s;
    std::map<std::string, Field> seen;
    std::string section;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    bool have_name = false;

    while (std::getline(in, raw)) {
        ++line_no;
        std::size_t lead = 0;
        const std::string line = trim(raw, &lead);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        const int col0 = static_cast<int>(lead) + 1;

        if (line[0] == '[') {
            if (line.back() != ']')
                throw ParseError("unterminated section header", line_no, col0 + static_cast<int>(line.size()));
            section = trim(line.substr(1, line.size() - 2));
            static const std::vector<std::string> sections{"system", "bath", "preparation", "simulation",
                                                           "quadrature", "run"};
            if (std::find(sections.begin(), sections.end(), section) == sections.end())
                throw ParseError("unknown section '" + section + "'", line_no, col0 + 1);
            continue;
        }

        const auto eq = raw.find('=');
        if (eq == std::string::npos) throw ParseError("expected 'key = value'", line_no, col0);
        const std::string key = trim(raw.substr(0, eq));
        std::size_t vlead = 0;
        const std::string value = trim(raw.substr(eq + 1), &vlead);
        const Field f{value, line_no, static_cast<int>(eq + 1 + vlead) + 1};
        if (key.empty()) throw ParseError("missing key", line_no, col0);
        if (value.empty()) throw ParseError("missing value for '" + key + "'", line_no, f.column);

        const std::string full = section.empty() ? key : section + "." + key;
        if (seen.count(full)) throw ParseError("duplicate key '" + full + "'", line_no, col0);
        seen.emplace(full, f);

        try {
            if (full == "name") {
                s.name = value;
                have_name = true;
            } else if (full == "system.n_atoms") {
                s.sys.n_atoms = parse_int(f);
            } else if (full == "system.epsilon") {
                s.sys.epsilon = parse_double(f);
            } else if (full == "system.delta") {
                s.sys.delta = parse_double(f);
            } else if (full == "bath.g") {
                s.bath.g = parse_double(f);
            } else if (full == "bath.omega_c") {
                s.bath.omega_c = parse_double(f);
            } else if (full == "bath.beta") {
                s.bath.beta = parse_double(f);
            } else if (full == "preparation.state") {
                s.prep = preparation_from_string(value);
            } else if (full == "simulation.t_max") {
                s.sim.t_max = parse_double(f);
            } else if (full == "simulation.dt") {
                s.sim.dt = parse_double(f);
            } else if (full == "simulation.kernel_grid_dt") {
                s.sim.kernel_grid_dt = parse_double(f);
            } else if (full == "simulation.record_every") {
                s.sim.record_every = parse_int(f);
            } else if (full == "simulation.correlations") {
                if (value == "both") s.correlations = CorrelationSetting::Both;
                else if (value == "with") s.correlations = CorrelationSetting::With;
                else if (value == "without") s.correlations = CorrelationSetting::Without;
                else throw std::invalid_argument("correlations must be both, with or without");
            } else if (full == "quadrature.rel_tol") {
                s.sim.quadrature.rel_tol = parse_double(f);
            } else if (full == "quadrature.abs_tol") {
                s.sim.quadrature.abs_tol = parse_double(f);
            } else if (full == "quadrature.max_subdivisions") {
                s.sim.quadrature.max_subdivisions = parse_int(f);
            } else if (full == "quadrature.tail_cutoff_multiplier") {
                s.sim.quadrature.tail_cutoff_multiplier = parse_double(f);
            } else if (full == "run.engines") {
                s.engines.clear();
                for (const auto& e : split_list(value)) s.engines.push_back(engine_from_string(e));
            } else if (full == "run.outputs") {
                s.outputs = split_list(value);
                for (const auto& o : s.outputs)
                    if (std::find(known_outputs.begin(), known_outputs.end(), o) == known_outputs.end())
                        throw std::invalid_argument("unknown output '" + o + "'");
            } else {
                throw ParseError("unknown key '" + full + "'", line_no, col0);
            }
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), line_no, f.column);
        }
    }
    if (!have_name) throw ParseError("missing required key 'name'", line_no + 1, 1);
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

std::string serialize(const Scenario& s) {
    std::ostringstream out;
    const auto& q = s.sim.quadrature;
    out << "name = " << s.name << "\n"
        << "\n[system]\n"
        << "n_atoms = " << s.sys.n_atoms << "\n"
        << "epsilon = " << format_double(s.sys.epsilon) << "\n"
        << "delta = " << format_double(s.sys.delta) << "\n"
        << "\n[bath]\n"
        << "g = " << format_double(s.bath.g) << "\n"
        << "omega_c = " << format_double(s.bath.omega_c) << "\n"
        << "beta = " << format_double(s.bath.beta) << "\n"
        << "\n[preparation]\n"
        << "state = " << to_string(s.prep) << "\n"
        << "\n[simulation]\n"
        << "t_max = " << format_double(s.sim.t_max) << "\n"
        << "dt = " << format_double(s.sim.dt) << "\n"
        << "kernel_grid_dt = " << format_double(s.sim.kernel_grid_dt) << "\n"
        << "record_every = " << s.sim.record_every << "\n"
        << "correlations = " << to_string(s.correlations) << "\n"
        << "\n[quadrature]\n"
        << "rel_tol = " << format_double(q.rel_tol) << "\n"
        << "abs_tol = " << format_double(q.abs_tol) << "\n"
        << "max_subdivisions = " << q.max_subdivisions << "\n"
        << "tail_cutoff_multiplier = " << format_double(q.tail_cutoff_multiplier) << "\n"
        << "\n[run]\n"
        << "engines = " << join(s.engines) << "\n"
        << "outputs = " << join(s.outputs) << "\n";
    return out.str();
}

namespace {

struct PresetEntry {
    std::string name;
    std::string description;
    Scenario scenario;
};

Scenario make(std::string name, int n, double eps, double delta, Preparation prep, double t_max,
              std::vector<Engine> engines, std::vector<std::string> outputs) {
    Scenario s;
    s.name = std::move(name);
    s.sys = {eps, delta, n};
    s.bath = {0.05, 5.0, 1.0};
    s.prep = prep;
    s.sim.t_max = t_max;
    s.engines = std::move(engines);
    s.outputs = std::move(outputs);
    return s;
}

const std::vector<PresetEntry>& presets() {
    using E = Engine;
    using P = Preparation;
    static const std::vector<PresetEntry> table{
        {"fig1", "N=1 dephasing, master equation and exact solution",
         make("fig1", 1, 0.0, 4.0, P::DownZ, 2.0, {E::MasterEquation, E::ExactDephasing}, {"jz"})},
        {"fig2", "N=10 dephasing, master equation and exact solution",
         make("fig2", 10, 0.0, 4.0, P::DownZ, 2.0, {E::MasterEquation, E::ExactDephasing}, {"jz"})},
        {"fig3", "N=2, eps=0.5, Delta=3.5",
         make("fig3", 2, 0.5, 3.5, P::DownZ, 2.0, {E::MasterEquation}, {"jz"})},
        {"fig4", "N=10, eps=0.5, Delta=3.5",
         make("fig4", 10, 0.5, 3.5, P::DownZ, 2.0, {E::MasterEquation}, {"jz"})},
        {"fig5", "N=10, eps=1.5, Delta=2.5",
         make("fig5", 10, 1.5, 2.5, P::DownZ, 2.0, {E::MasterEquation}, {"jz"})},
        {"fig6", "N=2, eps=0.5, Delta=3.5, jz2 observable",
         make("fig6", 2, 0.5, 3.5, P::DownZ, 2.0, {E::MasterEquation}, {"jz2"})},
        {"fig7", "N=10, eps=0.5, Delta=3.5, jz2 observable",
         make("fig7", 10, 0.5, 3.5, P::DownZ, 2.0, {E::MasterEquation}, {"jz2"})},
        {"fig8", "N=1000 dephasing at short times, exact solution and short-time expansion",
         make("fig8", 1000, 0.0, 4.0, P::DownZ, 0.05, {E::ExactDephasing, E::ShortTime}, {"jz"})},
        {"fig9", "N=1000, eps=0.5, Delta=3.5 at short times",
         make("fig9", 1000, 0.5, 3.5, P::DownZ, 0.05, {E::ShortTime}, {"jz"})},
        {"fig10", "N=10, eps=1, Delta=3, J_x-aligned preparation, jx observable",
         make("fig10", 10, 1.0, 3.0, P::PlusX, 2.0, {E::MasterEquation}, {"jx"})},
        {"upz", "N=10, eps=1.5, Delta=2.5, spins prepared up",
         make("upz", 10, 1.5, 2.5, P::UpZ, 2.0, {E::MasterEquation}, {"jz"})},
    };
    return table;
}

const PresetEntry& find_preset(const std::string& name) {
    for (const auto& p : presets())
        if (p.name == name) return p;
    throw std::invalid_argument("unknown preset '" + name + "'");
}

}  // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> out;
    for (const auto& p : presets()) out.push_back(p.name);
    return out;
}

Scenario preset(const std::string& name) { return find_preset(name).scenario; }

std::string preset_description(const std::string& name) { return find_preset(name).description; }

}  // namespace spinbath
