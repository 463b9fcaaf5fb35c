// scenario.hpp: run descriptions, their text format and the named presets
//
// Format: one `key = value` per line, grouped under section headers.
//
//   # comment
//   name = fig1
//   [system]      n_atoms, epsilon, delta
//   [bath]        g, omega_c, beta
//   [preparation] state = down_z | up_z | plus_x
//   [simulation]  t_max, dt, kernel_grid_dt, record_every, correlations = both | with | without
//   [quadrature]  rel_tol, abs_tol, max_subdivisions, tail_cutoff_multiplier
//   [run]         engines = comma list of master_equation, exact_dephasing, short_time
//                 outputs = comma list of jz, jz2, jy, jx
//
// Keys outside a section must come before the first header. Every key is
// optional except name; dt = 0 and kernel_grid_dt = 0 select the defaults.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "spinbath/bath.hpp"
#include "spinbath/corr_kernel.hpp"
#include "spinbath/master_equation.hpp"
#include "spinbath/spin_algebra.hpp"

namespace spinbath {

enum class Engine { MasterEquation, ExactDephasing, ShortTime };

std::string to_string(Engine e);
Engine engine_from_string(const std::string& name);

enum class CorrelationSetting { Both, With, Without };

struct Scenario {
    std::string name;
    SystemParams sys{};
    BathSpec bath{};
    Preparation prep{Preparation::DownZ};
    SimConfig sim{};
    CorrelationSetting correlations{CorrelationSetting::Both};
    std::vector<Engine> engines{Engine::MasterEquation};
    std::vector<std::string> outputs{"jz"};

    /// Correlation flags to run, with-corr first.
    std::vector<bool> correlation_flags() const;
    /// Throws DomainError / UnsupportedModelError on invalid parameter or engine choices.
    void validate() const;

    bool operator==(const Scenario& other) const;
};

/// Parse failure with a 1-based position in the input.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line, int column);
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);
/// Canonical text; parse_scenario(serialize(s)) == s.
std::string serialize(const Scenario& s);

std::vector<std::string> preset_names();
/// Throws std::invalid_argument for unknown names.
Scenario preset(const std::string& name);
std::string preset_description(const std::string& name);

/// 17 significant digits, enough for an exact round trip.
std::string format_double(double x);

}  // namespace spinbath
