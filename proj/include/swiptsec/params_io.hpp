#pragma once

#include <string>

#include "swiptsec/channel.hpp"

namespace swiptsec {
namespace params_io {

// Parameter keys: omega_s, omega_e, gbar_s, gbar_e, n0, sigma2_s, sigma2_e,
// rho_s, rho_e, delta_s, delta_e, m_s, m_e, n_eves, r_s, zeta_s, zeta_e.
//
// Power-like keys (omega_*, gbar_*, n0, sigma2_*) accept a `_db` suffix
// (value converted as 10^(x/10) at parse time) or an explicit `_lin` suffix.
// Setting gbar_s/gbar_e pins the average link SNR independently of the link
// power; when unset it tracks the link power (unit-mean fading).

// Applies one key to the parameter set. Throws std::invalid_argument naming
// the key when it is unknown, carries an invalid suffix, or the value is not
// representable (e.g. fractional n_eves).
void set_field(SystemParams& p, const std::string& key, double value);

// Sweep-axis application. Identical to set_field except for gbar_s/gbar_e,
// which act as the average-SNR power dial: the link power is set to the
// value and the fading mean returns to one (tracking).
void apply_axis(SystemParams& p, const std::string& axis, double value);

// True if `key` (without suffix) may carry _db/_lin.
bool is_power_key(const std::string& key);

// Parses `key = value` lines; `#` starts a comment; blank lines ignored.
// Starts from default-constructed SystemParams. Throws std::invalid_argument
// with line number and offending key on any error.
SystemParams parse_config_text(const std::string& text);
SystemParams parse_config_file(const std::string& path);

// Applies one `key=value` override string (CLI --set syntax).
void apply_override(SystemParams& p, const std::string& assignment);

// Serializes every field as `key = value` lines with full precision; the
// gbar keys appear only when pinned, so tracking state survives a round
// trip. parse_config_text(dump_config(p)) reproduces p exactly.
std::string dump_config(const SystemParams& p);

// Built-in preset matching the simulation-parameter table: link powers
// 30/10 dB, antenna noise 0.1 dB, processing noise 0 dB, m = 2, rho = 0.8,
// delta = 0.2, five eavesdroppers, target rate 1, conversion efficiency 0.8.
SystemParams table1_preset();

}  // namespace params_io
}  // namespace swiptsec
