#pragma once

#include <map>
#include <string>

#include "liq/market_model.hpp"
#include "liq/model2.hpp"

namespace liq {

// Parses a flat key=value file: one assignment per line, '#' starts a
// comment, blank lines are skipped. Throws std::invalid_argument naming the
// offending token (unknown key, unparsable value, missing file).
std::map<std::string, double> parse_key_value_file(const std::string& path);

// True for the recognized market-parameter keys: eta, nu, gamma, sigma,
// phi, T, Q, s0.
bool is_impact_key(const std::string& key);

// Assigns one key to its field; throws std::invalid_argument for an
// unknown key. Validation of the resulting values happens separately.
void apply_impact_key(ImpactParams& p, const std::string& key, double value);

// Applies every entry of a parsed config file onto the parameter set.
void apply_config_file(ImpactParams& p, const std::string& path);

// Loads a two-column CSV of (time, hazard rate) knots, one pair per line,
// optional "t,l" header, '#' comments. Times must be strictly increasing
// and rates nonnegative; errors name the offending row number.
HazardSpec load_hazard_table(const std::string& path);

// Formats a double with 12 significant digits for CSV output.
std::string format_sig(double x);

}  // namespace liq
