#include "liq/config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace liq {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string strip_comment(const std::string& line) {
  std::size_t pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

double parse_number(const std::string& token, const std::string& where) {
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &consumed);
  } catch (const std::exception&) {
    throw std::invalid_argument(where + ": cannot parse number '" + token + "'");
  }
  if (consumed != token.size()) {
    throw std::invalid_argument(where + ": cannot parse number '" + token + "'");
  }
  return value;
}

}  // namespace

std::map<std::string, double> parse_key_value_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("config: cannot open '" + path + "'");
  }
  std::map<std::string, double> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body = trim(strip_comment(line));
    if (body.empty()) continue;
    std::size_t eq = body.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key=value, got '" + body + "'");
    }
    std::string key = trim(body.substr(0, eq));
    std::string value = trim(body.substr(eq + 1));
    if (key.empty()) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": empty key in '" + body + "'");
    }
    entries[key] =
        parse_number(value, "config line " + std::to_string(line_no));
  }
  return entries;
}

bool is_impact_key(const std::string& key) {
  return key == "eta" || key == "nu" || key == "gamma" || key == "sigma" ||
         key == "phi" || key == "T" || key == "Q" || key == "s0";
}

void apply_impact_key(ImpactParams& p, const std::string& key, double value) {
  if (key == "eta") {
    p.eta = value;
  } else if (key == "nu") {
    p.nu = value;
  } else if (key == "gamma") {
    p.gamma = value;
  } else if (key == "sigma") {
    p.sigma = value;
  } else if (key == "phi") {
    p.phi = value;
  } else if (key == "T") {
    p.T = value;
  } else if (key == "Q") {
    p.Q = value;
  } else if (key == "s0") {
    p.s0 = value;
  } else {
    throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

void apply_config_file(ImpactParams& p, const std::string& path) {
  for (const auto& [key, value] : parse_key_value_file(path)) {
    apply_impact_key(p, key, value);
  }
}

HazardSpec load_hazard_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("hazard file: cannot open '" + path + "'");
  }
  std::vector<double> times;
  std::vector<double> rates;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body = trim(strip_comment(line));
    if (body.empty()) continue;
    std::size_t comma = body.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("hazard file row " + std::to_string(line_no) +
                                  ": expected 't,l', got '" + body + "'");
    }
    std::string t_tok = trim(body.substr(0, comma));
    std::string l_tok = trim(body.substr(comma + 1));
    if (times.empty() && t_tok == "t" && l_tok == "l") continue;  // header
    std::string where = "hazard file row " + std::to_string(line_no);
    double t = parse_number(t_tok, where);
    double l = parse_number(l_tok, where);
    if (!times.empty() && t <= times.back()) {
      throw std::invalid_argument(where + ": non-increasing time " + t_tok);
    }
    if (l < 0.0) {
      throw std::invalid_argument(where + ": negative rate " + l_tok);
    }
    times.push_back(t);
    rates.push_back(l);
  }
  if (times.empty()) {
    throw std::invalid_argument("hazard file: no data rows in '" + path + "'");
  }
  return HazardSpec::tabulated(std::move(times), std::move(rates));
}

std::string format_sig(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace liq
