#include "liq/market_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace liq {

namespace {

void require(bool ok, const char* field, const char* what) {
  if (!ok) {
    throw std::invalid_argument(std::string("impact params: ") + field + " " +
                                what);
  }
}

}  // namespace

void ImpactParams::validate() const {
  require(std::isfinite(eta) && eta >= 0.0, "eta", "must be finite and >= 0");
  require(std::isfinite(nu) && nu > 0.0, "nu", "must be finite and > 0");
  require(std::isfinite(gamma) && gamma > 0.0, "gamma", "must be finite and > 0");
  require(std::isfinite(sigma) && sigma >= 0.0, "sigma", "must be finite and >= 0");
  require(std::isfinite(phi) && phi >= 0.0, "phi", "must be finite and >= 0");
  require(std::isfinite(T) && T > 0.0, "T", "must be finite and > 0");
  require(std::isfinite(Q) && Q > 0.0, "Q", "must be finite and > 0");
  require(std::isfinite(s0), "s0", "must be finite");
}

double ImpactParams::running_cost(double rate, double inventory) const {
  return -nu * rate * rate - eta * inventory * rate -
         gamma * sigma * sigma * inventory * inventory;
}

bool ImpactParams::liquidity_dominance() const {
  return 2.0 * phi > eta + 2.0 * sigma * std::sqrt(gamma * nu);
}

}  // namespace liq
