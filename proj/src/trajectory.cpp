#include "liq/trajectory.hpp"

namespace liq {

const char* to_string(TerminationKind kind) {
  switch (kind) {
    case TerminationKind::horizon: return "horizon";
    case TerminationKind::hazard: return "hazard";
    case TerminationKind::barrier: return "barrier";
  }
  return "unknown";
}

}  // namespace liq
