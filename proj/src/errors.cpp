#include "orbitlab/errors.hpp"

namespace orbitlab {

void check_internal(bool ok, const std::string& what) {
  if (!ok) throw InternalError(what);
}

}  // namespace orbitlab
