#include "naqkit/constants.hpp"

namespace naqkit {

const ConstantsRegistry& constants() {
  static const ConstantsRegistry registry{};
  return registry;
}

}  // namespace naqkit
