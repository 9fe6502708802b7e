#include "twistknot/data_dir.hpp"

#include <cstdlib>

namespace tk {

std::string data_dir() {
  if (const char* env = std::getenv("TWISTKNOT_DATA_DIR"); env != nullptr && *env != '\0') return env;
  return TWISTKNOT_DATA_DIR;
}

}  // namespace tk
