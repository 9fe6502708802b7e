#pragma once

#include <string>

namespace tk {

// Root of the shipped data files: $TWISTKNOT_DATA_DIR if set, else the source tree copy.
std::string data_dir();

}  // namespace tk
