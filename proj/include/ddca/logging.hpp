#pragma once

#include <string_view>

namespace ddca {

/// Points the default logger at stderr and sets its level from DDCA_LOG
/// (trace, debug, info, warn, error, off). Unset or unrecognised means warn.
void configure_logging();

/// Same as configure_logging but with an explicit level name.
void configure_logging(std::string_view level);

}  // namespace ddca
