#include "ddca/logging.hpp"

#include <cstdlib>
#include <string>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

namespace ddca {

void configure_logging(std::string_view level) {
  auto logger = spdlog::get("ddca");
  if (!logger) {
    logger = spdlog::stderr_color_mt("ddca");
    logger->set_pattern("[%l] %v");
    spdlog::set_default_logger(logger);
  }
  auto parsed = spdlog::level::from_str(std::string(level));
  // from_str maps unknown names to off; keep the warn default for typos.
  if (parsed == spdlog::level::off && level != "off") parsed = spdlog::level::warn;
  logger->set_level(parsed);
}

void configure_logging() {
  const char* env = std::getenv("DDCA_LOG");
  configure_logging(env ? std::string_view(env) : std::string_view("warn"));
}

}  // namespace ddca
