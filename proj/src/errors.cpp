#include "hopfdde/errors.hpp"

namespace hopfdde {

namespace {
std::string format_config_message(const std::string& key, int line, const std::string& message) {
  std::string out;
  if (line > 0) out += "line " + std::to_string(line) + ": ";
  if (!key.empty()) out += key + ": ";
  return out + message;
}
}  // namespace

ConfigError::ConfigError(const std::string& key, int line, const std::string& message)
    : Error(format_config_message(key, line, message)), key_(key), line_(line) {}

}  // namespace hopfdde
