#include "tslab/errors.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace tslab {
namespace {

void read_env(const char* name, std::size_t& target) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return;
  std::size_t value = 0;
  auto [end, ec] = std::from_chars(raw, raw + std::strlen(raw), value);
  if (ec != std::errc{} || *end != '\0' || value == 0)
    throw InputError(std::string("invalid value for ") + name + ": '" + raw + "'");
  target = value;
}

}  // namespace

Limits Limits::from_environment() {
  Limits limits;
  read_env("TSLAB_MAX_SUPPORT", limits.max_support);
  read_env("TSLAB_MAX_WINDOW", limits.max_window);
  return limits;
}

void require_within(std::size_t value, std::size_t cap, const std::string& what) {
  if (value > cap)
    throw LimitError(what + " " + std::to_string(value) + " exceeds cap " + std::to_string(cap));
}

}  // namespace tslab
