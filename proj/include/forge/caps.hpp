#pragma once

#include <charconv>
#include <cstddef>
#include <string>
#include <string_view>

#include "error.hpp"

namespace forge
{

/// Desk-scale limits. Every enumeration that could blow up checks one of
/// these and raises CapExceeded instead of running away.
struct Caps
{
  std::size_t closure = 1'000'000;
  std::size_t automorphism = 2000;
  std::size_t oracle = 20000;
};

inline Caps &caps()
{
  static Caps current;
  return current;
}

/// Overrides the process-wide caps for the lifetime of the object.
class ScopedCaps
{
public:
  explicit ScopedCaps(Caps const &c) : saved_(caps()) { caps() = c; }
  ScopedCaps(ScopedCaps const &) = delete;
  ScopedCaps &operator=(ScopedCaps const &) = delete;
  ~ScopedCaps() { caps() = saved_; }

private:
  Caps saved_;
};

/// Parses "closure:automorphism:oracle"; empty fields keep the default.
inline Caps parse_caps(std::string_view text, Caps base = {})
{
  std::size_t *fields[] = {&base.closure, &base.automorphism, &base.oracle};
  std::size_t field = 0;
  while (true) {
    auto colon = text.find(':');
    auto token = text.substr(0, colon);
    if (field >= 3)
      throw ParseError("caps: expected at most three fields");
    if (!token.empty()) {
      std::size_t value = 0;
      auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc() || end != token.data() + token.size() || value == 0)
        throw ParseError("caps: bad value '" + std::string(token) + "'");
      *fields[field] = value;
    }
    ++field;
    if (colon == std::string_view::npos)
      break;
    text.remove_prefix(colon + 1);
  }
  return base;
}

} // namespace forge
