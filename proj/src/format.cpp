#include "rnaudit/format.hpp"

#include <charconv>
#include <cstdio>

namespace rnaudit {

std::string fixed6(double x) {
  char buf[64];
  int len = std::snprintf(buf, sizeof buf, "%.6f", x);
  std::string s(buf, static_cast<std::size_t>(len));
  if (s == "-0.000000") s.erase(0, 1);
  return s;
}

std::string fixed6_or_na(const std::optional<double>& x) {
  return x ? fixed6(*x) : std::string("n/a");
}

std::string short_decimal(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

}  // namespace rnaudit
