#include "telemsim/units.hpp"

#include <cctype>
#include <cstdio>
#include <stdexcept>

namespace telemsim {

u64 parse_size(const std::string& text) {
  size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) i++;
  size_t digits_start = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) i++;
  if (i == digits_start)
    throw std::invalid_argument("parse_size: no digits in '" + text + "'");
  u64 value = std::stoull(text.substr(digits_start, i - digits_start));
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) i++;
  std::string unit;
  for (; i < text.size(); i++) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) break;
    unit.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(text[i]))));
  }
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) i++;
  if (i != text.size())
    throw std::invalid_argument("parse_size: trailing garbage in '" + text + "'");

  u64 mult = 1;
  if (unit.empty() || unit == "b") {
    mult = 1;
  } else if (unit == "kib" || unit == "kb" || unit == "k") {
    mult = kKiB;
  } else if (unit == "mib" || unit == "mb" || unit == "m") {
    mult = kMiB;
  } else if (unit == "gib" || unit == "gb" || unit == "g") {
    mult = kGiB;
  } else if (unit == "tib" || unit == "tb" || unit == "t") {
    mult = kTiB;
  } else {
    throw std::invalid_argument("parse_size: unknown unit '" + unit + "'");
  }
  if (value != 0 && value > UINT64_MAX / mult)
    throw std::invalid_argument("parse_size: overflow in '" + text + "'");
  return value * mult;
}

std::string format_bytes(u64 bytes) {
  char buf[64];
  if (bytes >= kTiB && bytes % kTiB == 0)
    std::snprintf(buf, sizeof buf, "%llu TiB", (unsigned long long)(bytes / kTiB));
  else if (bytes >= kGiB && bytes % kGiB == 0)
    std::snprintf(buf, sizeof buf, "%llu GiB", (unsigned long long)(bytes / kGiB));
  else if (bytes >= kMiB && bytes % kMiB == 0)
    std::snprintf(buf, sizeof buf, "%llu MiB", (unsigned long long)(bytes / kMiB));
  else if (bytes >= kKiB && bytes % kKiB == 0)
    std::snprintf(buf, sizeof buf, "%llu KiB", (unsigned long long)(bytes / kKiB));
  else
    std::snprintf(buf, sizeof buf, "%llu B", (unsigned long long)bytes);
  return buf;
}

}  // namespace telemsim
