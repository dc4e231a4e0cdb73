#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>

#include "shemtj/rng.hpp"

namespace shemtj {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shortest round-trip decimal form; identical bytes for identical doubles.
inline std::string fmt_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
  double v{};
  const char* b = s.data();
  const char* e = s.data() + s.size();
  auto res = std::from_chars(b, e, v);
  if (res.ec != std::errc{} || res.ptr != e)
    throw ParseError("not a number: '" + std::string(s) + "'");
  return v;
}

// Scaled-unit boundary (values stored in nm, uA, ... but held in SI). Parsing
// always divides; display picks, among the 1-ulp neighbours of value * scale,
// the one whose division recovers the original bits, so a struct survives a
// save/load cycle bit-exactly whenever a representable preimage exists.
inline double parse_scaled(std::string_view s, double scale) {
  return parse_double(s) / scale;
}

inline double scaled_for_display(double value, double scale) {
  const double y0 = value * scale;
  for (double y : {y0, std::nextafter(y0, INFINITY), std::nextafter(y0, -INFINITY)})
    if (y / scale == value) return y;
  return y0;
}

inline std::string fmt_scaled(double value, double scale) {
  return fmt_double(scaled_for_display(value, scale));
}

inline long long parse_int(std::string_view s) {
  long long v{};
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw ParseError("not an integer: '" + std::string(s) + "'");
  return v;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

// Short stable content digest for embedding in result metadata.
inline std::string content_digest(std::string_view text) {
  const std::uint64_t h = fnv1a64(text);
  char buf[17];
  static const char* hex = "0123456789abcdef";
  for (int i = 0; i < 16; i++) buf[i] = hex[(h >> (60 - 4 * i)) & 0xF];
  buf[16] = 0;
  return std::string(buf);
}

}  // namespace shemtj
