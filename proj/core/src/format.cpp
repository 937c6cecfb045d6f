#include "bkev/format.hpp"

#include <charconv>
#include <cmath>

#include "bkev/error.hpp"

namespace bkev {

std::string format_number(double value) {
  if (value == 0.0) return "0";
  char buf[512];
  const double mag = std::abs(value);
  const auto [end, ec] = mag >= 1e-6 && mag < 1e17
                             ? std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed)
                             : std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw Error("format_number: conversion failed");
  return std::string(buf, end);
}

double parse_number(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || end != text.data() + text.size())
    throw Error("not a number: '" + std::string(text) + "'");
  return v;
}

}  // namespace bkev
