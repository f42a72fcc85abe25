#include <algorithm>
#include <stdexcept>
#include <string>

#include "nilhsp/zerosum.hpp"

namespace nilhsp {

namespace {

constexpr WideCount kWideMax = ~WideCount{0};

WideCount checked_mul(WideCount a, WideCount b) {
  if (a != 0 && b > kWideMax / a) throw std::overflow_error("length exceeds 128 bits");
  return a * b;
}

WideCount checked_pow(WideCount base, std::uint64_t exponent) {
  WideCount result = 1;
  for (std::uint64_t i = 0; i < exponent; ++i) result = checked_mul(result, base);
  return result;
}

}  // namespace

std::string to_decimal(WideCount value) {
  if (value == 0) return "0";
  std::string digits;
  while (value > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

LengthSchedule::LengthSchedule(PrimeModulus p) : p_(p) {
  if (p.value() == 2) throw std::invalid_argument("length schedule needs an odd prime");
  d_.push_back((p.value() - 1) / 2);
  while (d_.back() > 1) d_.push_back(d_.back() / 2);
}

WideCount LengthSchedule::h(std::size_t i, std::uint64_t n) const {
  if (i >= d_.size()) throw std::out_of_range("schedule level");
  if (i == 0) return WideCount{n} + 1;
  const std::uint64_t widened = (d_[i - 1] + 1) / 2 * n;
  return checked_mul(h(i - 1, n), h(i - 1, widened));
}

WideCount LengthSchedule::bound_rhs(std::size_t i, std::uint64_t n) const {
  if (i >= d_.size()) throw std::out_of_range("schedule level");
  const WideCount n1 = checked_pow(WideCount{n} + 1, std::uint64_t{1} << i);
  if (i == 0) return n1;
  WideCount prod = 1;
  for (std::size_t j = 0; j < i; ++j) prod = checked_mul(prod, (d_[j] + 1) / 2);
  return checked_mul(checked_pow(prod, std::uint64_t{1} << (i - 1)), n1);
}

unsigned collision_levels(PrimeModulus p) {
  unsigned levels = 0;
  while ((std::uint64_t{1} << levels) < p.value()) ++levels;
  return levels;
}

WideCount required_signed_length(PrimeModulus p, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("dimension must be at least 1");
  if (p.value() == 2) return WideCount{n} + 1;
  const LengthSchedule schedule(p);
  return schedule.h(schedule.levels(), n);
}

WideCount required_length(PrimeModulus p, std::uint64_t n) {
  if (p.value() == 2) return required_signed_length(p, n);
  return checked_pow(required_signed_length(p, n), collision_levels(p));
}

std::uint64_t davenport_constant(PrimeModulus p, std::uint64_t n) { return 1 + n * (p.value() - 1); }

}  // namespace nilhsp
