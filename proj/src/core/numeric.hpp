#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace synccensus {

// Exact counters. (k!)^n overflows 64 bits well inside the supported range.
__extension__ typedef unsigned __int128 u128;

std::string to_decimal(u128 value);
std::optional<u128> parse_decimal(std::string_view text);

// Throws Error(kBudget) on overflow.
u128 checked_mul(u128 a, u128 b);
u128 checked_add(u128 a, u128 b);

u128 gcd(u128 a, u128 b);
u128 isqrt(u128 value);

u128 factorial(int m);

// Exact non-negative rational, always stored reduced.
class Rational {
 public:
  Rational() = default;
  Rational(u128 num, u128 den);

  u128 num() const { return num_; }
  u128 den() const { return den_; }

  double to_double() const;
  std::string str() const;  // "num/den"

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  u128 num_ = 0;
  u128 den_ = 1;
};

// Decimal rendering of num/den rounded half-up to `decimals` places.
std::string round_half_up(u128 num, u128 den, int decimals);

// Population standard deviation sqrt((count*sum_sq - sum^2)) / count rounded
// half-up to `decimals` places, computed exactly.
std::string population_std_dev(u128 count, u128 sum, u128 sum_sq, int decimals);
double population_std_dev_value(u128 count, u128 sum, u128 sum_sq);

}  // namespace synccensus
