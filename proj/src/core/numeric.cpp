#include "core/numeric.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace synccensus {

std::string to_decimal(u128 value) {
  if (value == 0) return "0";
  std::string out;
  while (value != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::optional<u128> parse_decimal(std::string_view text) {
  if (text.empty()) return std::nullopt;
  u128 value = 0;
  for (char c : text) {
    if (c < '0' || c > '9') return std::nullopt;
    u128 next;
    if (__builtin_mul_overflow(value, u128{10}, &next)) return std::nullopt;
    if (__builtin_add_overflow(next, u128(c - '0'), &next)) return std::nullopt;
    value = next;
  }
  return value;
}

u128 checked_mul(u128 a, u128 b) {
  u128 out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw Error(ErrorCode::kBudget, "exact count exceeds 128-bit range");
  }
  return out;
}

u128 checked_add(u128 a, u128 b) {
  u128 out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw Error(ErrorCode::kBudget, "exact count exceeds 128-bit range");
  }
  return out;
}

u128 gcd(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u128 isqrt(u128 value) {
  if (value < 2) return value;
  // Newton iteration from an upper bound.
  u128 x = static_cast<u128>(std::sqrt(static_cast<long double>(value))) + 2;
  while (true) {
    u128 y = (x + value / x) / 2;
    if (y >= x) break;
    x = y;
  }
  while (x * x > value) --x;
  while ((x + 1) * (x + 1) <= value) ++x;
  return x;
}

u128 factorial(int m) {
  u128 out = 1;
  for (int i = 2; i <= m; ++i) out = checked_mul(out, static_cast<u128>(i));
  return out;
}

Rational::Rational(u128 num, u128 den) {
  if (den == 0) throw Error(ErrorCode::kInvalidArgument, "rational with zero denominator");
  u128 g = gcd(num, den);
  if (g == 0) g = 1;
  num_ = num / g;
  den_ = den / g;
  if (num_ == 0) den_ = 1;
}

double Rational::to_double() const {
  return static_cast<double>(static_cast<long double>(num_) / static_cast<long double>(den_));
}

std::string Rational::str() const { return to_decimal(num_) + "/" + to_decimal(den_); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  u128 lhs, rhs;
  if (!__builtin_mul_overflow(a.num_, b.den_, &lhs) && !__builtin_mul_overflow(b.num_, a.den_, &rhs)) {
    return lhs <=> rhs;
  }
  // Continued-fraction style comparison avoids overflow.
  u128 qa = a.num_ / a.den_, qb = b.num_ / b.den_;
  if (qa != qb) return qa <=> qb;
  u128 ra = a.num_ % a.den_, rb = b.num_ % b.den_;
  if (ra == 0 || rb == 0) return (ra == 0 ? 0 : 1) <=> (rb == 0 ? 0 : 1);
  // a = qa + ra/a.den; compare ra/a.den vs rb/b.den <=> compare b.den/rb vs a.den/ra
  return Rational(b.den_, rb) <=> Rational(a.den_, ra);
}

std::string round_half_up(u128 num, u128 den, int decimals) {
  if (den == 0) throw Error(ErrorCode::kInvalidArgument, "division by zero");
  u128 scale = 1;
  for (int i = 0; i < decimals; ++i) scale = checked_mul(scale, 10);
  // floor((2 * num * scale + den) / (2 * den))
  u128 scaled = checked_add(checked_mul(checked_mul(num, scale), 2), den) / checked_mul(den, 2);
  std::string digits = to_decimal(scaled / scale);
  if (decimals == 0) return digits;
  std::string frac = to_decimal(scaled % scale);
  frac.insert(0, static_cast<std::size_t>(decimals) - frac.size(), '0');
  return digits + "." + frac;
}

std::string population_std_dev(u128 count, u128 sum, u128 sum_sq, int decimals) {
  if (count == 0) throw Error(ErrorCode::kInvalidArgument, "std dev of an empty class");
  u128 scale = 1;
  for (int i = 0; i < decimals; ++i) scale = checked_mul(scale, 10);
  // variance * count^2 = count*sum_sq - sum^2 ; std = sqrt(that) / count.
  u128 spread = checked_mul(count, sum_sq) - checked_mul(sum, sum);
  // rounded = floor(sqrt(spread) * scale / count + 1/2)
  //         = floor((floor(2 * sqrt(spread * scale^2)) + count) / (2 * count))
  u128 radicand = checked_mul(checked_mul(spread, checked_mul(scale, scale)), 4);
  u128 scaled = checked_add(isqrt(radicand), count) / checked_mul(count, 2);
  std::string digits = to_decimal(scaled / scale);
  if (decimals == 0) return digits;
  std::string frac = to_decimal(scaled % scale);
  frac.insert(0, static_cast<std::size_t>(decimals) - frac.size(), '0');
  return digits + "." + frac;
}

double population_std_dev_value(u128 count, u128 sum, u128 sum_sq) {
  if (count == 0) return 0.0;
  long double n = static_cast<long double>(count);
  u128 a, b;
  if (!__builtin_mul_overflow(count, sum_sq, &a) && !__builtin_mul_overflow(sum, sum, &b)) {
    return static_cast<double>(std::sqrt(static_cast<long double>(a - b)) / n);
  }
  long double mean = static_cast<long double>(sum) / n;
  long double var = static_cast<long double>(sum_sq) / n - mean * mean;
  return static_cast<double>(std::sqrt(std::max(var, 0.0L)));
}

}  // namespace synccensus
