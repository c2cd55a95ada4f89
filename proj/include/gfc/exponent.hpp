#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace gfc {

/// Exact rational number p/q stored in lowest terms with q > 0.
///
/// Arithmetic is overflow-checked; overflow raises ErrorKind::ExponentOverflow
/// instead of wrapping.
class Exponent {
 public:
  constexpr Exponent() = default;
  Exponent(std::int64_t num, std::int64_t den = 1);

  static Exponent parse(std::string_view text);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  double value() const noexcept {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }
  bool is_integer() const noexcept { return den_ == 1; }
  bool is_positive() const noexcept { return num_ > 0; }

  /// Largest integer <= this.
  std::int64_t floor() const noexcept;

  std::string str() const;

  friend Exponent operator+(const Exponent& a, const Exponent& b);
  friend Exponent operator-(const Exponent& a, const Exponent& b);
  friend Exponent operator*(const Exponent& a, const Exponent& b);
  friend Exponent operator/(const Exponent& a, const Exponent& b);
  Exponent operator-() const;

  Exponent& operator+=(const Exponent& o) { return *this = *this + o; }
  Exponent& operator-=(const Exponent& o) { return *this = *this - o; }

  friend bool operator==(const Exponent&, const Exponent&) = default;
  friend std::strong_ordering operator<=>(const Exponent& a,
                                          const Exponent& b) noexcept;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// gcd of two nonnegative rationals (largest r with a/r, b/r integers).
Exponent rational_gcd(const Exponent& a, const Exponent& b);

/// lcm of two positive integers with overflow check.
std::int64_t checked_lcm(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t checked_add(std::int64_t a, std::int64_t b);

}  // namespace gfc
