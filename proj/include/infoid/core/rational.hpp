#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace infoid {

// Exact positive-or-zero ratio used for resolution scales.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den);

  static Rational parse(std::string_view text);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_integer() const noexcept { return den_ == 1; }

  // ceil(n * this) and floor(n * this) for integer n >= 0.
  std::int64_t ceil_mul(std::int64_t n) const;
  std::int64_t floor_mul(std::int64_t n) const;

  std::string str() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend Rational operator*(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 1;
  std::int64_t den_ = 1;
};

}  // namespace infoid
