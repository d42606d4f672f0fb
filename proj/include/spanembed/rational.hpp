#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace spanembed {

/// Exact non-negative-friendly rational with a normalized positive denominator.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) {
    if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
    normalize();
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// floor(*this * k) computed exactly.
  std::int64_t floor_times(std::int64_t k) const {
    __int128 p = static_cast<__int128>(num_) * k;
    __int128 q = p / den_;
    if (p % den_ != 0 && p < 0) --q;
    return static_cast<std::int64_t>(q);
  }

  std::string str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Accepts "a", "a/b" or a plain decimal such as "0.15" (converted exactly).
  static Rational parse(std::string_view text) {
    auto fail = [&] { throw std::invalid_argument("Rational: cannot parse '" + std::string(text) + "'"); };
    if (text.empty()) fail();
    auto parse_int = [&](std::string_view s) {
      if (s.empty()) fail();
      std::size_t pos = 0;
      bool neg = false;
      if (s[0] == '-') { neg = true; pos = 1; }
      if (pos == s.size()) fail();
      std::int64_t v = 0;
      for (; pos < s.size(); ++pos) {
        if (s[pos] < '0' || s[pos] > '9') fail();
        v = v * 10 + (s[pos] - '0');
      }
      return neg ? -v : v;
    };
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
      return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
      std::string_view whole = text.substr(0, dot);
      std::string_view frac = text.substr(dot + 1);
      if (frac.size() > 15) fail();
      bool neg = !whole.empty() && whole[0] == '-';
      std::int64_t w = (whole.empty() || whole == "-") ? 0 : parse_int(whole);
      std::int64_t scale = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
      std::int64_t f = frac.empty() ? 0 : parse_int(frac);
      std::int64_t mag = (w < 0 ? -w : w) * scale + f;
      return Rational(neg ? -mag : mag, scale);
    }
    return Rational(parse_int(text));
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend auto operator<=>(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ <=> static_cast<__int128>(b.num_) * a.den_;
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  void normalize() {
    if (den_ < 0) { den_ = -den_; num_ = -num_; }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace spanembed
