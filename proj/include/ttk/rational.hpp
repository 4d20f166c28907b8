#ifndef TTK_RATIONAL_HPP
#define TTK_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace ttk {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational, always normalized with positive denominator.
struct Rat {
  BigInt num{0};
  BigInt den{1};

  Rat() = default;
  Rat(BigInt n) : num(std::move(n)), den(1) {}
  Rat(long long n) : num(n), den(1) {}
  Rat(BigInt n, BigInt d) : num(std::move(n)), den(std::move(d)) { normalize(); }

  void normalize() {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) { num = -num; den = -den; }
    BigInt g = boost::multiprecision::gcd(num < 0 ? BigInt(-num) : num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  bool is_integer() const { return den == 1; }

  friend Rat operator+(const Rat& a, const Rat& b) { return Rat(a.num * b.den + b.num * a.den, a.den * b.den); }
  friend Rat operator-(const Rat& a, const Rat& b) { return Rat(a.num * b.den - b.num * a.den, a.den * b.den); }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(a.num * b.num, a.den * b.den); }
  friend Rat operator/(const Rat& a, const Rat& b) { return Rat(a.num * b.den, a.den * b.num); }
  friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) { return a.num * b.den < b.num * a.den; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.num * b.den <= b.num * a.den; }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator>=(const Rat& a, const Rat& b) { return b <= a; }

  std::string str() const {
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
  }
};

// Index values are half-integers; stored exactly as twice the value.
struct Half {
  long long twice{0};

  Half() = default;
  explicit Half(long long t) : twice(t) {}

  friend Half operator+(Half a, Half b) { return Half(a.twice + b.twice); }
  friend bool operator==(Half a, Half b) { return a.twice == b.twice; }
  friend bool operator<(Half a, Half b) { return a.twice < b.twice; }
  friend bool operator>(Half a, Half b) { return a.twice > b.twice; }
  friend bool operator<=(Half a, Half b) { return a.twice <= b.twice; }

  std::string str() const {
    if (twice % 2 == 0) return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
  }
};

}  // namespace ttk

#endif
