#pragma once

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>

#include "lpa/errors.hpp"

namespace lpa {

// Exact field coefficients. Two models are provided: arbitrary-precision
// rationals and prime fields GF(p) with p < 2^31. Values are self-describing
// (a GF(p) value carries its modulus), so a scalar doubles as the field tag
// of any element that stores it.
template <typename K>
concept Field = std::regular<K> && requires(const K a, const K b, std::string_view digits, long n) {
  { a + b } -> std::same_as<K>;
  { a - b } -> std::same_as<K>;
  { a * b } -> std::same_as<K>;
  { -a } -> std::same_as<K>;
  { a.inverse() } -> std::same_as<K>;
  { a.zero() } -> std::same_as<K>;
  { a.one() } -> std::same_as<K>;
  { a.from_decimal(digits) } -> std::same_as<K>;
  { a.from_long(n) } -> std::same_as<K>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a.is_one() } -> std::convertible_to<bool>;
  { a.same_field(b) } -> std::convertible_to<bool>;
  { a.str() } -> std::same_as<std::string>;
};

class Rational {
public:
  Rational() : v_(0) {}
  explicit Rational(long n) : v_(n) {}
  Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw SemanticError("rational with zero denominator");
    v_.canonicalize();
  }

  Rational zero() const { return Rational(); }
  Rational one() const { return Rational(1); }

  Rational from_long(long n) const { return Rational(n); }

  // Nonnegative integer from a decimal digit string of any length.
  Rational from_decimal(std::string_view digits) const {
    if (digits.empty()) throw ParseError("empty digit string");
    Rational r;
    r.v_ = mpq_class(mpz_class(std::string(digits), 10));
    return r;
  }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  bool same_field(const Rational&) const { return true; }

  Rational inverse() const {
    if (is_zero()) throw SemanticError("inverse of zero");
    Rational r;
    r.v_ = 1 / v_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) { return wrap(a.v_ + b.v_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return wrap(a.v_ - b.v_); }
  friend Rational operator*(const Rational& a, const Rational& b) { return wrap(a.v_ * b.v_); }
  Rational operator-() const { return wrap(-v_); }

  bool operator==(const Rational& o) const { return v_ == o.v_; }

  std::string str() const { return v_.get_str(); }

private:
  static Rational wrap(mpq_class q) {
    Rational r;
    r.v_ = std::move(q);
    return r;
  }
  mpq_class v_;  // kept canonical: reduced, positive denominator
};

namespace detail {

inline bool is_prime_u32(std::uint32_t p) {
  if (p < 2) return false;
  if (p % 2 == 0) return p == 2;
  for (std::uint64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

}  // namespace detail

// Residue in GF(p). Arithmetic between residues of different moduli is a
// semantic error, not undefined behavior.
class GFp {
public:
  GFp() : p_(2), v_(0) {}
  explicit GFp(std::uint32_t p, std::uint64_t value = 0) : p_(p), v_(0) {
    if (p >= (1u << 31) || !detail::is_prime_u32(p))
      throw SemanticError("GF(p) modulus must be a prime below 2^31: " + std::to_string(p));
    v_ = static_cast<std::uint32_t>(value % p_);
  }

  std::uint32_t modulus() const { return p_; }
  std::uint32_t value() const { return v_; }

  GFp zero() const { return with(0); }
  GFp one() const { return with(1 % p_); }

  GFp from_long(long n) const {
    long r = n % static_cast<long>(p_);
    if (r < 0) r += p_;
    return with(static_cast<std::uint32_t>(r));
  }

  GFp from_decimal(std::string_view digits) const {
    if (digits.empty()) throw ParseError("empty digit string");
    std::uint64_t acc = 0;
    for (char c : digits) {
      if (c < '0' || c > '9') throw ParseError("bad digit in scalar");
      acc = (acc * 10 + static_cast<std::uint64_t>(c - '0')) % p_;
    }
    return with(static_cast<std::uint32_t>(acc));
  }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1 % p_; }
  bool same_field(const GFp& o) const { return p_ == o.p_; }

  GFp inverse() const {
    if (v_ == 0) throw SemanticError("inverse of zero");
    // Fermat: v^(p-2) mod p.
    std::uint64_t base = v_, acc = 1, e = p_ - 2;
    while (e) {
      if (e & 1) acc = acc * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return with(static_cast<std::uint32_t>(acc));
  }

  friend GFp operator+(const GFp& a, const GFp& b) {
    a.check(b);
    return a.with(static_cast<std::uint32_t>((static_cast<std::uint64_t>(a.v_) + b.v_) % a.p_));
  }
  friend GFp operator-(const GFp& a, const GFp& b) {
    a.check(b);
    return a.with(static_cast<std::uint32_t>((static_cast<std::uint64_t>(a.v_) + a.p_ - b.v_) % a.p_));
  }
  friend GFp operator*(const GFp& a, const GFp& b) {
    a.check(b);
    return a.with(static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.v_) * b.v_ % a.p_));
  }
  GFp operator-() const { return with(v_ == 0 ? 0 : p_ - v_); }

  bool operator==(const GFp& o) const { return p_ == o.p_ && v_ == o.v_; }

  std::string str() const { return std::to_string(v_); }

private:
  GFp with(std::uint32_t v) const {
    GFp r;
    r.p_ = p_;
    r.v_ = v;
    return r;
  }
  void check(const GFp& o) const {
    if (p_ != o.p_) throw SemanticError("mixed GF(p) moduli");
  }
  std::uint32_t p_;
  std::uint32_t v_;
};

static_assert(Field<Rational>);
static_assert(Field<GFp>);

}  // namespace lpa
