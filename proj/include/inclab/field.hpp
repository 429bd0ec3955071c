#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>

#include "inclab/error.hpp"

namespace inclab {

// Raw residue arithmetic for hot loops. Operands must already lie in [0, p).
namespace modp {

inline std::uint32_t add(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  std::uint64_t s = std::uint64_t{a} + b;
  return static_cast<std::uint32_t>(s >= p ? s - p : s);
}

inline std::uint32_t sub(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return a >= b ? a - b : static_cast<std::uint32_t>(std::uint64_t{a} + p - b);
}

inline std::uint32_t neg(std::uint32_t a, std::uint32_t p) { return a == 0 ? 0 : p - a; }

inline std::uint32_t mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(std::uint64_t{a} * b % p);
}

std::uint32_t pow(std::uint32_t base, std::uint64_t exp, std::uint32_t p);

// Requires a != 0.
std::uint32_t inv(std::uint32_t a, std::uint32_t p);

// Reduces any signed integer into [0, p).
inline std::uint32_t reduce(std::int64_t v, std::uint32_t p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

}  // namespace modp

bool is_prime(std::uint64_t n);

// Characteristic of the field; an odd prime below 2^31.
class PrimeModulus {
 public:
  // Throws Error{out_of_range} unless 3 <= n < 2^31, Error{composite_modulus} if n is not prime.
  static PrimeModulus make(std::int64_t n);

  std::uint32_t value() const noexcept { return p_; }

  friend bool operator==(PrimeModulus, PrimeModulus) = default;

 private:
  explicit PrimeModulus(std::uint32_t p) : p_(p) {}
  std::uint32_t p_;
};

class Scalar {
 public:
  // Reduces v into [0, p).
  Scalar(std::int64_t v, PrimeModulus mod) : value_(modp::reduce(v, mod.value())), mod_(mod) {}

  std::uint32_t value() const noexcept { return value_; }
  PrimeModulus modulus() const noexcept { return mod_; }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const { return from_raw(modp::neg(value_, mod_.value()), mod_); }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  // Throws Error{division_by_zero} for zero.
  Scalar inv() const;
  Scalar operator/(const Scalar& o) const { return *this * o.inv(); }
  Scalar pow(std::uint64_t e) const { return from_raw(modp::pow(value_, e, mod_.value()), mod_); }
  bool is_zero() const noexcept { return value_ == 0; }

  // Equality and order compare residues; comparing across moduli throws.
  bool operator==(const Scalar& o) const;
  std::strong_ordering operator<=>(const Scalar& o) const;

  static Scalar from_raw(std::uint32_t v, PrimeModulus mod) { return Scalar(raw_tag{}, v, mod); }

 private:
  struct raw_tag {};
  Scalar(raw_tag, std::uint32_t v, PrimeModulus mod) : value_(v), mod_(mod) {}
  void check_same(const Scalar& o) const;

  std::uint32_t value_;
  PrimeModulus mod_;
};

// Euler criterion; zero counts as a square.
bool is_square(const Scalar& a);

// Tonelli-Shanks. Returns the root r with r <= p - r, or nullopt for non-residues.
std::optional<Scalar> sqrt_mod(const Scalar& a);

inline bool minus_one_is_square(PrimeModulus mod) { return mod.value() % 4 == 1; }

}  // namespace inclab

template <>
struct std::hash<inclab::Scalar> {
  std::size_t operator()(const inclab::Scalar& s) const noexcept {
    return std::hash<std::uint64_t>{}((std::uint64_t{s.modulus().value()} << 32) | s.value());
  }
};
