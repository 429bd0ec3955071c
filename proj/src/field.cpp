#include "inclab/field.hpp"

#include <string>
#include <utility>

namespace inclab {

namespace modp {

std::uint32_t pow(std::uint32_t base, std::uint64_t exp, std::uint32_t p) {
  std::uint64_t result = 1 % p;
  std::uint64_t b = base % p;
  while (exp != 0) {
    if (exp & 1) result = result * b % p;
    b = b * b % p;
    exp >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

std::uint32_t inv(std::uint32_t a, std::uint32_t p) {
  // Extended Euclid on signed 64-bit values.
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  return reduce(t, p);
}

}  // namespace modp

namespace {

__extension__ typedef unsigned __int128 u128;

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % n);
}

bool miller_rabin_witness(std::uint64_t n, std::uint64_t a, std::uint64_t d, int s) {
  std::uint64_t x = 1, base = a % n, e = d;
  while (e != 0) {
    if (e & 1) x = mulmod64(x, base, n);
    base = mulmod64(base, base, n);
    e >>= 1;
  }
  if (x == 1 || x == n - 1) return false;
  for (int i = 1; i < s; ++i) {
    x = mulmod64(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are deterministic for every 64-bit n.
  for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (miller_rabin_witness(n, a, d, s)) return false;
  }
  return true;
}

PrimeModulus PrimeModulus::make(std::int64_t n) {
  if (n < 3 || n >= (std::int64_t{1} << 31)) {
    throw Error(ErrorCode::out_of_range, "modulus " + std::to_string(n) + " outside [3, 2^31)");
  }
  if (!is_prime(static_cast<std::uint64_t>(n))) {
    throw Error(ErrorCode::composite_modulus, std::to_string(n) + " is not prime");
  }
  return PrimeModulus(static_cast<std::uint32_t>(n));
}

void Scalar::check_same(const Scalar& o) const {
  if (mod_ != o.mod_) {
    throw Error(ErrorCode::modulus_mismatch, "residues mod " + std::to_string(mod_.value()) +
                                                 " and mod " + std::to_string(o.mod_.value()));
  }
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same(o);
  return from_raw(modp::add(value_, o.value_, mod_.value()), mod_);
}

Scalar Scalar::operator-(const Scalar& o) const {
  check_same(o);
  return from_raw(modp::sub(value_, o.value_, mod_.value()), mod_);
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_same(o);
  return from_raw(modp::mul(value_, o.value_, mod_.value()), mod_);
}

Scalar Scalar::inv() const {
  if (value_ == 0) throw Error(ErrorCode::division_by_zero, "inverse of 0");
  return from_raw(modp::inv(value_, mod_.value()), mod_);
}

bool Scalar::operator==(const Scalar& o) const {
  check_same(o);
  return value_ == o.value_;
}

std::strong_ordering Scalar::operator<=>(const Scalar& o) const {
  check_same(o);
  return value_ <=> o.value_;
}

bool is_square(const Scalar& a) {
  if (a.is_zero()) return true;
  std::uint32_t p = a.modulus().value();
  return modp::pow(a.value(), (p - 1) / 2, p) == 1;
}

std::optional<Scalar> sqrt_mod(const Scalar& a) {
  const PrimeModulus mod = a.modulus();
  const std::uint32_t p = mod.value();
  if (a.is_zero()) return a;
  if (!is_square(a)) return std::nullopt;

  std::uint32_t root;
  if (p % 4 == 3) {
    root = modp::pow(a.value(), (std::uint64_t{p} + 1) / 4, p);
  } else {
    std::uint64_t q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
      q >>= 1;
      ++s;
    }
    // Smallest quadratic non-residue; deterministic.
    std::uint32_t z = 2;
    while (modp::pow(z, (p - 1) / 2, p) != p - 1) ++z;

    std::uint32_t c = modp::pow(z, q, p);
    std::uint32_t t = modp::pow(a.value(), q, p);
    root = modp::pow(a.value(), (q + 1) / 2, p);
    int m = s;
    while (t != 1) {
      int i = 0;
      std::uint32_t t2 = t;
      while (t2 != 1) {
        t2 = modp::mul(t2, t2, p);
        ++i;
      }
      std::uint32_t b = c;
      for (int j = 0; j < m - i - 1; ++j) b = modp::mul(b, b, p);
      m = i;
      c = modp::mul(b, b, p);
      t = modp::mul(t, c, p);
      root = modp::mul(root, b, p);
    }
  }
  if (root > p - root) root = p - root;
  return Scalar::from_raw(root, mod);
}

}  // namespace inclab
