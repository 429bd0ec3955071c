#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "inclab/field.hpp"

namespace inclab {

struct AffinePoint {
  Scalar x;
  Scalar y;

  // Throws Error{modulus_mismatch} if the coordinates disagree.
  AffinePoint(Scalar x_, Scalar y_);
  static AffinePoint of(std::int64_t x, std::int64_t y, PrimeModulus mod) {
    return AffinePoint(Scalar(x, mod), Scalar(y, mod));
  }

  PrimeModulus modulus() const noexcept { return x.modulus(); }
  // Dense index x*p + y; unique per point for a fixed modulus.
  std::uint64_t key() const noexcept {
    return std::uint64_t{x.value()} * modulus().value() + y.value();
  }

  bool operator==(const AffinePoint& o) const { return x == o.x && y == o.y; }
  std::strong_ordering operator<=>(const AffinePoint& o) const {
    if (auto c = x <=> o.x; c != 0) return c;
    return y <=> o.y;
  }
};

std::string to_string(const AffinePoint& q);

// Canonical line: y = s*x + t, or x = x0. Each geometric line has exactly one representation,
// so equality and hashing are structural. Ordering is (is_vertical, slope|x0, intercept).
class AffineLine {
 public:
  static AffineLine non_vertical(Scalar slope, Scalar intercept);
  static AffineLine vertical(Scalar x0);

  bool is_vertical() const noexcept { return vertical_; }
  // Valid only for non-vertical lines.
  Scalar slope() const;
  Scalar intercept() const;
  // Valid only for vertical lines.
  Scalar x0() const;
  PrimeModulus modulus() const noexcept { return a_.modulus(); }

  // Raw coordinates: (slope, intercept) or (x0, 0).
  std::uint32_t raw_a() const noexcept { return a_.value(); }
  std::uint32_t raw_b() const noexcept { return b_.value(); }

  bool operator==(const AffineLine& o) const {
    return vertical_ == o.vertical_ && a_ == o.a_ && b_ == o.b_;
  }
  std::strong_ordering operator<=>(const AffineLine& o) const {
    if (auto c = vertical_ <=> o.vertical_; c != 0) return c;
    if (auto c = a_ <=> o.a_; c != 0) return c;
    return b_ <=> o.b_;
  }

 private:
  AffineLine(bool vertical, Scalar a, Scalar b) : vertical_(vertical), a_(a), b_(b) {}
  bool vertical_;
  Scalar a_;
  Scalar b_;
};

std::string to_string(const AffineLine& l);

// A deduplicated pair (P, L) over a common prime field. Points and lines are kept sorted in
// their canonical orders, which fixes every downstream iteration order.
class Instance {
 public:
  explicit Instance(PrimeModulus mod) : mod_(mod) {}
  Instance(PrimeModulus mod, std::vector<AffinePoint> points, std::vector<AffineLine> lines);

  PrimeModulus modulus() const noexcept { return mod_; }
  const std::vector<AffinePoint>& points() const noexcept { return points_; }
  const std::vector<AffineLine>& lines() const noexcept { return lines_; }
  std::size_t m() const noexcept { return points_.size(); }
  std::size_t n() const noexcept { return lines_.size(); }
  // Number of repeated points and lines dropped by the constructor.
  std::size_t duplicates_removed() const noexcept { return duplicates_removed_; }

  bool has_vertical_lines() const;
  bool contains(const AffinePoint& q) const;
  bool contains(const AffineLine& l) const;

  bool operator==(const Instance& o) const {
    return mod_ == o.mod_ && points_ == o.points_ && lines_ == o.lines_;
  }

 private:
  PrimeModulus mod_;
  std::vector<AffinePoint> points_;
  std::vector<AffineLine> lines_;
  std::size_t duplicates_removed_ = 0;
};

// Sorts and deduplicates in place; returns the number of elements removed.
std::size_t canonicalize(std::vector<AffinePoint>& points);
std::size_t canonicalize(std::vector<AffineLine>& lines);

bool incident(const AffinePoint& q, const AffineLine& l);

// Throws Error{coincident_points} when q == r.
AffineLine line_through(const AffinePoint& q, const AffinePoint& r);

// Affine duality: y = c*x + d  <->  (c, d), and (a, b)  <->  y = -a*x + b.
// Throws Error{vertical_line_present}.
Instance dualize(const Instance& inst);
AffinePoint dual_point(const AffineLine& l);
AffineLine dual_line(const AffinePoint& q);

// Homogeneous triple with canonical scaling (first nonzero coordinate is 1). Used both for
// projective points [x:y:z] and for line coefficients [a:b:c] of a*x + b*y + c*z = 0.
class ProjPoint {
 public:
  // Throws Error{degenerate_input} for the zero triple.
  ProjPoint(std::array<std::uint32_t, 3> coords, PrimeModulus mod);

  static ProjPoint embed(const AffinePoint& q);
  // Coefficients of the line: y = s*x + t -> [s : -1 : t], x = x0 -> [1 : 0 : -x0].
  static ProjPoint line_coords(const AffineLine& l);

  const std::array<std::uint32_t, 3>& coords() const noexcept { return c_; }
  PrimeModulus modulus() const noexcept { return mod_; }
  bool at_infinity() const noexcept { return c_[2] == 0; }
  std::optional<AffinePoint> to_affine() const;
  // Inverse of line_coords; nullopt for the line at infinity [0:0:1].
  std::optional<AffineLine> to_affine_line() const;

  bool operator==(const ProjPoint& o) const { return mod_ == o.mod_ && c_ == o.c_; }

 private:
  std::array<std::uint32_t, 3> c_;
  PrimeModulus mod_;
};

// The two distinguished points at infinity and the line at infinity.
ProjPoint alpha_point(PrimeModulus mod);     // [1:0:0], direction of horizontal lines
ProjPoint beta_point(PrimeModulus mod);      // [0:1:0], direction of vertical lines
ProjPoint line_at_infinity(PrimeModulus mod);  // z = 0

// Invertible 3x3 matrix over F_p acting on column vectors.
class ProjMap {
 public:
  using Matrix = std::array<std::uint32_t, 9>;  // row-major

  // Entries are reduced mod p. Throws Error{degenerate_input} if det == 0.
  static ProjMap make(PrimeModulus mod, const std::array<std::int64_t, 9>& rows);
  static ProjMap identity(PrimeModulus mod);
  static ProjMap translation(PrimeModulus mod, std::int64_t dx, std::int64_t dy);

  const Matrix& entries() const noexcept { return m_; }
  PrimeModulus modulus() const noexcept { return mod_; }
  std::uint32_t det() const;
  ProjMap inverse() const;
  ProjMap operator*(const ProjMap& o) const;

  ProjPoint apply(const ProjPoint& q) const;
  // Image of a line given by coefficients: M^{-T} l.
  ProjPoint apply_to_line(const ProjPoint& l) const;

 private:
  ProjMap(PrimeModulus mod, const Matrix& m) : m_(m), mod_(mod) {}
  Matrix m_;
  PrimeModulus mod_;
};

// Returns M with M[q] = [1:0:0], M[r] = [0:1:0], and M[w] = [0:0:1] where w is the
// lexicographically smallest affine point off line qr. Throws Error{coincident_points}.
ProjMap projective_map_from_pair(const AffinePoint& q, const AffinePoint& r);

enum class LineAtInfinityPolicy { reject, drop };

// Maps points and lines of inst. A point landing on the line at infinity throws
// Error{point_sent_to_infinity}; a line landing on it is dropped or throws
// Error{line_sent_to_infinity} according to policy.
Instance apply_map(const ProjMap& map, const Instance& inst,
                   LineAtInfinityPolicy policy = LineAtInfinityPolicy::reject);

}  // namespace inclab

template <>
struct std::hash<inclab::AffinePoint> {
  std::size_t operator()(const inclab::AffinePoint& q) const noexcept {
    return std::hash<std::uint64_t>{}(q.key());
  }
};

template <>
struct std::hash<inclab::AffineLine> {
  std::size_t operator()(const inclab::AffineLine& l) const noexcept {
    std::uint64_t k = (std::uint64_t{l.raw_a()} << 32) | l.raw_b();
    return std::hash<std::uint64_t>{}(k ^ (l.is_vertical() ? 0x9e3779b97f4a7c15ULL : 0));
  }
};
