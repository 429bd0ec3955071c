#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "inclab/plane.hpp"

namespace inclab {

// Squared Euclidean distance (qx - rx)^2 + (qy - ry)^2. Throws Error{modulus_mismatch}.
Scalar distance(const AffinePoint& q, const AffinePoint& r);

struct DistanceReport {
  std::vector<AffinePoint> points;           // P as a sorted set
  std::vector<Scalar> all;                   // Delta(P), sorted, always contains 0
  std::vector<std::vector<Scalar>> pinned;   // Delta_q(P) per point, aligned with points
  std::size_t best_pin = 0;                  // index of the largest pinned set, lexicographic ties
  std::size_t max_pinned = 0;
  bool degenerate = false;                   // Delta(P) = {0}
};

// Throws Error{empty_input} for an empty P.
DistanceReport distance_sets(std::span<const AffinePoint> P);

// Lines through r with slopes +i and -i, i^2 = -1, smaller root first. Absent when p = 3 mod 4.
std::optional<std::pair<AffineLine, AffineLine>> isotropic_lines(const AffinePoint& r);

// Perpendicular bisectors {q : d(q, r) = d(q, s)} for s in P with d(r, s) != 0; sorted set.
std::vector<AffineLine> bisector_instance(std::span<const AffinePoint> P, const AffinePoint& r);

// Sum over r in P of I(P, bisector_instance(P, r)).
std::uint64_t bisector_incidences(std::span<const AffinePoint> P);

// Ordered triples (q, r, s) in P^3 with r != s and d(q, r) = d(q, s) != 0.
std::uint64_t isosceles_triples(std::span<const AffinePoint> P);

struct DyadicClass {
  unsigned j = 0;                  // lines with 2^j <= |l & P| < 2^{j+1}
  std::uint64_t lines = 0;
  std::uint64_t pairs = 0;         // sum of C(|l & P|, 2) over the class
};

struct BeckReport {
  std::vector<AffineLine> lines;        // determined lines, sorted
  std::vector<std::uint64_t> richness;  // |l & P|, aligned with lines
  std::vector<DyadicClass> classes;     // nonempty classes by increasing j
  std::uint64_t pairs_covered = 0;      // sum of C(|l & P|, 2) over all lines
  std::uint64_t pairs_total = 0;        // C(m, 2)
};

// Lines holding at least two points of P. Throws Error{too_few_points} when |P| < 2.
BeckReport determined_lines(std::span<const AffinePoint> P);

}  // namespace inclab
