#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "inclab/plane.hpp"
#include "inclab/rational.hpp"

namespace inclab {

// Split of P by point richness relative to the mean K = I/m:
//   D: degree <= c_dearth * K,  E: degree >= c_excess * K,  A: the rest.
// D takes precedence when both thresholds apply (only possible when K = 0).
struct RichnessPartition {
  Rational K;
  Rational c_dearth;
  Rational c_excess;
  std::vector<AffinePoint> D, E, A;  // sorted
};

// Throws Error{empty_instance} for m = 0 and Error{out_of_range} unless c_dearth < c_excess.
RichnessPartition richness_partition(const Instance& inst, const Rational& c_dearth,
                                     const Rational& c_excess);

// Intermediate sets of the two-pencil extraction, kept for certificate checking.
struct ExtractionTrace {
  Rational K;
  std::uint64_t incidences = 0;        // I(P, L)
  std::vector<AffineLine> rich_lines;  // L1: lines with |l & P| >= I(P, L) / (2n)
  std::vector<AffinePoint> first_fan;  // Q: points q != p1 with line p1q in L
  std::vector<AffineLine> fan_lines;   // L2: lines with |l & Q| >= I(Q, L) / (2n)
  bool regular = false;                // every point has between c1 K and c2 K lines
  bool preconditions_held = false;     // regular and the three lower bounds on K
  Rational size_lower_bound;           // c1^4 K^4 |P| / (2^9 n^2)
};

struct PencilGrid {
  AffinePoint p1;
  AffinePoint q1;
  std::vector<AffinePoint> G;          // sorted; disjoint from line p1q1
  std::vector<AffineLine> pencil_p1;   // lines of L through p1 covering G
  std::vector<AffineLine> pencil_q1;   // lines of L2 through q1 covering G
  ExtractionTrace trace;
};

// Runs the two-pencil construction on (points, lines) literally, with lexicographic ties.
// K defaults to I(points, lines) / |points|. Throws Error{no_incidences} when I = 0 and
// Error{empty_grid} when the final set is empty (a legal outcome when the size guarantee's
// preconditions fail).
PencilGrid two_pencil_extract(std::span<const AffinePoint> points, std::span<const AffineLine> lines,
                              const Rational& c1, const Rational& c2,
                              std::optional<Rational> K = std::nullopt);

struct CoverParameters {
  Rational c1;
  Rational c2;
  Rational stop_fraction;

  // 2^-11, 2^15, 2^-15: the constants under which the covering argument is stated.
  static CoverParameters asymptotic();
  // 1/2, 2, 1/4: small enough for the size guarantee to bite on desk-sized instances.
  static CoverParameters desk_scale();
};

struct GridStep {
  PencilGrid grid;
  std::uint64_t remaining_before = 0;  // |A_i|
};

struct GridCertificate {
  CoverParameters params;
  Rational K;
  std::uint64_t m = 0, n = 0;
  RichnessPartition partition;
  std::vector<GridStep> steps;         // G_1 .. G_s
  std::vector<AffinePoint> leftover;   // A_{s+1}
  std::string termination;             // "stop_fraction", "empty_grid" or "no_incidences"

  std::size_t s() const noexcept { return steps.size(); }
};

// Partition, then peel grids off A until |A_{i+1}| <= stop_fraction * m or extraction fails.
GridCertificate grid_cover(const Instance& inst, const CoverParameters& params);

struct NormalizedGrid {
  ProjMap map;
  std::vector<AffinePoint> H;       // image of G, sorted
  std::vector<AffineLine> lines;    // image of L without line p1q1
  std::vector<Scalar> X, Y;         // distinct coordinates of H
  bool dropped_apex_line = false;   // line p1q1 was in L
};

// Sends p1, q1 to the points at infinity of horizontal and vertical lines. The pencil
// through p1 becomes horizontal lines, so |Y| <= |pencil_p1| and |X| <= |pencil_q1|.
// Throws Error{degenerate_input} for an empty grid and Error{point_sent_to_infinity} if a
// grid point lies on p1q1.
NormalizedGrid normalize_grid(const PencilGrid& grid, std::span<const AffineLine> lines);

enum class ViolationKind {
  threshold,     // partition sets disagree with the degree thresholds
  partition,     // union of grids, leftover, D and E is not exactly P
  disjointness,  // two grids share a point
  containment,   // a grid point outside the regular set A
  coverage,      // a grid point on line p1q1 or off the listed pencils, or a bad pencil line
  pencil_bound,  // a pencil with more than c2 K lines
  size_bound,    // |G| below the guaranteed size although the preconditions held
  step_bound,    // s > m / min |G_i|
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string detail;
};

struct VerificationReport {
  std::vector<Violation> violations;
  std::size_t checks = 0;
  bool ok() const noexcept { return violations.empty(); }
  bool has(ViolationKind kind) const;
};

VerificationReport verify_certificate(const Instance& inst, const GridCertificate& cert);

}  // namespace inclab
