#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "inclab/plane.hpp"
#include "inclab/rational.hpp"

namespace inclab {

// ---------------------------------------------------------------------------------------------
// Point-line incidence counting in F_p^2
// ---------------------------------------------------------------------------------------------

enum class Engine {
  naive,      // every (point, line) pair
  hash_join,  // slope-class sweep or x-column sweep, whichever the cost model prefers
  automatic,  // naive or hash_join by cost model
};

Engine parse_engine(std::string_view name);
std::string_view to_string(Engine e);

// Work estimates for the three strategies, in pair probes.
struct CostModel {
  std::uint64_t naive;         // m * n
  std::uint64_t column_sweep;  // n * |distinct x among points|
  std::uint64_t slope_sweep;   // m * (|distinct slopes among lines| + 1)
};

CostModel cost_model(const Instance& inst);

// Exact I(P, L). All engines return identical values.
std::uint64_t count_incidences(const Instance& inst, Engine engine = Engine::automatic);

// Calls visit(point_index, line_index) once per incident pair, indices into inst.points()
// and inst.lines(). Order is unspecified.
void for_each_incidence(const Instance& inst,
                        const std::function<void(std::size_t, std::size_t)>& visit);

struct RichnessHistogram {
  std::vector<std::uint64_t> per_point;  // aligned with inst.points(): lines through each point
  std::vector<std::uint64_t> per_line;   // aligned with inst.lines(): points on each line
  std::uint64_t total = 0;
};

RichnessHistogram richness_histograms(const Instance& inst);

// ---------------------------------------------------------------------------------------------
// Point-plane incidences in F_p^3
// ---------------------------------------------------------------------------------------------

struct Point3 {
  std::array<std::uint32_t, 3> c;
  auto operator<=>(const Point3&) const = default;
};

// Plane a*x + b*y + c*z + d = 0 with (a, b, c) != 0, scaled so the first nonzero of (a, b, c)
// is 1.
struct Plane3 {
  std::array<std::uint32_t, 4> coef;
  auto operator<=>(const Plane3&) const = default;

  // Throws Error{degenerate_input} when a = b = c = 0.
  static Plane3 make(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d,
                     PrimeModulus mod);
};

class PlaneInstance3D {
 public:
  // Coordinates are reduced mod p; points and planes are deduplicated.
  PlaneInstance3D(PrimeModulus mod, std::vector<Point3> points, std::vector<Plane3> planes);

  PrimeModulus modulus() const noexcept { return mod_; }
  const std::vector<Point3>& points() const noexcept { return points_; }
  const std::vector<Plane3>& planes() const noexcept { return planes_; }
  std::size_t r() const noexcept { return points_.size(); }
  std::size_t s() const noexcept { return planes_.size(); }

 private:
  PrimeModulus mod_;
  std::vector<Point3> points_;
  std::vector<Plane3> planes_;
};

std::uint64_t count_point_plane(const PlaneInstance3D& inst);

// Maximum number of points of R on one line of F_p^3 (1 for a single point, 0 for none).
std::size_t max_collinear_3d(std::span<const Point3> points, PrimeModulus mod);

// ---------------------------------------------------------------------------------------------
// Reference bounds and hypothesis checks
// ---------------------------------------------------------------------------------------------

enum class BoundKind {
  table1,         // best known bound, selected by the relative sizes of m and n
  vinh,           // mn/q + sqrt(q) sqrt(mn)
  combinatorial,  // min{sqrt(m) n + m, m sqrt(n) + n}
};

struct ReferenceBound {
  std::string regime;
  double value = 0.0;
};

// Requires m, n >= 1. For vinh, q is the field size.
ReferenceBound reference_bound(std::uint64_t m, std::uint64_t n, std::uint64_t q, BoundKind which);

// Exact test of count <= min{sqrt(m) n + m, m sqrt(n) + n}.
bool within_combinatorial_bound(std::uint64_t count, std::uint64_t m, std::uint64_t n);

enum class Theorem {
  general_incidence,  // I << m^{11/15} n^{11/15} for m^{7/8} < n < m^{8/7}
  cartesian_product,  // I(A x B, L) << a^{3/4} b^{1/2} n^{3/4} + n
  point_plane,        // I(R, S) << r^{1/2} s + k s
};

std::string_view to_string(Theorem t);

// Sizes referenced by the hypotheses; each theorem reads only its own fields.
struct HypothesisSizes {
  std::uint64_t p = 0;
  std::uint64_t m = 0, n = 0;  // general incidence; n is shared with the Cartesian bound
  std::uint64_t a = 0, b = 0;  // Cartesian product A x B
  std::uint64_t r = 0, s = 0;  // point-plane
};

// m, n, p from the instance; a and b are the numbers of distinct x and y coordinates (the
// smallest Cartesian product containing P); r = s = a*n as produced by the energy reduction.
HypothesisSizes sizes_of(const Instance& inst);

struct Condition {
  std::string name;
  std::string lhs;  // exact decimal value of the left side
  std::string rhs;  // exact value of the right side, including the << constant
  bool pass = false;
};

struct HypothesisReport {
  Theorem theorem;
  std::vector<Condition> conditions;
  bool overall = false;  // conjunction of the conditions
  Rational constant;     // X << Y is read as X <= constant * Y
};

HypothesisReport check_hypotheses(const HypothesisSizes& sizes, Theorem theorem,
                                  const Rational& constant = Rational(1));

}  // namespace inclab
