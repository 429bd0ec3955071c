#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "inclab/incidence.hpp"
#include "inclab/plane.hpp"
#include "inclab/rational.hpp"

namespace inclab {

// Number of sextuples (x, s, t, x', s', t') in (A x L)^2 with x s + t = x' s' + t'.
struct EnergyCount {
  std::uint64_t value = 0;
  // (residue of x s + t, multiplicity) sorted by residue; value = sum of squared multiplicities.
  std::vector<std::pair<std::uint32_t, std::uint64_t>> multiplicities;
};

// A and L are treated as sets. Throws Error{vertical_line_present}.
EnergyCount line_energy(std::span<const Scalar> A, std::span<const AffineLine> L);

// Points R = {(x, s', t')} and planes S = {s X - x' S' - T' + t = 0} over A x L, so that
// point-plane incidences are exactly the energy solutions. r = s = |A| n.
PlaneInstance3D energy_reduction(std::span<const Scalar> A, std::span<const AffineLine> L);

struct BridgeCheck {
  std::uint64_t incidences = 0;  // I(A x B, L)
  std::uint64_t energy = 0;      // E over A x L
  BigInt lhs;                    // I^2
  BigInt rhs;                    // |B| E
  bool holds = false;            // I^2 <= |B| E
};

// Cauchy-Schwarz step bounding incidences on a Cartesian product by the line energy.
BridgeCheck cs_bridge_check(std::span<const Scalar> A, std::span<const Scalar> B,
                            std::span<const AffineLine> L);

enum class Expression {
  sum,              // A + A
  product,          // A * A
  shifted_product,  // A * (A + 1)
  sum_of_product,   // A + B C
  product_of_sum,   // A (B + C)
  quadratic,        // x^2 + x y over A x B
};

std::string_view to_string(Expression e);

// Exact image set, sorted. Throws Error{empty_input} when a set the expression reads is empty.
std::vector<Scalar> arithmetic_image(Expression expr, std::span<const Scalar> A,
                                     std::span<const Scalar> B = {}, std::span<const Scalar> C = {});

enum class SumProdKind {
  sum_product,     // max{|A+A|, |A.A|} against |A|^{6/5}, requires |A| << p^{5/8}
  shifted_product, // |A(A+1)| against |A|^{6/5}, requires |A| << p^{5/8}
  three_variable,  // |A+BC|, |A(B+C)| against (|A||B||C|)^{1/2}, requires |A||B||C| << p^2
  expander,        // |f(A,B)|, f = x^2 + xy, against min{|A|^{1/2}|B|^{3/4}, |B|^2}, requires |A|^2|B| << p^2
};

SumProdKind parse_sumprod_kind(std::string_view name);
std::string_view to_string(SumProdKind k);

struct ImageSize {
  Expression expr;
  std::uint64_t size = 0;
  double ratio = 0.0;  // size / main_term
};

struct SumProdReport {
  SumProdKind kind;
  std::uint64_t a = 0, b = 0, c = 0;  // input set sizes (b, c zero when unused)
  std::vector<ImageSize> images;
  std::uint64_t m_min = 0, m_max = 0;  // sum_product only
  double main_term = 0.0;
  Condition condition;  // characteristic condition, exact
};

// Reports sizes and ratios; nothing is asserted. Throws Error{degenerate_input} for inputs the
// corresponding bound excludes (B or C equal to {0} for three_variable, A = {0} for expander)
// and Error{empty_input} for empty sets.
SumProdReport sumproduct_report(SumProdKind kind, std::span<const Scalar> A,
                                std::span<const Scalar> B = {}, std::span<const Scalar> C = {},
                                const Rational& constant = Rational(1));

}  // namespace inclab
