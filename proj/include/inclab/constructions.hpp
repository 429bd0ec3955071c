#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "inclab/plane.hpp"

namespace inclab {

// Point set {1..a} x {1..2ac} and lines y = s x + t, s in {1..c}, t in {1..ac}, reduced mod p.
// Every line holds exactly a points, so I = a^2 c^2. Throws Error{characteristic_too_small}
// when 2ac >= p.
Instance elekes_construction(std::uint64_t a, std::uint64_t c, PrimeModulus mod);

// All p^2 points and all p^2 + p lines.
Instance full_plane(PrimeModulus mod);

// Line families for Cartesian instances.
struct ExplicitLines {
  std::vector<AffineLine> lines;
};
struct SpannedLines {};  // every line through two points of A x B
struct ElekesLines {     // y = s x + t, s in {1..c}, t in {1..ac} with a = |A|
  std::uint64_t c;
};
using LineFamily = std::variant<ExplicitLines, SpannedLines, ElekesLines>;

// Throws Error{empty_input} if A or B is empty.
Instance cartesian_instance(std::span<const Scalar> A, std::span<const Scalar> B,
                            const LineFamily& family);

// Fixed 64-bit generator (SplitMix64). The full algorithm is spelled out in the source so
// that other implementations can reproduce the same instances from the same seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  // Uniform in [0, bound) by rejection; bound >= 1.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

// k distinct integers from [0, universe), uniform, by Floyd's combination sampling; sorted.
std::vector<std::uint64_t> sample_distinct(std::uint64_t universe, std::uint64_t k, SplitMix64& rng);

// m distinct points and n distinct lines drawn uniformly without replacement. Point index i
// decodes to (i / p, i % p); line index j < p^2 decodes to y = (j / p) x + (j % p), and
// j >= p^2 to the vertical x = j - p^2. Points are drawn first, then lines, from one stream.
// Throws Error{too_many_requested} when m > p^2 or n > p^2 + p.
Instance random_instance(PrimeModulus mod, std::uint64_t m, std::uint64_t n, std::uint64_t seed);

// {0..a-1} x {0..b-1} with n distinct non-vertical lines, line index j decoding to
// y = (j / p) x + (j % p). Throws Error{too_many_requested} when a or b exceeds p or n > p^2.
Instance random_cartesian(PrimeModulus mod, std::uint64_t a, std::uint64_t b, std::uint64_t n,
                          std::uint64_t seed);

// Lines through vertex with the given slopes, plus the vertical when requested.
std::vector<AffineLine> pencil(const AffinePoint& vertex, std::span<const Scalar> slopes,
                               bool include_vertical);

}  // namespace inclab
