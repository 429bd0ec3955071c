#include "inclab/constructions.hpp"

#include <algorithm>
#include <unordered_set>

namespace inclab {

Instance elekes_construction(std::uint64_t a, std::uint64_t c, PrimeModulus mod) {
  if (a == 0 || c == 0) throw Error(ErrorCode::out_of_range, "elekes needs a, c >= 1");
  if (2 * a * c >= mod.value()) {
    throw Error(ErrorCode::characteristic_too_small,
                "2ac = " + std::to_string(2 * a * c) + " >= p = " + std::to_string(mod.value()));
  }
  const auto to = [&](std::uint64_t v) { return Scalar(static_cast<std::int64_t>(v), mod); };
  std::vector<AffinePoint> points;
  points.reserve(2 * a * a * c);
  for (std::uint64_t i = 1; i <= a; ++i) {
    for (std::uint64_t j = 1; j <= 2 * a * c; ++j) points.emplace_back(to(i), to(j));
  }
  std::vector<AffineLine> lines;
  lines.reserve(a * c * c);
  for (std::uint64_t s = 1; s <= c; ++s) {
    for (std::uint64_t t = 1; t <= a * c; ++t) lines.push_back(AffineLine::non_vertical(to(s), to(t)));
  }
  return Instance(mod, std::move(points), std::move(lines));
}

Instance full_plane(PrimeModulus mod) {
  const std::uint32_t p = mod.value();
  std::vector<AffinePoint> points;
  std::vector<AffineLine> lines;
  points.reserve(std::size_t{p} * p);
  lines.reserve(std::size_t{p} * p + p);
  for (std::uint32_t x = 0; x < p; ++x) {
    for (std::uint32_t y = 0; y < p; ++y) {
      points.emplace_back(Scalar::from_raw(x, mod), Scalar::from_raw(y, mod));
      lines.push_back(AffineLine::non_vertical(Scalar::from_raw(x, mod), Scalar::from_raw(y, mod)));
    }
  }
  for (std::uint32_t x = 0; x < p; ++x) lines.push_back(AffineLine::vertical(Scalar::from_raw(x, mod)));
  return Instance(mod, std::move(points), std::move(lines));
}

Instance cartesian_instance(std::span<const Scalar> A, std::span<const Scalar> B,
                            const LineFamily& family) {
  if (A.empty() || B.empty()) throw Error(ErrorCode::empty_input, "cartesian factors must be nonempty");
  const PrimeModulus mod = A.front().modulus();
  std::vector<AffinePoint> points;
  points.reserve(A.size() * B.size());
  for (const auto& x : A) {
    for (const auto& y : B) points.emplace_back(x, y);
  }
  canonicalize(points);

  std::vector<AffineLine> lines;
  if (const auto* explicit_lines = std::get_if<ExplicitLines>(&family)) {
    lines = explicit_lines->lines;
  } else if (std::holds_alternative<SpannedLines>(family)) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (std::size_t j = i + 1; j < points.size(); ++j) lines.push_back(line_through(points[i], points[j]));
    }
  } else {
    const auto& el = std::get<ElekesLines>(family);
    std::vector<Scalar> distinct_a(A.begin(), A.end());
    std::sort(distinct_a.begin(), distinct_a.end());
    const auto a = static_cast<std::uint64_t>(
        std::unique(distinct_a.begin(), distinct_a.end()) - distinct_a.begin());
    for (std::uint64_t s = 1; s <= el.c; ++s) {
      for (std::uint64_t t = 1; t <= a * el.c; ++t) {
        lines.push_back(AffineLine::non_vertical(Scalar(static_cast<std::int64_t>(s), mod),
                                                 Scalar(static_cast<std::int64_t>(t), mod)));
      }
    }
  }
  return Instance(mod, std::move(points), std::move(lines));
}

std::uint64_t SplitMix64::next() {
  // SplitMix64 (Steele, Lea, Flood 2014):
  //   state += 0x9E3779B97F4A7C15
  //   z = state
  //   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
  //   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
  //   return z ^ (z >> 31)
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  // Reject draws from the incomplete final block so every residue is equally likely.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t v;
  do {
    v = next();
  } while (v >= limit);
  return v % bound;
}

std::vector<std::uint64_t> sample_distinct(std::uint64_t universe, std::uint64_t k, SplitMix64& rng) {
  if (k > universe) throw Error(ErrorCode::too_many_requested, "sample larger than universe");
  // Floyd: for j = universe-k .. universe-1, draw t in [0, j]; take t unless already taken,
  // in which case take j.
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(k * 2);
  std::vector<std::uint64_t> out;
  out.reserve(k);
  for (std::uint64_t j = universe - k; j < universe; ++j) {
    const std::uint64_t t = rng.below(j + 1);
    const std::uint64_t pick = chosen.contains(t) ? j : t;
    chosen.insert(pick);
    out.push_back(pick);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Instance random_instance(PrimeModulus mod, std::uint64_t m, std::uint64_t n, std::uint64_t seed) {
  const std::uint64_t p = mod.value();
  if (m > p * p) {
    throw Error(ErrorCode::too_many_requested, std::to_string(m) + " points > p^2 = " + std::to_string(p * p));
  }
  if (n > p * p + p) {
    throw Error(ErrorCode::too_many_requested,
                std::to_string(n) + " lines > p^2 + p = " + std::to_string(p * p + p));
  }
  SplitMix64 rng(seed);
  const auto point_ids = sample_distinct(p * p, m, rng);
  const auto line_ids = sample_distinct(p * p + p, n, rng);
  const auto raw = [&](std::uint64_t v) { return Scalar::from_raw(static_cast<std::uint32_t>(v), mod); };

  std::vector<AffinePoint> points;
  points.reserve(m);
  for (std::uint64_t id : point_ids) points.emplace_back(raw(id / p), raw(id % p));
  std::vector<AffineLine> lines;
  lines.reserve(n);
  for (std::uint64_t id : line_ids) {
    lines.push_back(id < p * p ? AffineLine::non_vertical(raw(id / p), raw(id % p))
                               : AffineLine::vertical(raw(id - p * p)));
  }
  return Instance(mod, std::move(points), std::move(lines));
}

Instance random_cartesian(PrimeModulus mod, std::uint64_t a, std::uint64_t b, std::uint64_t n,
                          std::uint64_t seed) {
  const std::uint64_t p = mod.value();
  if (a > p || b > p) throw Error(ErrorCode::too_many_requested, "a and b must not exceed p");
  if (n > p * p) throw Error(ErrorCode::too_many_requested, "at most p^2 non-vertical lines");
  std::vector<AffinePoint> points;
  points.reserve(a * b);
  for (std::uint64_t x = 0; x < a; ++x)
    for (std::uint64_t y = 0; y < b; ++y)
      points.emplace_back(Scalar::from_raw(static_cast<std::uint32_t>(x), mod),
                          Scalar::from_raw(static_cast<std::uint32_t>(y), mod));
  SplitMix64 rng(seed);
  std::vector<AffineLine> lines;
  lines.reserve(n);
  for (std::uint64_t id : sample_distinct(p * p, n, rng)) {
    lines.push_back(AffineLine::non_vertical(Scalar::from_raw(static_cast<std::uint32_t>(id / p), mod),
                                             Scalar::from_raw(static_cast<std::uint32_t>(id % p), mod)));
  }
  return Instance(mod, std::move(points), std::move(lines));
}

std::vector<AffineLine> pencil(const AffinePoint& vertex, std::span<const Scalar> slopes,
                               bool include_vertical) {
  std::vector<AffineLine> lines;
  lines.reserve(slopes.size() + 1);
  for (const auto& s : slopes) lines.push_back(AffineLine::non_vertical(s, vertex.y - s * vertex.x));
  if (include_vertical) lines.push_back(AffineLine::vertical(vertex.x));
  canonicalize(lines);
  return lines;
}

}  // namespace inclab
