#include "inclab/distances.hpp"

#include <algorithm>
#include <bit>

#include "inclab/error.hpp"
#include "inclab/incidence.hpp"

namespace inclab {

namespace {

std::vector<AffinePoint> as_set(std::span<const AffinePoint> P) {
  std::vector<AffinePoint> out(P.begin(), P.end());
  canonicalize(out);
  return out;
}

// Sorted distances from q to every point of pts, raw residues.
std::vector<std::uint32_t> distances_from(const AffinePoint& q, const std::vector<AffinePoint>& pts) {
  std::vector<std::uint32_t> out;
  out.reserve(pts.size());
  for (const auto& r : pts) out.push_back(distance(q, r).value());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Scalar distance(const AffinePoint& q, const AffinePoint& r) {
  const Scalar dx = q.x - r.x, dy = q.y - r.y;
  return dx * dx + dy * dy;
}

DistanceReport distance_sets(std::span<const AffinePoint> P) {
  DistanceReport rep;
  rep.points = as_set(P);
  if (rep.points.empty()) throw Error(ErrorCode::empty_input, "distance sets of an empty set");
  const PrimeModulus mod = rep.points.front().modulus();
  std::vector<Scalar> all;
  for (std::size_t i = 0; i < rep.points.size(); ++i) {
    auto d = distances_from(rep.points[i], rep.points);
    d.erase(std::unique(d.begin(), d.end()), d.end());
    std::vector<Scalar> pin;
    pin.reserve(d.size());
    for (auto v : d) pin.push_back(Scalar::from_raw(v, mod));
    if (pin.size() > rep.max_pinned) {
      rep.max_pinned = pin.size();
      rep.best_pin = i;
    }
    all.insert(all.end(), pin.begin(), pin.end());
    rep.pinned.push_back(std::move(pin));
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  rep.all = std::move(all);
  rep.degenerate = rep.all.size() == 1;
  return rep;
}

std::optional<std::pair<AffineLine, AffineLine>> isotropic_lines(const AffinePoint& r) {
  const PrimeModulus mod = r.modulus();
  auto i = sqrt_mod(Scalar(-1, mod));
  if (!i) return std::nullopt;
  auto through = [&](const Scalar& s) { return AffineLine::non_vertical(s, r.y - s * r.x); };
  return std::make_pair(through(*i), through(-*i));
}

std::vector<AffineLine> bisector_instance(std::span<const AffinePoint> P, const AffinePoint& r) {
  const PrimeModulus mod = r.modulus();
  const Scalar two(2, mod);
  std::vector<AffineLine> out;
  for (const auto& s : P) {
    if (distance(r, s).is_zero()) continue;
    // With s' = s - r: 2 s'x X + 2 s'y Y = |s'|^2 + 2 s'x rx + 2 s'y ry.
    const Scalar sx = s.x - r.x, sy = s.y - r.y;
    const Scalar a = two * sx, b = two * sy;
    const Scalar rhs = sx * sx + sy * sy + a * r.x + b * r.y;
    if (b.is_zero())
      out.push_back(AffineLine::vertical(rhs / a));
    else
      out.push_back(AffineLine::non_vertical(-a / b, rhs / b));
  }
  canonicalize(out);
  return out;
}

std::uint64_t bisector_incidences(std::span<const AffinePoint> P) {
  const auto pts = as_set(P);
  if (pts.empty()) return 0;
  std::uint64_t total = 0;
  for (const auto& r : pts)
    total += count_incidences(Instance(r.modulus(), pts, bisector_instance(pts, r)));
  return total;
}

std::uint64_t isosceles_triples(std::span<const AffinePoint> P) {
  const auto pts = as_set(P);
  std::uint64_t total = 0;
  for (const auto& q : pts) {
    const auto d = distances_from(q, pts);
    for (std::size_t i = 0; i < d.size();) {
      std::size_t j = i;
      while (j < d.size() && d[j] == d[i]) ++j;
      const std::uint64_t c = j - i;
      if (d[i] != 0) total += c * (c - 1);
      i = j;
    }
  }
  return total;
}

BeckReport determined_lines(std::span<const AffinePoint> P) {
  const auto pts = as_set(P);
  if (pts.size() < 2) throw Error(ErrorCode::too_few_points, "need at least two distinct points");
  std::vector<std::pair<AffineLine, std::size_t>> hits;  // (line, index of a point on it)
  hits.reserve(pts.size() * (pts.size() - 1));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t k = i + 1; k < pts.size(); ++k) {
      const AffineLine l = line_through(pts[i], pts[k]);
      hits.emplace_back(l, i);
      hits.emplace_back(l, k);
    }
  }
  std::sort(hits.begin(), hits.end(),
            [](const auto& u, const auto& v) { return u.first != v.first ? u.first < v.first : u.second < v.second; });

  BeckReport rep;
  for (std::size_t i = 0; i < hits.size();) {
    std::size_t j = i;
    std::uint64_t distinct = 0;
    while (j < hits.size() && hits[j].first == hits[i].first) {
      if (j == i || hits[j].second != hits[j - 1].second) ++distinct;
      ++j;
    }
    rep.lines.push_back(hits[i].first);
    rep.richness.push_back(distinct);
    i = j;
  }

  for (auto k : rep.richness) {
    const unsigned j = static_cast<unsigned>(std::bit_width(k) - 1);
    if (rep.classes.size() < j) {
      for (unsigned t = static_cast<unsigned>(rep.classes.size()) + 1; t <= j; ++t) rep.classes.push_back({t, 0, 0});
    }
    auto& cls = rep.classes[j - 1];
    const std::uint64_t pairs = k * (k - 1) / 2;
    ++cls.lines;
    cls.pairs += pairs;
    rep.pairs_covered += pairs;
  }
  std::erase_if(rep.classes, [](const DyadicClass& c) { return c.lines == 0; });
  const std::uint64_t m = pts.size();
  rep.pairs_total = m * (m - 1) / 2;
  return rep;
}

}  // namespace inclab
