#include "inclab/cover.hpp"

#include <algorithm>
#include <climits>
#include <iterator>
#include <map>

#include "inclab/error.hpp"
#include "inclab/incidence.hpp"

namespace inclab {

namespace {

Rational ratio(std::uint64_t num, std::uint64_t den) { return Rational(BigInt(num), BigInt(den)); }

// The three lower bounds on K under which the extraction's size guarantee is proved.
bool size_preconditions(const Rational& K, std::uint64_t m, std::uint64_t n, const Rational& c1) {
  if (m == 0 || c1 <= 0) return false;
  Rational rm(m), rn(n);
  bool a = K >= 4 * rn / (c1 * rm);
  bool b = K >= 8 / c1;
  bool c = K * K * K >= 64 * rn * rn / (c1 * c1 * c1 * rm);
  return a && b && c;
}

Rational size_bound(const Rational& K, std::uint64_t m, std::uint64_t n, const Rational& c1) {
  if (n == 0) return Rational(0);
  Rational c4 = pow_rational(c1, 4), K4 = pow_rational(K, 4);
  return c4 * K4 * Rational(m) / (512 * Rational(n) * Rational(n));
}

std::vector<std::pair<std::size_t, std::size_t>> incidence_pairs(const Instance& inst) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for_each_incidence(inst, [&](std::size_t pi, std::size_t li) { out.emplace_back(pi, li); });
  return out;
}

std::vector<AffineLine> lines_joining(const AffinePoint& apex, const std::vector<AffinePoint>& pts) {
  std::vector<AffineLine> out;
  out.reserve(pts.size());
  for (const auto& q : pts) out.push_back(line_through(apex, q));
  canonicalize(out);
  return out;
}

}  // namespace

RichnessPartition richness_partition(const Instance& inst, const Rational& c_dearth,
                                     const Rational& c_excess) {
  if (inst.m() == 0) throw Error(ErrorCode::empty_instance, "richness partition needs m >= 1");
  if (!(c_dearth < c_excess))
    throw Error(ErrorCode::out_of_range, "c_dearth must be smaller than c_excess");
  RichnessHistogram h = richness_histograms(inst);
  RichnessPartition out;
  out.K = ratio(h.total, inst.m());
  out.c_dearth = c_dearth;
  out.c_excess = c_excess;
  Rational lo = c_dearth * out.K, hi = c_excess * out.K;
  for (std::size_t i = 0; i < inst.m(); ++i) {
    Rational d(h.per_point[i]);
    const AffinePoint& q = inst.points()[i];
    if (d <= lo)
      out.D.push_back(q);
    else if (d >= hi)
      out.E.push_back(q);
    else
      out.A.push_back(q);
  }
  return out;
}

PencilGrid two_pencil_extract(std::span<const AffinePoint> points, std::span<const AffineLine> lines,
                              const Rational& c1, const Rational& c2, std::optional<Rational> K) {
  if (points.empty()) throw Error(ErrorCode::no_incidences, "no points");
  const PrimeModulus mod = points.front().modulus();
  Instance P(mod, {points.begin(), points.end()}, {lines.begin(), lines.end()});
  const std::uint64_t m = P.m(), n = P.n();

  RichnessHistogram h = richness_histograms(P);
  if (h.total == 0) throw Error(ErrorCode::no_incidences, "I(P, L) = 0");

  PencilGrid out{P.points().front(), P.points().front(), {}, {}, {}, {}};
  ExtractionTrace& tr = out.trace;
  tr.K = K ? *K : ratio(h.total, m);
  tr.incidences = h.total;

  // L1: lines carrying at least I/(2n) points.
  std::vector<char> in_l1(n, 0);
  std::uint64_t inc_l1 = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (h.per_line[j] * 2 * n >= h.total) {
      in_l1[j] = 1;
      inc_l1 += h.per_line[j];
      tr.rich_lines.push_back(P.lines()[j]);
    }
  }

  std::vector<std::uint64_t> deg_l1(m, 0);
  for (auto [pi, li] : incidence_pairs(P))
    if (in_l1[li]) ++deg_l1[pi];
  std::size_t p1 = 0;
  while (deg_l1[p1] * 2 * m < inc_l1) ++p1;  // averaging guarantees a hit
  out.p1 = P.points()[p1];

  for (std::size_t i = 0; i < m; ++i) {
    if (i == p1) continue;
    const AffinePoint& q = P.points()[i];
    if (P.contains(line_through(out.p1, q))) tr.first_fan.push_back(q);
  }
  if (tr.first_fan.empty())
    throw Error(ErrorCode::empty_grid, "no line of L joins " + to_string(out.p1) + " to another point");

  // L2: richness over Q, still measured against the full line set.
  Instance QI(mod, tr.first_fan, P.lines());
  RichnessHistogram hq = richness_histograms(QI);
  const std::uint64_t qn = QI.m();
  std::vector<char> in_l2(n, 0);
  std::uint64_t inc_l2 = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (hq.per_line[j] * 2 * n >= hq.total) {
      in_l2[j] = 1;
      inc_l2 += hq.per_line[j];
      tr.fan_lines.push_back(QI.lines()[j]);
    }
  }
  std::vector<std::uint64_t> deg_l2(qn, 0);
  for (auto [pi, li] : incidence_pairs(QI))
    if (in_l2[li]) ++deg_l2[pi];
  std::size_t q1 = 0;
  while (q1 < qn && deg_l2[q1] * 2 * qn < inc_l2) ++q1;
  if (q1 == qn) q1 = 0;  // only when inc_l2 == 0, which the first pass already accepts
  out.q1 = QI.points()[q1];

  const AffineLine apex = line_through(out.p1, out.q1);
  for (const auto& q : QI.points()) {
    if (incident(q, apex)) continue;
    if (std::binary_search(tr.fan_lines.begin(), tr.fan_lines.end(), line_through(out.q1, q)))
      out.G.push_back(q);
  }
  if (out.G.empty())
    throw Error(ErrorCode::empty_grid, "no line of L2 joins " + to_string(out.q1) +
                                           " to a point of Q off " + to_string(apex));

  out.pencil_p1 = lines_joining(out.p1, out.G);
  out.pencil_q1 = lines_joining(out.q1, out.G);

  Rational lo = c1 * tr.K, hi = c2 * tr.K;
  tr.regular = std::all_of(h.per_point.begin(), h.per_point.end(), [&](std::uint64_t d) {
    Rational r(d);
    return r >= lo && r <= hi;
  });
  tr.preconditions_held = tr.regular && size_preconditions(tr.K, m, n, c1);
  tr.size_lower_bound = size_bound(tr.K, m, n, c1);
  return out;
}

CoverParameters CoverParameters::asymptotic() {
  return {Rational(1, 2048), Rational(32768), Rational(1, 32768)};
}

CoverParameters CoverParameters::desk_scale() {
  return {Rational(1, 2), Rational(2), Rational(1, 4)};
}

GridCertificate grid_cover(const Instance& inst, const CoverParameters& params) {
  GridCertificate cert;
  cert.params = params;
  cert.m = inst.m();
  cert.n = inst.n();
  cert.termination = "stop_fraction";
  if (inst.m() == 0) return cert;

  cert.partition = richness_partition(inst, params.c1, params.c2);
  cert.K = cert.partition.K;
  const Rational stop = params.stop_fraction * Rational(inst.m());
  std::vector<AffinePoint> A = cert.partition.A;

  while (Rational(A.size()) > stop) {
    std::optional<PencilGrid> g;
    try {
      g = two_pencil_extract(A, inst.lines(), params.c1, params.c2, cert.K);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::empty_grid) {
        cert.termination = "empty_grid";
        break;
      }
      if (e.code() == ErrorCode::no_incidences) {
        cert.termination = "no_incidences";
        break;
      }
      throw;
    }
    std::vector<AffinePoint> rest;
    rest.reserve(A.size() - g->G.size());
    std::set_difference(A.begin(), A.end(), g->G.begin(), g->G.end(), std::back_inserter(rest));
    cert.steps.push_back({std::move(*g), A.size()});
    A = std::move(rest);
  }
  cert.leftover = std::move(A);
  return cert;
}

NormalizedGrid normalize_grid(const PencilGrid& grid, std::span<const AffineLine> lines) {
  if (grid.G.empty()) throw Error(ErrorCode::degenerate_input, "empty grid");
  const PrimeModulus mod = grid.p1.modulus();
  Instance src(mod, grid.G, {lines.begin(), lines.end()});
  NormalizedGrid out{projective_map_from_pair(grid.p1, grid.q1), {}, {}, {}, {}, false};
  out.dropped_apex_line = src.contains(line_through(grid.p1, grid.q1));

  Instance img = apply_map(out.map, src, LineAtInfinityPolicy::drop);
  out.H = img.points();
  out.lines = img.lines();
  for (const auto& h : out.H) {
    out.X.push_back(h.x);
    out.Y.push_back(h.y);
  }
  std::sort(out.X.begin(), out.X.end());
  out.X.erase(std::unique(out.X.begin(), out.X.end()), out.X.end());
  std::sort(out.Y.begin(), out.Y.end());
  out.Y.erase(std::unique(out.Y.begin(), out.Y.end()), out.Y.end());
  return out;
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::threshold: return "threshold";
    case ViolationKind::partition: return "partition";
    case ViolationKind::disjointness: return "disjointness";
    case ViolationKind::containment: return "containment";
    case ViolationKind::coverage: return "coverage";
    case ViolationKind::pencil_bound: return "pencil_bound";
    case ViolationKind::size_bound: return "size_bound";
    case ViolationKind::step_bound: return "step_bound";
  }
  return "unknown";
}

bool VerificationReport::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.kind == kind; });
}

VerificationReport verify_certificate(const Instance& inst, const GridCertificate& cert) {
  VerificationReport rep;
  auto flag = [&](ViolationKind k, std::string detail) { rep.violations.push_back({k, std::move(detail)}); };
  const auto& pts = inst.points();
  const RichnessPartition& part = cert.partition;
  const Rational& K = cert.K;

  // Degree thresholds of D, E, A.
  RichnessHistogram h = richness_histograms(inst);
  auto degree = [&](const AffinePoint& q) -> std::optional<std::uint64_t> {
    auto it = std::lower_bound(pts.begin(), pts.end(), q);
    if (it == pts.end() || !(*it == q)) return std::nullopt;
    return h.per_point[static_cast<std::size_t>(it - pts.begin())];
  };
  ++rep.checks;
  if (inst.m() > 0 && K != ratio(h.total, inst.m()))
    flag(ViolationKind::threshold, "K is " + to_string(K) + ", expected I/m = " +
                                       to_string(ratio(h.total, inst.m())));
  const Rational lo = part.c_dearth * K, hi = part.c_excess * K;
  auto check_set = [&](const std::vector<AffinePoint>& set, const char* name, auto ok) {
    for (const auto& q : set) {
      auto d = degree(q);
      if (!d)
        flag(ViolationKind::partition, to_string(q) + " in " + name + " is not a point of P");
      else if (!ok(Rational(*d)))
        flag(ViolationKind::threshold, to_string(q) + " in " + name + " has degree " + std::to_string(*d));
    }
  };
  ++rep.checks;
  check_set(part.D, "D", [&](const Rational& d) { return d <= lo; });
  check_set(part.E, "E", [&](const Rational& d) { return d >= hi; });
  check_set(part.A, "A", [&](const Rational& d) { return d > lo && d < hi; });

  // Per-grid structure.
  const Rational pencil_cap = cert.params.c2 * K;
  std::size_t min_grid = SIZE_MAX;
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    const PencilGrid& g = cert.steps[i].grid;
    const std::string tag = "G" + std::to_string(i + 1);
    min_grid = std::min(min_grid, g.G.size());
    rep.checks += 4;
    if (g.p1 == g.q1) {
      flag(ViolationKind::coverage, tag + ": p1 == q1");
      continue;
    }
    const AffineLine apex = line_through(g.p1, g.q1);
    auto pencil_ok = [&](const std::vector<AffineLine>& pencil, const AffinePoint& v, const char* name) {
      for (const auto& l : pencil) {
        if (!incident(v, l)) flag(ViolationKind::coverage, tag + ": " + to_string(l) + " misses " + name);
        if (!inst.contains(l)) flag(ViolationKind::coverage, tag + ": " + to_string(l) + " is not in L");
      }
      if (Rational(pencil.size()) > pencil_cap)
        flag(ViolationKind::pencil_bound,
             tag + ": pencil through " + name + " has " + std::to_string(pencil.size()) + " lines");
    };
    pencil_ok(g.pencil_p1, g.p1, "p1");
    pencil_ok(g.pencil_q1, g.q1, "q1");
    for (const auto& q : g.G) {
      if (!std::binary_search(part.A.begin(), part.A.end(), q))
        flag(ViolationKind::containment, tag + ": " + to_string(q) + " is not in A");
      if (incident(q, apex)) {
        flag(ViolationKind::coverage, tag + ": " + to_string(q) + " lies on " + to_string(apex));
        continue;
      }
      auto on = [&](const std::vector<AffineLine>& pencil) {
        return std::any_of(pencil.begin(), pencil.end(), [&](const AffineLine& l) { return incident(q, l); });
      };
      if (!on(g.pencil_p1) || !on(g.pencil_q1))
        flag(ViolationKind::coverage, tag + ": " + to_string(q) + " is not covered by both pencils");
    }
    const std::uint64_t mi = cert.steps[i].remaining_before;
    if (size_preconditions(K, mi, inst.n(), cert.params.c1)) {
      Rational need = size_bound(K, mi, inst.n(), cert.params.c1);
      if (Rational(g.G.size()) < need)
        flag(ViolationKind::size_bound, tag + ": |G| = " + std::to_string(g.G.size()) +
                                            " below guaranteed " + to_string(need));
    }
  }

  // Pairwise disjointness.
  ++rep.checks;
  std::map<AffinePoint, std::size_t> owner;
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    for (const auto& q : cert.steps[i].grid.G) {
      auto [it, fresh] = owner.emplace(q, i);
      if (!fresh)
        flag(ViolationKind::disjointness, to_string(q) + " in G" + std::to_string(it->second + 1) +
                                              " and G" + std::to_string(i + 1));
    }
  }

  // Partition identity: grids, leftover, D and E together are exactly P.
  ++rep.checks;
  std::vector<AffinePoint> all;
  for (const auto& st : cert.steps) all.insert(all.end(), st.grid.G.begin(), st.grid.G.end());
  all.insert(all.end(), cert.leftover.begin(), cert.leftover.end());
  std::size_t grid_and_left = all.size();
  all.insert(all.end(), part.D.begin(), part.D.end());
  all.insert(all.end(), part.E.begin(), part.E.end());
  std::sort(all.begin(), all.end());
  if (all != pts)
    flag(ViolationKind::partition, "union of grids, leftover, D, E has " + std::to_string(all.size()) +
                                       " entries against m = " + std::to_string(pts.size()));
  if (grid_and_left != part.A.size())
    flag(ViolationKind::partition, "sum of |G_i| plus leftover is " + std::to_string(grid_and_left) +
                                       ", |A| = " + std::to_string(part.A.size()));

  ++rep.checks;
  if (!cert.steps.empty() && cert.steps.size() * min_grid > inst.m())
    flag(ViolationKind::step_bound, "s = " + std::to_string(cert.steps.size()) + " exceeds m / min|G_i|");
  return rep;
}

}  // namespace inclab
