#include "inclab/incidence.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "inclab/count_kernel.hpp"

namespace inclab {

Engine parse_engine(std::string_view name) {
  if (name == "naive") return Engine::naive;
  if (name == "hash_join" || name == "hash-join") return Engine::hash_join;
  if (name == "auto" || name == "automatic") return Engine::automatic;
  throw Error(ErrorCode::parse_error, "unknown engine '" + std::string(name) + "'");
}

std::string_view to_string(Engine e) {
  switch (e) {
    case Engine::naive: return "naive";
    case Engine::hash_join: return "hash_join";
    case Engine::automatic: return "auto";
  }
  return "auto";
}

namespace {

// Columns of raw residues extracted once per count.
struct RawInstance {
  std::uint32_t p;
  std::vector<std::uint32_t> px, py;          // points, sorted by (x, y)
  std::vector<std::uint32_t> slope, icept;    // non-vertical lines, sorted by (slope, intercept)
  std::vector<std::uint32_t> vx;              // vertical lines, sorted
  std::vector<std::size_t> slope_runs;        // run boundaries into slope/icept
  std::vector<std::size_t> column_runs;       // run boundaries into px/py

  explicit RawInstance(const Instance& inst) : p(inst.modulus().value()) {
    px.reserve(inst.m());
    py.reserve(inst.m());
    for (const auto& q : inst.points()) {
      px.push_back(q.x.value());
      py.push_back(q.y.value());
    }
    for (const auto& l : inst.lines()) {
      if (l.is_vertical()) {
        vx.push_back(l.raw_a());
      } else {
        slope.push_back(l.raw_a());
        icept.push_back(l.raw_b());
      }
    }
    slope_runs = runs(slope);
    column_runs = runs(px);
  }

  static std::vector<std::size_t> runs(const std::vector<std::uint32_t>& keys) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (i == 0 || keys[i] != keys[i - 1]) out.push_back(i);
    }
    out.push_back(keys.size());
    return out;
  }

  std::size_t slope_classes() const { return slope_runs.size() - 1; }
  std::size_t columns() const { return column_runs.size() - 1; }
};

// Groups with at most this many members are probed by direct vectorized tests.
constexpr std::size_t kDirectProbe = 4;

std::uint64_t count_naive(const Instance& inst) {
  const std::uint32_t p = inst.modulus().value();
  std::uint64_t total = 0;
  for (const auto& q : inst.points()) {
    const std::uint32_t x = q.x.value(), y = q.y.value();
    for (const auto& l : inst.lines()) {
      if (l.is_vertical()) {
        total += (x == l.raw_a());
      } else {
        total += (y == modp::add(modp::mul(l.raw_a(), x, p), l.raw_b(), p));
      }
    }
  }
  return total;
}

// Number of points whose x equals each vertical line's x0.
std::uint64_t count_vertical(const RawInstance& raw) {
  std::uint64_t total = 0;
  for (std::uint32_t x0 : raw.vx) {
    auto range = std::equal_range(raw.px.begin(), raw.px.end(), x0);
    total += static_cast<std::uint64_t>(range.second - range.first);
  }
  return total;
}

// For every slope class: points whose key y - s*x hits an intercept of the class.
std::uint64_t count_slope_sweep(const RawInstance& raw) {
  const std::uint32_t p = raw.p;
  const std::size_t m = raw.px.size();
  const bool fast = detail::fast_kernel_ok(p);
  std::uint64_t total = count_vertical(raw);
  if (m == 0) return total;

  std::vector<double> xs(raw.px.begin(), raw.px.end());
  std::vector<double> neg_ys(m);
  for (std::size_t i = 0; i < m; ++i) neg_ys[i] = -static_cast<double>(raw.py[i]);
  std::vector<std::uint32_t> keys(m);
  // Lines of sparse slope classes, probed in batches.
  std::vector<double> probe_s, probe_t;

  for (std::size_t c = 0; c + 1 < raw.slope_runs.size(); ++c) {
    const std::size_t lo = raw.slope_runs[c], hi = raw.slope_runs[c + 1];
    const std::uint32_t s = raw.slope[lo];
    if (fast && hi - lo <= kDirectProbe) {
      for (std::size_t j = lo; j < hi; ++j) {
        probe_s.push_back(s);
        probe_t.push_back(raw.icept[j]);
      }
      continue;
    }
    // keys[i] = s*x - y; the point lies on y = s*x + t iff t == -keys[i].
    if (fast) {
      detail::affine_residues(xs, neg_ys, s, p, keys);
    } else {
      for (std::size_t i = 0; i < m; ++i) {
        keys[i] = modp::sub(modp::mul(s, raw.px[i], p), raw.py[i], p);
      }
    }
    const auto first = raw.icept.begin() + static_cast<std::ptrdiff_t>(lo);
    const auto last = raw.icept.begin() + static_cast<std::ptrdiff_t>(hi);
    for (std::size_t i = 0; i < m; ++i) {
      total += std::binary_search(first, last, modp::neg(keys[i], p));
    }
  }
  if (!probe_s.empty()) total += detail::count_affine_zeros_multi(xs, neg_ys, probe_s, probe_t, p);
  return total;
}

// For every x-column of points: lines whose value s*x + t lands on a y of the column.
std::uint64_t count_column_sweep(const RawInstance& raw) {
  const std::uint32_t p = raw.p;
  const std::size_t nv = raw.slope.size();
  const bool fast = detail::fast_kernel_ok(p);
  std::uint64_t total = count_vertical(raw);
  if (nv == 0) return total;

  std::vector<double> slopes(raw.slope.begin(), raw.slope.end());
  std::vector<double> icepts(raw.icept.begin(), raw.icept.end());
  std::vector<std::uint32_t> values(nv);
  // Points of sparse columns, probed in batches.
  std::vector<double> probe_x, probe_y;

  for (std::size_t c = 0; c + 1 < raw.column_runs.size(); ++c) {
    const std::size_t lo = raw.column_runs[c], hi = raw.column_runs[c + 1];
    const std::uint32_t x = raw.px[lo];
    if (fast && hi - lo <= kDirectProbe) {
      for (std::size_t i = lo; i < hi; ++i) {
        probe_x.push_back(x);
        probe_y.push_back(-static_cast<double>(raw.py[i]));
      }
      continue;
    }
    if (fast) {
      detail::affine_residues(slopes, icepts, x, p, values);
    } else {
      for (std::size_t j = 0; j < nv; ++j) {
        values[j] = modp::add(modp::mul(raw.slope[j], x, p), raw.icept[j], p);
      }
    }
    const auto first = raw.py.begin() + static_cast<std::ptrdiff_t>(lo);
    const auto last = raw.py.begin() + static_cast<std::ptrdiff_t>(hi);
    for (std::size_t j = 0; j < nv; ++j) total += std::binary_search(first, last, values[j]);
  }
  if (!probe_x.empty()) total += detail::count_affine_zeros_multi(slopes, icepts, probe_x, probe_y, p);
  return total;
}

CostModel cost_model(const RawInstance& raw) {
  const std::uint64_t m = raw.px.size();
  const std::uint64_t n = raw.slope.size() + raw.vx.size();
  return CostModel{m * n, n * raw.columns(), m * (raw.slope_classes() + 1)};
}

std::uint64_t count_hash_join(const RawInstance& raw) {
  const CostModel cost = cost_model(raw);
  return cost.slope_sweep <= cost.column_sweep ? count_slope_sweep(raw) : count_column_sweep(raw);
}

}  // namespace

CostModel cost_model(const Instance& inst) { return cost_model(RawInstance(inst)); }

std::uint64_t count_incidences(const Instance& inst, Engine engine) {
  if (engine == Engine::naive) return count_naive(inst);
  const RawInstance raw(inst);
  if (engine == Engine::automatic) {
    const CostModel cost = cost_model(raw);
    if (cost.naive < std::min(cost.slope_sweep, cost.column_sweep)) return count_naive(inst);
  }
  return count_hash_join(raw);
}

void for_each_incidence(const Instance& inst,
                        const std::function<void(std::size_t, std::size_t)>& visit) {
  const RawInstance raw(inst);
  const std::uint32_t p = raw.p;
  const std::size_t m = raw.px.size();
  const std::size_t nv = raw.slope.size();
  const CostModel cost = cost_model(raw);

  // Vertical lines follow the non-vertical ones in inst.lines().
  for (std::size_t j = 0; j < raw.vx.size(); ++j) {
    auto range = std::equal_range(raw.px.begin(), raw.px.end(), raw.vx[j]);
    for (auto it = range.first; it != range.second; ++it) {
      visit(static_cast<std::size_t>(it - raw.px.begin()), nv + j);
    }
  }

  if (cost.slope_sweep <= cost.column_sweep) {
    for (std::size_t c = 0; c + 1 < raw.slope_runs.size(); ++c) {
      const std::size_t lo = raw.slope_runs[c], hi = raw.slope_runs[c + 1];
      const std::uint32_t s = raw.slope[lo];
      const auto first = raw.icept.begin() + static_cast<std::ptrdiff_t>(lo);
      const auto last = raw.icept.begin() + static_cast<std::ptrdiff_t>(hi);
      for (std::size_t i = 0; i < m; ++i) {
        const std::uint32_t t = modp::sub(raw.py[i], modp::mul(s, raw.px[i], p), p);
        auto it = std::lower_bound(first, last, t);
        if (it != last && *it == t) visit(i, static_cast<std::size_t>(it - raw.icept.begin()));
      }
    }
  } else {
    for (std::size_t c = 0; c + 1 < raw.column_runs.size(); ++c) {
      const std::size_t lo = raw.column_runs[c], hi = raw.column_runs[c + 1];
      const std::uint32_t x = raw.px[lo];
      const auto first = raw.py.begin() + static_cast<std::ptrdiff_t>(lo);
      const auto last = raw.py.begin() + static_cast<std::ptrdiff_t>(hi);
      for (std::size_t j = 0; j < nv; ++j) {
        const std::uint32_t y = modp::add(modp::mul(raw.slope[j], x, p), raw.icept[j], p);
        auto it = std::lower_bound(first, last, y);
        if (it != last && *it == y) visit(static_cast<std::size_t>(it - raw.py.begin()), j);
      }
    }
  }
}

RichnessHistogram richness_histograms(const Instance& inst) {
  RichnessHistogram h;
  h.per_point.assign(inst.m(), 0);
  h.per_line.assign(inst.n(), 0);
  for_each_incidence(inst, [&](std::size_t i, std::size_t j) {
    ++h.per_point[i];
    ++h.per_line[j];
    ++h.total;
  });
  return h;
}

// ---------------------------------------------------------------------------------------------

Plane3 Plane3::make(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d,
                    PrimeModulus mod) {
  const std::uint32_t p = mod.value();
  std::array<std::uint32_t, 4> coef{modp::reduce(a, p), modp::reduce(b, p), modp::reduce(c, p),
                                    modp::reduce(d, p)};
  auto lead = std::find_if(coef.begin(), coef.begin() + 3, [](std::uint32_t v) { return v != 0; });
  if (lead == coef.begin() + 3) throw Error(ErrorCode::degenerate_input, "plane with zero normal");
  const std::uint32_t scale = modp::inv(*lead, p);
  for (auto& v : coef) v = modp::mul(v, scale, p);
  return Plane3{coef};
}

PlaneInstance3D::PlaneInstance3D(PrimeModulus mod, std::vector<Point3> points,
                                 std::vector<Plane3> planes)
    : mod_(mod), points_(std::move(points)), planes_(std::move(planes)) {
  const std::uint32_t p = mod.value();
  for (auto& q : points_) {
    for (auto& v : q.c) v %= p;
  }
  for (auto& pl : planes_) {
    pl = Plane3::make(pl.coef[0], pl.coef[1], pl.coef[2], pl.coef[3], mod);
  }
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
  std::sort(planes_.begin(), planes_.end());
  planes_.erase(std::unique(planes_.begin(), planes_.end()), planes_.end());
}

std::uint64_t count_point_plane(const PlaneInstance3D& inst) {
  const std::uint32_t p = inst.modulus().value();
  std::uint64_t total = 0;
  for (const auto& pl : inst.planes()) {
    const auto& k = pl.coef;
    for (const auto& q : inst.points()) {
      const std::uint64_t v = std::uint64_t{k[0]} * q.c[0] % p + std::uint64_t{k[1]} * q.c[1] % p +
                              std::uint64_t{k[2]} * q.c[2] % p + k[3];
      total += (v % p == 0);
    }
  }
  return total;
}

std::size_t max_collinear_3d(std::span<const Point3> points, PrimeModulus mod) {
  if (points.size() <= 2) return points.size();
  const std::uint32_t p = mod.value();
  std::size_t best = 2;
  std::vector<std::array<std::uint32_t, 3>> dirs;
  for (std::size_t i = 0; i < points.size(); ++i) {
    dirs.clear();
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      std::array<std::uint32_t, 3> d{};
      for (int k = 0; k < 3; ++k) d[k] = modp::sub(points[j].c[k] % p, points[i].c[k] % p, p);
      auto lead = std::find_if(d.begin(), d.end(), [](std::uint32_t v) { return v != 0; });
      if (lead == d.end()) continue;  // repeated point
      const std::uint32_t scale = modp::inv(*lead, p);
      for (auto& v : d) v = modp::mul(v, scale, p);
      dirs.push_back(d);
    }
    std::sort(dirs.begin(), dirs.end());
    for (std::size_t a = 0; a < dirs.size();) {
      std::size_t b = a;
      while (b < dirs.size() && dirs[b] == dirs[a]) ++b;
      best = std::max(best, b - a + 1);
      a = b;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------------------------

ReferenceBound reference_bound(std::uint64_t m, std::uint64_t n, std::uint64_t q, BoundKind which) {
  if (m == 0 || n == 0) throw Error(ErrorCode::out_of_range, "reference bound needs m, n >= 1");
  const double md = static_cast<double>(m), nd = static_cast<double>(n);
  switch (which) {
    case BoundKind::combinatorial:
      return {"combinatorial",
              std::min(std::sqrt(md) * nd + md, md * std::sqrt(nd) + nd)};
    case BoundKind::vinh: {
      if (q == 0) throw Error(ErrorCode::out_of_range, "field size must be positive");
      const double qd = static_cast<double>(q);
      return {"vinh", md * nd / qd + std::sqrt(qd) * std::sqrt(md * nd)};
    }
    case BoundKind::table1: {
      // Boundaries are compared exactly in integers; ties go to the lower row.
      const BigInt M(m), N(n);
      if (N * N <= M) return {"n < m^{1/2}", md};
      if (pow(N, 8) <= pow(M, 7)) return {"m^{1/2} < n < m^{7/8}", std::sqrt(md) * nd};
      if (pow(N, 7) < pow(M, 8)) {
        return {"m^{7/8} < n < m^{8/7}", std::pow(md, 11.0 / 15.0) * std::pow(nd, 11.0 / 15.0)};
      }
      if (N <= M * M) return {"m^{8/7} < n < m^2", md * std::sqrt(nd)};
      return {"m^2 < n", nd};
    }
  }
  return {};
}

bool within_combinatorial_bound(std::uint64_t count, std::uint64_t m, std::uint64_t n) {
  // count <= sqrt(m) n + m  <=>  count <= m or (count - m)^2 <= n^2 m, and symmetrically.
  const BigInt I(count), M(m), N(n);
  const bool first = I <= M || (I - M) * (I - M) <= N * N * M;
  const bool second = I <= N || (I - N) * (I - N) <= M * M * N;
  return first && second;
}

std::string_view to_string(Theorem t) {
  switch (t) {
    case Theorem::general_incidence: return "general-incidence";
    case Theorem::cartesian_product: return "cartesian-product";
    case Theorem::point_plane: return "point-plane";
  }
  return "";
}

HypothesisSizes sizes_of(const Instance& inst) {
  HypothesisSizes s;
  s.p = inst.modulus().value();
  s.m = inst.m();
  s.n = inst.n();
  std::vector<std::uint32_t> xs, ys;
  for (const auto& q : inst.points()) {
    xs.push_back(q.x.value());
    ys.push_back(q.y.value());
  }
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  s.a = static_cast<std::uint64_t>(std::unique(xs.begin(), xs.end()) - xs.begin());
  s.b = static_cast<std::uint64_t>(std::unique(ys.begin(), ys.end()) - ys.begin());
  s.r = s.a * s.n;
  s.s = s.a * s.n;
  return s;
}

namespace {

Condition strict_less(std::string name, const BigInt& lhs, const BigInt& rhs) {
  return {std::move(name), to_string(lhs), to_string(rhs), lhs < rhs};
}

Condition at_most(std::string name, const BigInt& lhs, const BigInt& rhs) {
  return {std::move(name), to_string(lhs), to_string(rhs), lhs <= rhs};
}

// X << Y read as X <= c*Y.
Condition ll(std::string name, const BigInt& lhs, const BigInt& rhs, const Rational& c) {
  const Rational scaled = c * Rational(rhs);
  return {std::move(name), to_string(lhs), to_string(scaled), Rational(lhs) <= scaled};
}

}  // namespace

HypothesisReport check_hypotheses(const HypothesisSizes& z, Theorem theorem,
                                  const Rational& constant) {
  HypothesisReport report{theorem, {}, false, constant};
  auto& conds = report.conditions;
  const BigInt p(z.p);
  switch (theorem) {
    case Theorem::general_incidence: {
      const BigInt m(z.m), n(z.n);
      conds.push_back(strict_less("m^{7/8} < n  [m^7 < n^8]", pow(m, 7), pow(n, 8)));
      conds.push_back(strict_less("n < m^{8/7}  [n^7 < m^8]", pow(n, 7), pow(m, 8)));
      conds.push_back(ll("m^{-2} n^{13} << p^{15}  [n^13 <= c p^15 m^2]", pow(n, 13),
                         pow(p, 15) * m * m, constant));
      break;
    }
    case Theorem::cartesian_product: {
      const BigInt a(z.a), b(z.b), n(z.n);
      conds.push_back(at_most("a <= b", a, b));
      conds.push_back(at_most("a b^2 <= n^3", a * b * b, pow(n, 3)));
      conds.push_back(ll("a n << p^2", a * n, p * p, constant));
      break;
    }
    case Theorem::point_plane: {
      const BigInt r(z.r), s(z.s);
      conds.push_back(at_most("r <= s", r, s));
      conds.push_back(ll("r << p^2", r, p * p, constant));
      break;
    }
  }
  report.overall = std::all_of(conds.begin(), conds.end(), [](const Condition& c) { return c.pass; });
  return report;
}

}  // namespace inclab
