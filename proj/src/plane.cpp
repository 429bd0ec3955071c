#include "inclab/plane.hpp"

#include <algorithm>
#include <stdexcept>

namespace inclab {

namespace {

void require_same(PrimeModulus a, PrimeModulus b) {
  if (a != b) {
    throw Error(ErrorCode::modulus_mismatch,
                "mod " + std::to_string(a.value()) + " vs mod " + std::to_string(b.value()));
  }
}

}  // namespace

AffinePoint::AffinePoint(Scalar x_, Scalar y_) : x(x_), y(y_) {
  require_same(x_.modulus(), y_.modulus());
}

std::string to_string(const AffinePoint& q) {
  return "(" + std::to_string(q.x.value()) + "," + std::to_string(q.y.value()) + ")";
}

AffineLine AffineLine::non_vertical(Scalar slope, Scalar intercept) {
  require_same(slope.modulus(), intercept.modulus());
  return AffineLine(false, slope, intercept);
}

AffineLine AffineLine::vertical(Scalar x0) {
  return AffineLine(true, x0, Scalar::from_raw(0, x0.modulus()));
}

Scalar AffineLine::slope() const {
  if (vertical_) throw std::logic_error("slope of a vertical line");
  return a_;
}

Scalar AffineLine::intercept() const {
  if (vertical_) throw std::logic_error("intercept of a vertical line");
  return b_;
}

Scalar AffineLine::x0() const {
  if (!vertical_) throw std::logic_error("x0 of a non-vertical line");
  return a_;
}

std::string to_string(const AffineLine& l) {
  if (l.is_vertical()) return "x=" + std::to_string(l.raw_a());
  return "y=" + std::to_string(l.raw_a()) + "x+" + std::to_string(l.raw_b());
}

std::size_t canonicalize(std::vector<AffinePoint>& points) {
  std::sort(points.begin(), points.end());
  auto tail = std::unique(points.begin(), points.end());
  std::size_t removed = static_cast<std::size_t>(points.end() - tail);
  points.erase(tail, points.end());
  return removed;
}

std::size_t canonicalize(std::vector<AffineLine>& lines) {
  std::sort(lines.begin(), lines.end());
  auto tail = std::unique(lines.begin(), lines.end());
  std::size_t removed = static_cast<std::size_t>(lines.end() - tail);
  lines.erase(tail, lines.end());
  return removed;
}

Instance::Instance(PrimeModulus mod, std::vector<AffinePoint> points,
                   std::vector<AffineLine> lines)
    : mod_(mod), points_(std::move(points)), lines_(std::move(lines)) {
  for (const auto& q : points_) require_same(mod_, q.modulus());
  for (const auto& l : lines_) require_same(mod_, l.modulus());
  duplicates_removed_ = canonicalize(points_) + canonicalize(lines_);
}

bool Instance::has_vertical_lines() const {
  // Vertical lines sort last.
  return !lines_.empty() && lines_.back().is_vertical();
}

bool Instance::contains(const AffinePoint& q) const {
  return std::binary_search(points_.begin(), points_.end(), q);
}

bool Instance::contains(const AffineLine& l) const {
  return std::binary_search(lines_.begin(), lines_.end(), l);
}

bool incident(const AffinePoint& q, const AffineLine& l) {
  require_same(q.modulus(), l.modulus());
  if (l.is_vertical()) return q.x == l.x0();
  return q.y == l.slope() * q.x + l.intercept();
}

AffineLine line_through(const AffinePoint& q, const AffinePoint& r) {
  if (q == r) throw Error(ErrorCode::coincident_points, "line through " + to_string(q) + " twice");
  if (q.x == r.x) return AffineLine::vertical(q.x);
  Scalar slope = (r.y - q.y) / (r.x - q.x);
  return AffineLine::non_vertical(slope, q.y - slope * q.x);
}

AffinePoint dual_point(const AffineLine& l) {
  if (l.is_vertical()) throw Error(ErrorCode::vertical_line_present, to_string(l));
  return AffinePoint(l.slope(), l.intercept());
}

AffineLine dual_line(const AffinePoint& q) { return AffineLine::non_vertical(-q.x, q.y); }

Instance dualize(const Instance& inst) {
  std::vector<AffinePoint> points;
  points.reserve(inst.n());
  for (const auto& l : inst.lines()) points.push_back(dual_point(l));
  std::vector<AffineLine> lines;
  lines.reserve(inst.m());
  for (const auto& q : inst.points()) lines.push_back(dual_line(q));
  return Instance(inst.modulus(), std::move(points), std::move(lines));
}

ProjPoint::ProjPoint(std::array<std::uint32_t, 3> coords, PrimeModulus mod) : c_(coords), mod_(mod) {
  const std::uint32_t p = mod.value();
  for (auto& v : c_) v %= p;
  auto lead = std::find_if(c_.begin(), c_.end(), [](std::uint32_t v) { return v != 0; });
  if (lead == c_.end()) throw Error(ErrorCode::degenerate_input, "zero homogeneous triple");
  const std::uint32_t scale = modp::inv(*lead, p);
  for (auto& v : c_) v = modp::mul(v, scale, p);
}

ProjPoint ProjPoint::embed(const AffinePoint& q) {
  return ProjPoint({q.x.value(), q.y.value(), 1}, q.modulus());
}

ProjPoint ProjPoint::line_coords(const AffineLine& l) {
  const PrimeModulus mod = l.modulus();
  const std::uint32_t p = mod.value();
  if (l.is_vertical()) return ProjPoint({1, 0, modp::neg(l.raw_a(), p)}, mod);
  return ProjPoint({l.raw_a(), p - 1, l.raw_b()}, mod);
}

std::optional<AffinePoint> ProjPoint::to_affine() const {
  if (at_infinity()) return std::nullopt;
  const std::uint32_t p = mod_.value();
  const std::uint32_t zi = modp::inv(c_[2], p);
  return AffinePoint(Scalar::from_raw(modp::mul(c_[0], zi, p), mod_),
                     Scalar::from_raw(modp::mul(c_[1], zi, p), mod_));
}

std::optional<AffineLine> ProjPoint::to_affine_line() const {
  const std::uint32_t p = mod_.value();
  const auto [a, b, c] = c_;
  if (a == 0 && b == 0) return std::nullopt;
  if (b != 0) {
    // a x + b y + c = 0  ->  y = (-a/b) x + (-c/b)
    const std::uint32_t bi = modp::inv(b, p);
    return AffineLine::non_vertical(Scalar::from_raw(modp::neg(modp::mul(a, bi, p), p), mod_),
                                    Scalar::from_raw(modp::neg(modp::mul(c, bi, p), p), mod_));
  }
  const std::uint32_t ai = modp::inv(a, p);
  return AffineLine::vertical(Scalar::from_raw(modp::neg(modp::mul(c, ai, p), p), mod_));
}

ProjPoint alpha_point(PrimeModulus mod) { return ProjPoint({1, 0, 0}, mod); }
ProjPoint beta_point(PrimeModulus mod) { return ProjPoint({0, 1, 0}, mod); }
ProjPoint line_at_infinity(PrimeModulus mod) { return ProjPoint({0, 0, 1}, mod); }

namespace {

using Matrix = ProjMap::Matrix;

std::uint32_t det3(const Matrix& m, std::uint32_t p) {
  auto minor = [&](int a, int b, int c, int d) {
    return modp::sub(modp::mul(m[a], m[b], p), modp::mul(m[c], m[d], p), p);
  };
  std::uint32_t t0 = modp::mul(m[0], minor(4, 8, 5, 7), p);
  std::uint32_t t1 = modp::mul(m[1], minor(3, 8, 5, 6), p);
  std::uint32_t t2 = modp::mul(m[2], minor(3, 7, 4, 6), p);
  return modp::add(modp::sub(t0, t1, p), t2, p);
}

// Adjugate-based inverse; requires det != 0.
Matrix inverse3(const Matrix& m, std::uint32_t p) {
  const std::uint32_t di = modp::inv(det3(m, p), p);
  auto cof = [&](int a, int b, int c, int d) {
    return modp::mul(modp::sub(modp::mul(m[a], m[b], p), modp::mul(m[c], m[d], p), p), di, p);
  };
  return {cof(4, 8, 5, 7), cof(2, 7, 1, 8), cof(1, 5, 2, 4),
          cof(5, 6, 3, 8), cof(0, 8, 2, 6), cof(2, 3, 0, 5),
          cof(3, 7, 4, 6), cof(1, 6, 0, 7), cof(0, 4, 1, 3)};
}

std::array<std::uint32_t, 3> mul_vec(const Matrix& m, const std::array<std::uint32_t, 3>& v,
                                     std::uint32_t p) {
  std::array<std::uint32_t, 3> out{};
  for (int r = 0; r < 3; ++r) {
    std::uint64_t acc = 0;
    for (int c = 0; c < 3; ++c) acc += std::uint64_t{m[3 * r + c]} * v[c] % p;
    out[r] = static_cast<std::uint32_t>(acc % p);
  }
  return out;
}

}  // namespace

ProjMap ProjMap::make(PrimeModulus mod, const std::array<std::int64_t, 9>& rows) {
  Matrix m{};
  for (std::size_t i = 0; i < 9; ++i) m[i] = modp::reduce(rows[i], mod.value());
  if (det3(m, mod.value()) == 0) throw Error(ErrorCode::degenerate_input, "singular projective map");
  return ProjMap(mod, m);
}

ProjMap ProjMap::identity(PrimeModulus mod) { return make(mod, {1, 0, 0, 0, 1, 0, 0, 0, 1}); }

ProjMap ProjMap::translation(PrimeModulus mod, std::int64_t dx, std::int64_t dy) {
  return make(mod, {1, 0, dx, 0, 1, dy, 0, 0, 1});
}

std::uint32_t ProjMap::det() const { return det3(m_, mod_.value()); }

ProjMap ProjMap::inverse() const { return ProjMap(mod_, inverse3(m_, mod_.value())); }

ProjMap ProjMap::operator*(const ProjMap& o) const {
  require_same(mod_, o.mod_);
  const std::uint32_t p = mod_.value();
  Matrix out{};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      std::uint64_t acc = 0;
      for (int k = 0; k < 3; ++k) acc += std::uint64_t{m_[3 * r + k]} * o.m_[3 * k + c] % p;
      out[3 * r + c] = static_cast<std::uint32_t>(acc % p);
    }
  }
  return ProjMap(mod_, out);
}

ProjPoint ProjMap::apply(const ProjPoint& q) const {
  require_same(mod_, q.modulus());
  return ProjPoint(mul_vec(m_, q.coords(), mod_.value()), mod_);
}

ProjPoint ProjMap::apply_to_line(const ProjPoint& l) const {
  require_same(mod_, l.modulus());
  const std::uint32_t p = mod_.value();
  const Matrix inv = inverse3(m_, p);
  const Matrix inv_t{inv[0], inv[3], inv[6], inv[1], inv[4], inv[7], inv[2], inv[5], inv[8]};
  return ProjPoint(mul_vec(inv_t, l.coords(), p), mod_);
}

ProjMap projective_map_from_pair(const AffinePoint& q, const AffinePoint& r) {
  const AffineLine qr = line_through(q, r);
  const PrimeModulus mod = q.modulus();
  const std::uint32_t p = mod.value();

  // Lexicographically smallest affine point off qr; a line holds p points, so scanning
  // the first p + 1 points in order always finds one.
  std::optional<AffinePoint> third;
  for (std::uint64_t idx = 0; !third; ++idx) {
    AffinePoint w(Scalar::from_raw(static_cast<std::uint32_t>(idx / p), mod),
                  Scalar::from_raw(static_cast<std::uint32_t>(idx % p), mod));
    if (!incident(w, qr)) third = w;
  }

  // Columns are the embedded q, r, w; its inverse sends them to the standard basis.
  const Matrix cols{q.x.value(), r.x.value(), third->x.value(),
                    q.y.value(), r.y.value(), third->y.value(),
                    1,           1,           1};
  const Matrix inv = inverse3(cols, p);
  std::array<std::int64_t, 9> rows{};
  std::copy(inv.begin(), inv.end(), rows.begin());
  return ProjMap::make(mod, rows);
}

Instance apply_map(const ProjMap& map, const Instance& inst, LineAtInfinityPolicy policy) {
  require_same(map.modulus(), inst.modulus());
  std::vector<AffinePoint> points;
  points.reserve(inst.m());
  for (const auto& q : inst.points()) {
    auto image = map.apply(ProjPoint::embed(q)).to_affine();
    if (!image) throw Error(ErrorCode::point_sent_to_infinity, to_string(q));
    points.push_back(*image);
  }
  const std::uint32_t p = inst.modulus().value();
  const Matrix inv = map.inverse().entries();
  const Matrix inv_t{inv[0], inv[3], inv[6], inv[1], inv[4], inv[7], inv[2], inv[5], inv[8]};
  std::vector<AffineLine> lines;
  lines.reserve(inst.n());
  for (const auto& l : inst.lines()) {
    auto image = ProjPoint(mul_vec(inv_t, ProjPoint::line_coords(l).coords(), p), inst.modulus())
                     .to_affine_line();
    if (!image) {
      if (policy == LineAtInfinityPolicy::drop) continue;
      throw Error(ErrorCode::line_sent_to_infinity, to_string(l));
    }
    lines.push_back(*image);
  }
  return Instance(inst.modulus(), std::move(points), std::move(lines));
}

}  // namespace inclab
