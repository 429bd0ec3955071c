#include "doctest.h"

#include <random>

#include "inclab/constructions.hpp"
#include "inclab/incidence.hpp"
#include "inclab/plane.hpp"
#include "oracles.hpp"

using namespace inclab;

namespace {

PrimeModulus P(std::int64_t p) { return PrimeModulus::make(p); }
AffinePoint pt(std::int64_t x, std::int64_t y, PrimeModulus m) { return AffinePoint::of(x, y, m); }
AffineLine sl(std::int64_t s, std::int64_t t, PrimeModulus m) {
  return AffineLine::non_vertical(Scalar(s, m), Scalar(t, m));
}
AffineLine vl(std::int64_t x, PrimeModulus m) { return AffineLine::vertical(Scalar(x, m)); }

ProjMap random_map(std::mt19937_64& rng, PrimeModulus mod) {
  std::uniform_int_distribution<std::int64_t> d(0, mod.value() - 1);
  for (;;) {
    std::array<std::int64_t, 9> e{};
    for (auto& v : e) v = d(rng);
    try {
      return ProjMap::make(mod, e);
    } catch (const Error&) {
    }
  }
}

}  // namespace

TEST_SUITE("plane") {
  TEST_CASE("incidence") {
    CHECK(incident(pt(1, 3, P(5)), sl(2, 1, P(5))));
    CHECK_FALSE(incident(pt(0, 0, P(7)), sl(1, 1, P(7))));
    CHECK(incident(pt(2, 5, P(7)), vl(2, P(7))));
  }

  TEST_CASE("line through two points") {
    CHECK(line_through(pt(0, 0, P(5)), pt(1, 2, P(5))) == sl(2, 0, P(5)));
    CHECK(line_through(pt(3, 1, P(7)), pt(3, 4, P(7))) == vl(3, P(7)));
    try {
      line_through(pt(1, 1, P(7)), pt(1, 1, P(7)));
      FAIL("expected CoincidentPoints");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::coincident_points);
    }
    const auto m = P(13);
    for (int a = 0; a < 169; a += 7)
      for (int b = 0; b < 169; b += 5) {
        if (a == b) continue;
        auto q = pt(a / 13, a % 13, m), r = pt(b / 13, b % 13, m);
        auto l = line_through(q, r);
        REQUIRE(incident(q, l));
        REQUIRE(incident(r, l));
      }
  }

  TEST_CASE("canonical lines and instance deduplication") {
    const auto m = P(7);
    Instance inst(m, {pt(1, 1, m), pt(8, 1, m), pt(0, 0, m)}, {sl(1, 0, m), sl(8, 7, m), vl(3, m)});
    CHECK(inst.m() == 2);
    CHECK(inst.n() == 2);
    CHECK(inst.duplicates_removed() == 2);
    CHECK(inst.has_vertical_lines());
    CHECK(inst.lines().back().is_vertical());  // vertical lines order last
    CHECK(to_string(sl(2, 1, m)) == "y=2x+1");
    CHECK(to_string(vl(3, m)) == "x=3");
  }

  TEST_CASE("duality") {
    const auto m = P(7);
    Instance one(m, {pt(1, 3, m)}, {sl(2, 1, m)});
    Instance d = dualize(one);
    CHECK(d.points() == std::vector<AffinePoint>{pt(2, 1, m)});
    CHECK(d.lines() == std::vector<AffineLine>{sl(6, 3, m)});
    CHECK(count_incidences(d) == 1);
    CHECK(dualize(Instance(m)) == Instance(m));
    try {
      dualize(Instance(m, {}, {vl(1, m)}));
      FAIL("expected VerticalLinePresent");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::vertical_line_present);
    }

    std::mt19937_64 rng(21);
    for (int i = 0; i < 50; ++i) {
      const auto mod = P(i % 2 ? 31 : 101);
      Instance inst = oracle::random_instance(rng, mod, 40, 40, false);
      Instance dd = dualize(inst);
      REQUIRE(oracle::incidences(dd) == oracle::incidences(inst));
      // With lines y = cx + d sent to (c, d), the double dual is the reflection x -> -x.
      REQUIRE(dualize(dd) == apply_map(ProjMap::make(mod, {-1, 0, 0, 0, 1, 0, 0, 0, 1}), inst));
      REQUIRE(dualize(dualize(dualize(dd))) == inst);
    }
  }

  TEST_CASE("map from a pair of points") {
    const auto m = P(5);
    ProjMap M = projective_map_from_pair(pt(0, 0, m), pt(1, 0, m));
    CHECK(M.apply(ProjPoint::embed(pt(0, 0, m))) == alpha_point(m));
    CHECK(M.apply(ProjPoint::embed(pt(1, 0, m))) == beta_point(m));
    CHECK(M.det() != 0);

    std::mt19937_64 rng(8);
    for (int i = 0; i < 50; ++i) {
      const auto mod = P(i % 2 ? 13 : 101);
      std::uniform_int_distribution<std::int64_t> d(0, mod.value() - 1);
      auto q = pt(d(rng), d(rng), mod), r = pt(d(rng), d(rng), mod);
      if (q == r) continue;
      ProjMap T = projective_map_from_pair(q, r);
      REQUIRE(T.det() != 0);
      REQUIRE(T.apply(ProjPoint::embed(q)) == alpha_point(mod));
      REQUIRE(T.apply(ProjPoint::embed(r)) == beta_point(mod));
      // The preimage of the line at infinity is the line qr.
      auto back = T.inverse().apply_to_line(line_at_infinity(mod)).to_affine_line();
      REQUIRE(back.has_value());
      REQUIRE(*back == line_through(q, r));
    }
  }

  TEST_CASE("pencils through the chosen pair become horizontal and vertical") {
    const auto mod = P(11);
    auto q = pt(2, 3, mod), r = pt(7, 1, mod);
    ProjMap T = projective_map_from_pair(q, r);
    std::vector<AffineLine> through_q, through_r;
    for (int s = 0; s < 11; ++s) {
      through_q.push_back(AffineLine::non_vertical(Scalar(s, mod), q.y - Scalar(s, mod) * q.x));
      through_r.push_back(AffineLine::non_vertical(Scalar(s, mod), r.y - Scalar(s, mod) * r.x));
    }
    through_q.push_back(AffineLine::vertical(q.x));
    through_r.push_back(AffineLine::vertical(r.x));
    const AffineLine qr = line_through(q, r);
    for (const auto& l : through_q) {
      if (l == qr) continue;
      auto img = T.apply_to_line(ProjPoint::line_coords(l)).to_affine_line();
      REQUIRE(img.has_value());
      REQUIRE_FALSE(img->is_vertical());
      REQUIRE(img->slope().is_zero());
    }
    for (const auto& l : through_r) {
      if (l == qr) continue;
      auto img = T.apply_to_line(ProjPoint::line_coords(l)).to_affine_line();
      REQUIRE(img.has_value());
      REQUIRE(img->is_vertical());
    }
  }

  TEST_CASE("applying maps") {
    const auto m = P(5);
    Instance fp = full_plane(m);
    CHECK(apply_map(ProjMap::identity(m), fp) == fp);
    Instance moved = apply_map(ProjMap::translation(m, 2, 3), fp);
    CHECK(count_incidences(moved) == 150);
    CHECK(moved == fp);  // translations permute the plane

    // Points on the preimage of infinity are refused.
    ProjMap T = projective_map_from_pair(pt(0, 0, m), pt(1, 0, m));
    try {
      apply_map(T, Instance(m, {pt(3, 0, m)}, {}));
      FAIL("expected PointSentToInfinity");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::point_sent_to_infinity);
    }
    try {
      apply_map(T, Instance(m, {}, {sl(0, 0, m)}));
      FAIL("expected LineSentToInfinity");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::line_sent_to_infinity);
    }
    CHECK(apply_map(T, Instance(m, {}, {sl(0, 0, m)}), LineAtInfinityPolicy::drop).n() == 0);

    std::mt19937_64 rng(99);
    for (int i = 0; i < 60; ++i) {
      const auto mod = P(i % 3 == 0 ? 7 : 53);
      ProjMap M = random_map(rng, mod);
      Instance inst = oracle::random_instance(rng, mod, 60, 60);
      // Keep only points and lines that stay affine.
      auto lam = M.inverse().apply_to_line(line_at_infinity(mod)).to_affine_line();
      std::vector<AffinePoint> pts;
      for (const auto& q : inst.points())
        if (!lam || !incident(q, *lam)) pts.push_back(q);
      std::vector<AffineLine> lines;
      for (const auto& l : inst.lines())
        if (!lam || !(l == *lam)) lines.push_back(l);
      Instance kept(mod, pts, lines);
      Instance img = apply_map(M, kept);
      REQUIRE(img.m() == kept.m());
      REQUIRE(img.n() == kept.n());
      REQUIRE(oracle::incidences(img) == oracle::incidences(kept));
    }
  }
}
