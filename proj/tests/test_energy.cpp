#include "doctest.h"

#include <random>

#include "inclab/constructions.hpp"
#include "inclab/energy.hpp"
#include "inclab/incidence.hpp"
#include "oracles.hpp"

using namespace inclab;

namespace {

PrimeModulus P(std::int64_t p) { return PrimeModulus::make(p); }
AffineLine sl(std::int64_t s, std::int64_t t, PrimeModulus m) {
  return AffineLine::non_vertical(Scalar(s, m), Scalar(t, m));
}
std::vector<Scalar> set(std::initializer_list<std::int64_t> v, PrimeModulus m) {
  std::vector<Scalar> out;
  for (auto x : v) out.emplace_back(x, m);
  return out;
}
std::vector<Scalar> lift(const std::vector<oracle::i64>& v, PrimeModulus m) {
  std::vector<Scalar> out;
  for (auto x : v) out.emplace_back(x, m);
  return out;
}
std::vector<oracle::i64> lower(const std::vector<Scalar>& v) {
  std::vector<oracle::i64> out;
  for (const auto& x : v) out.push_back(x.value());
  return out;
}
std::vector<std::pair<oracle::i64, oracle::i64>> raw_lines(const std::vector<AffineLine>& L) {
  std::vector<std::pair<oracle::i64, oracle::i64>> out;
  for (const auto& l : L) out.push_back({l.raw_a(), l.raw_b()});
  return out;
}
std::vector<AffineLine> random_lines(std::mt19937_64& rng, PrimeModulus mod, std::size_t n) {
  std::set<AffineLine> s;
  while (s.size() < n) s.insert(sl(rng() % mod.value(), rng() % mod.value(), mod));
  return {s.begin(), s.end()};
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::parse_error;
}

}  // namespace

TEST_SUITE("energy") {
  TEST_CASE("line energy examples") {
    const auto m5 = P(5);
    std::vector<AffineLine> L{sl(0, 0, m5), sl(1, 0, m5)};
    auto e = line_energy(set({0, 1}, m5), L);
    CHECK(e.value == 10);
    CHECK(e.multiplicities == std::vector<std::pair<std::uint32_t, std::uint64_t>>{{0, 3}, {1, 1}});
    CHECK(line_energy(set({0}, m5), std::vector<AffineLine>{sl(0, 0, m5)}).value == 1);
    CHECK(line_energy(set({0, 1, 2}, m5), std::vector<AffineLine>{sl(1, 0, m5)}).value == 3);
    std::vector<AffineLine> vert{AffineLine::vertical(Scalar(1, m5))};
    CHECK(code_of([&] { line_energy(set({0}, m5), vert); }) == ErrorCode::vertical_line_present);
    std::vector<AffineLine> other{sl(0, 0, P(7))};
    CHECK(code_of([&] { line_energy(set({0}, m5), other); }) == ErrorCode::modulus_mismatch);
    // Repeated elements are treated as a set.
    CHECK(line_energy(set({1, 1, 6}, m5), L).value == line_energy(set({1}, m5), L).value);
  }

  TEST_CASE("energy, reduction and exhaustive enumeration agree") {
    const auto m5 = P(5);
    std::vector<AffineLine> L{sl(0, 0, m5), sl(1, 0, m5)};
    auto red = energy_reduction(set({0, 1}, m5), L);
    CHECK(red.r() == 4);
    CHECK(red.s() == 4);
    CHECK(count_point_plane(red) == 10);
    auto tiny = energy_reduction(set({0}, m5), std::vector<AffineLine>{sl(0, 0, m5)});
    CHECK(tiny.r() == 1);
    CHECK(count_point_plane(tiny) == 1);

    std::mt19937_64 rng(71);
    for (int i = 0; i < 80; ++i) {
      const auto mod = P(i % 3 == 0 ? 5 : (i % 3 == 1 ? 13 : 101));
      const std::size_t a = 1 + rng() % 10;
      const std::size_t n = 1 + rng() % std::max<std::size_t>(1, 200 / a);
      auto A = oracle::random_subset(rng, mod.value(), a);
      auto L = random_lines(rng, mod, std::min<std::size_t>(n, 20));
      const auto want = oracle::energy(A, raw_lines(L), mod.value());
      auto As = lift(A, mod);
      REQUIRE(line_energy(As, L).value == want);
      auto R3 = energy_reduction(As, L);
      REQUIRE(R3.r() == A.size() * L.size());
      REQUIRE(count_point_plane(R3) == want);
    }
  }

  TEST_CASE("collinearity in the reduction") {
    std::mt19937_64 rng(72);
    for (int i = 0; i < 50; ++i) {
      const auto mod = P(i % 2 ? 7 : 11);
      auto A = lift(oracle::random_subset(rng, mod.value(), 1 + rng() % 4), mod);
      auto L = random_lines(rng, mod, 1 + rng() % 8);
      auto R3 = energy_reduction(A, L);
      // Largest family of concurrent or parallel lines.
      std::size_t family = 1;
      for (std::size_t u = 0; u < L.size(); ++u) {
        std::size_t parallel = 0;
        for (const auto& l : L) parallel += l.slope() == L[u].slope();
        family = std::max(family, parallel);
        for (std::size_t v = u + 1; v < L.size(); ++v) {
          if (L[u].slope() == L[v].slope()) continue;
          const Scalar x = (L[v].intercept() - L[u].intercept()) / (L[u].slope() - L[v].slope());
          const Scalar y = L[u].slope() * x + L[u].intercept();
          std::size_t through = 0;
          for (const auto& l : L) through += incident(AffinePoint(x, y), l);
          family = std::max(family, through);
        }
      }
      REQUIRE(max_collinear_3d(R3.points(), mod) <= std::max(A.size(), family));
    }
  }

  TEST_CASE("Cauchy-Schwarz bridge") {
    const auto m5 = P(5);
    std::vector<AffineLine> L{sl(0, 0, m5), sl(1, 0, m5)};
    auto b = cs_bridge_check(set({0, 1}, m5), set({0, 1}, m5), L);
    CHECK(b.incidences == 4);
    CHECK(b.energy == 10);
    CHECK(b.lhs == 16);
    CHECK(b.rhs == 20);
    CHECK(b.holds);
    std::vector<Scalar> none;
    auto e = cs_bridge_check(set({0, 1}, m5), none, L);
    CHECK(e.incidences == 0);
    CHECK(e.holds);

    std::mt19937_64 rng(73);
    for (int i = 0; i < 100; ++i) {
      const auto mod = P(i % 2 ? 11 : 31);
      auto A = oracle::random_subset(rng, mod.value(), 1 + rng() % 8);
      auto B = oracle::random_subset(rng, mod.value(), 1 + rng() % 8);
      auto L = random_lines(rng, mod, 1 + rng() % 20);
      std::vector<oracle::Pt> grid;
      for (auto x : A)
        for (auto y : B) grid.push_back({x, y});
      std::vector<oracle::Ln> lines;
      for (const auto& l : L) lines.push_back({-static_cast<oracle::i64>(l.raw_a()), 1, l.raw_b()});
      const auto I = oracle::incidences(grid, lines, mod.value());
      const auto E = oracle::energy(A, raw_lines(L), mod.value());
      auto r = cs_bridge_check(lift(A, mod), lift(B, mod), L);
      REQUIRE(r.incidences == I);
      REQUIRE(r.energy == E);
      REQUIRE(r.holds);
      REQUIRE(I * I <= B.size() * E);
    }
  }

  TEST_CASE("arithmetic images") {
    const auto m7 = P(7);
    auto A = set({1, 2}, m7);
    CHECK(lower(arithmetic_image(Expression::sum, A)) == std::vector<oracle::i64>{2, 3, 4});
    CHECK(lower(arithmetic_image(Expression::product, A)) == std::vector<oracle::i64>{1, 2, 4});
    CHECK(lower(arithmetic_image(Expression::shifted_product, A)) == std::vector<oracle::i64>{2, 3, 4, 6});
    CHECK(lower(arithmetic_image(Expression::quadratic, A, set({0, 1}, m7))) == std::vector<oracle::i64>{1, 2, 4, 6});
    std::vector<Scalar> none;
    CHECK(code_of([&] { arithmetic_image(Expression::sum, none); }) == ErrorCode::empty_input);
    CHECK(code_of([&] { arithmetic_image(Expression::sum_of_product, A, A, none); }) == ErrorCode::empty_input);

    std::mt19937_64 rng(74);
    for (int i = 0; i < 60; ++i) {
      const oracle::i64 p = i % 2 ? 31 : 101;
      const auto mod = P(p);
      auto a = oracle::random_subset(rng, p, 1 + rng() % 40);
      auto b = oracle::random_subset(rng, p, 1 + rng() % 20);
      auto c = oracle::random_subset(rng, p, 1 + rng() % 20);
      auto As = lift(a, mod), Bs = lift(b, mod), Cs = lift(c, mod);
      REQUIRE(lower(arithmetic_image(Expression::sum, As)) == oracle::image2(a, a, p, [](auto x, auto y) { return x + y; }));
      REQUIRE(lower(arithmetic_image(Expression::product, As)) == oracle::image2(a, a, p, [](auto x, auto y) { return x * y; }));
      REQUIRE(lower(arithmetic_image(Expression::shifted_product, As)) ==
              oracle::image2(a, a, p, [](auto x, auto y) { return x * (y + 1); }));
      REQUIRE(lower(arithmetic_image(Expression::quadratic, As, Bs)) ==
              oracle::image2(a, b, p, [](auto x, auto y) { return x * x + x * y; }));
      REQUIRE(lower(arithmetic_image(Expression::sum_of_product, As, Bs, Cs)) ==
              oracle::image3(a, b, c, p, [](auto x, auto y, auto z) { return x + y * z; }));
      REQUIRE(lower(arithmetic_image(Expression::product_of_sum, As, Bs, Cs)) ==
              oracle::image3(a, b, c, p, [](auto x, auto y, auto z) { return x * (y + z); }));
    }
  }

  TEST_CASE("progressions") {
    // |A+A| = 2k-1 for an arithmetic progression; |A.A| = 2k-1 for a geometric one.
    const auto mod = P(1009);
    for (int k = 1; k <= 30; ++k) {
      std::vector<Scalar> ap, gp;
      Scalar g(1, mod);
      for (int i = 0; i < k; ++i) {
        ap.emplace_back(3 + 5 * i, mod);
        gp.push_back(g);
        g = g * Scalar(11, mod);  // 11 has order above 60 mod 1009
      }
      REQUIRE(arithmetic_image(Expression::sum, ap).size() == static_cast<std::size_t>(2 * k - 1));
      REQUIRE(arithmetic_image(Expression::product, gp).size() == static_cast<std::size_t>(2 * k - 1));
    }
  }

  TEST_CASE("sum-product reports") {
    const auto m31 = P(31);
    auto rep = sumproduct_report(SumProdKind::sum_product, set({1, 2, 4}, m31));
    CHECK(rep.m_max == 6);
    CHECK(rep.m_min == 5);
    CHECK(rep.images.size() == 2);
    CHECK(rep.main_term == doctest::Approx(std::pow(3.0, 1.2)));
    CHECK(rep.condition.pass);  // 3^8 <= 31^5

    const auto m7 = P(7);
    auto three = sumproduct_report(SumProdKind::three_variable, set({0}, m7), set({1}, m7), set({1, 2}, m7));
    CHECK(three.images[0].expr == Expression::sum_of_product);
    CHECK(three.images[0].size == 2);
    CHECK(code_of([&] { sumproduct_report(SumProdKind::three_variable, set({1}, m7), set({0}, m7), set({1, 2}, m7)); }) ==
          ErrorCode::degenerate_input);
    CHECK(code_of([&] { sumproduct_report(SumProdKind::expander, set({0}, m7), set({1, 2}, m7)); }) ==
          ErrorCode::degenerate_input);
    auto ex = sumproduct_report(SumProdKind::expander, set({1, 2}, m7), set({0, 1}, m7));
    CHECK(ex.images[0].size == 4);
    CHECK(ex.main_term == doctest::Approx(std::min(std::sqrt(2.0) * std::pow(2.0, 0.75), 4.0)));

    // Above the characteristic threshold the condition fails: |A| = 31 gives 31^8 > 31^5.
    std::vector<Scalar> all;
    for (int v = 0; v < 31; ++v) all.emplace_back(v, m31);
    CHECK_FALSE(sumproduct_report(SumProdKind::sum_product, all).condition.pass);
    CHECK(parse_sumprod_kind("shifted_product") == SumProdKind::shifted_product);
    CHECK_THROWS_AS(parse_sumprod_kind("bogus"), Error);
  }
}
