#include "inclab/energy.hpp"

#include <algorithm>
#include <cmath>

#include "inclab/error.hpp"

namespace inclab {

namespace {

std::vector<Scalar> as_set(std::span<const Scalar> v) {
  std::vector<Scalar> out(v.begin(), v.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<AffineLine> vertical_free_set(std::span<const AffineLine> L) {
  std::vector<AffineLine> out(L.begin(), L.end());
  for (const auto& l : out)
    if (l.is_vertical()) throw Error(ErrorCode::vertical_line_present, to_string(l));
  canonicalize(out);
  return out;
}

std::vector<Scalar> unique_sorted(std::vector<Scalar> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool is_zero_set(const std::vector<Scalar>& s) { return s.size() == 1 && s.front().is_zero(); }

}  // namespace

EnergyCount line_energy(std::span<const Scalar> A, std::span<const AffineLine> L) {
  const auto lines = vertical_free_set(L);
  const auto xs = as_set(A);
  EnergyCount out;
  if (xs.empty() || lines.empty()) return out;
  const std::uint32_t p = xs.front().modulus().value();
  if (!(lines.front().modulus() == xs.front().modulus()))
    throw Error(ErrorCode::modulus_mismatch, "A and L live over different fields");

  std::vector<std::uint32_t> values;
  values.reserve(xs.size() * lines.size());
  for (const auto& x : xs)
    for (const auto& l : lines)
      values.push_back(modp::add(modp::mul(x.value(), l.raw_a(), p), l.raw_b(), p));
  std::sort(values.begin(), values.end());
  for (std::size_t i = 0; i < values.size();) {
    std::size_t j = i;
    while (j < values.size() && values[j] == values[i]) ++j;
    const std::uint64_t c = j - i;
    out.multiplicities.emplace_back(values[i], c);
    out.value += c * c;
    i = j;
  }
  return out;
}

PlaneInstance3D energy_reduction(std::span<const Scalar> A, std::span<const AffineLine> L) {
  const auto lines = vertical_free_set(L);
  const auto xs = as_set(A);
  if (xs.empty() && lines.empty())
    throw Error(ErrorCode::empty_input, "energy reduction needs a modulus from A or L");
  const PrimeModulus mod = xs.empty() ? lines.front().modulus() : xs.front().modulus();
  std::vector<Point3> R;
  std::vector<Plane3> S;
  R.reserve(xs.size() * lines.size());
  S.reserve(xs.size() * lines.size());
  for (const auto& x : xs) {
    for (const auto& l : lines) {
      R.push_back(Point3{{x.value(), l.raw_a(), l.raw_b()}});
      // s X - x S' - T' + t = 0, reading (x, s, t) as the plane's parameters.
      S.push_back(Plane3::make(l.raw_a(), -std::int64_t{x.value()}, -1, l.raw_b(), mod));
    }
  }
  return PlaneInstance3D(mod, std::move(R), std::move(S));
}

BridgeCheck cs_bridge_check(std::span<const Scalar> A, std::span<const Scalar> B,
                            std::span<const AffineLine> L) {
  const auto lines = vertical_free_set(L);
  const auto xs = as_set(A), ys = as_set(B);
  BridgeCheck out;
  out.energy = line_energy(xs, lines).value;
  if (!xs.empty() && !ys.empty()) {
    const PrimeModulus mod = xs.front().modulus();
    std::vector<AffinePoint> pts;
    pts.reserve(xs.size() * ys.size());
    for (const auto& x : xs)
      for (const auto& y : ys) pts.emplace_back(x, y);
    out.incidences = count_incidences(Instance(mod, std::move(pts), lines));
  }
  out.lhs = BigInt(out.incidences) * out.incidences;
  out.rhs = BigInt(ys.size()) * out.energy;
  out.holds = out.lhs <= out.rhs;
  return out;
}

std::string_view to_string(Expression e) {
  switch (e) {
    case Expression::sum: return "A+A";
    case Expression::product: return "A*A";
    case Expression::shifted_product: return "A*(A+1)";
    case Expression::sum_of_product: return "A+B*C";
    case Expression::product_of_sum: return "A*(B+C)";
    case Expression::quadratic: return "x^2+x*y";
  }
  return "?";
}

std::vector<Scalar> arithmetic_image(Expression expr, std::span<const Scalar> A_in,
                                     std::span<const Scalar> B_in, std::span<const Scalar> C_in) {
  const auto A = as_set(A_in), B = as_set(B_in), C = as_set(C_in);
  auto need = [](const std::vector<Scalar>& s, const char* name) {
    if (s.empty()) throw Error(ErrorCode::empty_input, std::string("set ") + name + " is empty");
  };
  need(A, "A");
  std::vector<Scalar> out;
  switch (expr) {
    case Expression::sum:
      for (const auto& a : A)
        for (const auto& b : A) out.push_back(a + b);
      break;
    case Expression::product:
      for (const auto& a : A)
        for (const auto& b : A) out.push_back(a * b);
      break;
    case Expression::shifted_product: {
      const Scalar one(1, A.front().modulus());
      for (const auto& a : A)
        for (const auto& b : A) out.push_back(a * (b + one));
      break;
    }
    case Expression::sum_of_product: {
      need(B, "B");
      need(C, "C");
      std::vector<Scalar> bc;
      for (const auto& b : B)
        for (const auto& c : C) bc.push_back(b * c);
      for (const auto& a : A)
        for (const auto& v : unique_sorted(bc)) out.push_back(a + v);
      break;
    }
    case Expression::product_of_sum: {
      need(B, "B");
      need(C, "C");
      std::vector<Scalar> bpc;
      for (const auto& b : B)
        for (const auto& c : C) bpc.push_back(b + c);
      for (const auto& a : A)
        for (const auto& v : unique_sorted(bpc)) out.push_back(a * v);
      break;
    }
    case Expression::quadratic:
      need(B, "B");
      for (const auto& a : A)
        for (const auto& b : B) out.push_back(a * a + a * b);
      break;
  }
  return unique_sorted(std::move(out));
}

SumProdKind parse_sumprod_kind(std::string_view name) {
  if (name == "sum_product" || name == "5.1") return SumProdKind::sum_product;
  if (name == "shifted_product" || name == "5.2") return SumProdKind::shifted_product;
  if (name == "three_variable" || name == "5.3") return SumProdKind::three_variable;
  if (name == "expander") return SumProdKind::expander;
  throw Error(ErrorCode::parse_error, "unknown sum-product kind '" + std::string(name) + "'");
}

std::string_view to_string(SumProdKind k) {
  switch (k) {
    case SumProdKind::sum_product: return "sum_product";
    case SumProdKind::shifted_product: return "shifted_product";
    case SumProdKind::three_variable: return "three_variable";
    case SumProdKind::expander: return "expander";
  }
  return "?";
}

SumProdReport sumproduct_report(SumProdKind kind, std::span<const Scalar> A_in,
                                std::span<const Scalar> B_in, std::span<const Scalar> C_in,
                                const Rational& constant) {
  const auto A = as_set(A_in), B = as_set(B_in), C = as_set(C_in);
  if (A.empty()) throw Error(ErrorCode::empty_input, "set A is empty");
  const std::uint64_t p = A.front().modulus().value();
  SumProdReport rep{kind, A.size(), 0, 0, {}, 0, 0, 0.0, {}};
  const double a = static_cast<double>(A.size());

  auto add_image = [&](Expression e) {
    rep.images.push_back({e, arithmetic_image(e, A, B, C).size(), 0.0});
  };
  auto condition = [&](std::string name, const BigInt& lhs, const Rational& rhs) {
    rep.condition = {std::move(name), to_string(lhs), to_string(rhs), Rational(lhs) <= rhs};
  };

  switch (kind) {
    case SumProdKind::sum_product:
    case SumProdKind::shifted_product: {
      if (kind == SumProdKind::sum_product) {
        add_image(Expression::sum);
        add_image(Expression::product);
        rep.m_min = std::min(rep.images[0].size, rep.images[1].size);
        rep.m_max = std::max(rep.images[0].size, rep.images[1].size);
      } else {
        add_image(Expression::shifted_product);
      }
      rep.main_term = std::pow(a, 1.2);
      condition("|A|^8 <= c^8 p^5", pow_int(A.size(), 8), pow_rational(constant, 8) * Rational(pow_int(p, 5)));
      break;
    }
    case SumProdKind::three_variable: {
      if (B.empty() || C.empty()) throw Error(ErrorCode::empty_input, "sets B and C are required");
      // A = {0} still has a meaningful image BC; a zero B or C collapses it.
      if (is_zero_set(B) || is_zero_set(C)) throw Error(ErrorCode::degenerate_input, "B or C equals {0}");
      rep.b = B.size();
      rep.c = C.size();
      add_image(Expression::sum_of_product);
      add_image(Expression::product_of_sum);
      const BigInt abc = BigInt(A.size()) * B.size() * C.size();
      rep.main_term = std::sqrt(a * static_cast<double>(B.size()) * static_cast<double>(C.size()));
      condition("|A||B||C| <= c p^2", abc, constant * Rational(pow_int(p, 2)));
      break;
    }
    case SumProdKind::expander: {
      if (B.empty()) throw Error(ErrorCode::empty_input, "set B is required");
      if (is_zero_set(A)) throw Error(ErrorCode::degenerate_input, "A equals {0}");
      rep.b = B.size();
      add_image(Expression::quadratic);
      const double b = static_cast<double>(B.size());
      rep.main_term = std::min(std::sqrt(a) * std::pow(b, 0.75), b * b);
      condition("|A|^2|B| <= c p^2", BigInt(A.size()) * A.size() * B.size(),
                constant * Rational(pow_int(p, 2)));
      break;
    }
  }
  for (auto& im : rep.images) im.ratio = static_cast<double>(im.size) / rep.main_term;
  return rep;
}

}  // namespace inclab
