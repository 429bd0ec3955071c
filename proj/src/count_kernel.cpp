#include "inclab/count_kernel.hpp"

namespace inclab::detail {

namespace {
// Adding and subtracting 1.5 * 2^52 rounds a double below 2^51 to the nearest integer.
constexpr double kRoundMagic = 6755399441055744.0;
}  // namespace

std::size_t count_affine_zeros(std::span<const double> a, std::span<const double> b, double alpha,
                               double c, std::uint32_t p) {
  const double pd = static_cast<double>(p);
  const double inv_p = 1.0 / pd;
  const double* av = a.data();
  const double* bv = b.data();
  const std::size_t len = a.size();
  std::size_t count = 0;
  for (std::size_t i = 0; i < len; ++i) {
    const double v = alpha * av[i] + (bv[i] + c);
    const double q = (v * inv_p + kRoundMagic) - kRoundMagic;
    count += (v - q * pd) == 0.0;
  }
  return count;
}

namespace {

// Eight probes per pass: each load of a[i], b[i] is reused eight times.
std::size_t count_block8(const double* av, const double* bv, std::size_t len, const double* alphas,
                         const double* cs, double pd, double inv_p) {
  constexpr int K = 8;
  double A[K], C[K];
  for (int k = 0; k < K; ++k) {
    A[k] = alphas[k];
    C[k] = cs[k];
  }
  std::int64_t count = 0;
  for (std::size_t i = 0; i < len; ++i) {
    const double x = av[i], y = bv[i];
    for (int k = 0; k < K; ++k) {
      const double v = A[k] * x + (y + C[k]);
      const double q = (v * inv_p + kRoundMagic) - kRoundMagic;
      count += (v - q * pd) == 0.0;
    }
  }
  return static_cast<std::size_t>(count);
}

}  // namespace

std::size_t count_affine_zeros_multi(std::span<const double> a, std::span<const double> b,
                                     std::span<const double> alphas, std::span<const double> cs,
                                     std::uint32_t p) {
  const double pd = static_cast<double>(p);
  const double inv_p = 1.0 / pd;
  std::size_t total = 0;
  std::size_t k = 0;
  for (; k + 8 <= alphas.size(); k += 8)
    total += count_block8(a.data(), b.data(), a.size(), alphas.data() + k, cs.data() + k, pd, inv_p);
  for (; k < alphas.size(); ++k) total += count_affine_zeros(a, b, alphas[k], cs[k], p);
  return total;
}

void affine_residues(std::span<const double> a, std::span<const double> b, double alpha,
                     std::uint32_t p, std::span<std::uint32_t> out) {
  const double pd = static_cast<double>(p);
  const double inv_p = 1.0 / pd;
  const std::size_t len = a.size();
  for (std::size_t i = 0; i < len; ++i) {
    const double v = alpha * a[i] + b[i];
    const double q = (v * inv_p + kRoundMagic) - kRoundMagic;
    double r = v - q * pd;
    r = r < 0.0 ? r + pd : r;
    r = r >= pd ? r - pd : r;
    out[i] = static_cast<std::uint32_t>(r);
  }
}

}  // namespace inclab::detail
