#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

// Vectorizable residue kernels over doubles. With p < 2^25 every product alpha*a[i] is below
// 2^50 and is exact in a double, so divisibility by p is decided exactly by rounding the
// quotient to the nearest integer and checking the remainder.
namespace inclab::detail {

constexpr bool fast_kernel_ok(std::uint32_t p) { return p < (1u << 25); }

// Number of i with alpha*a[i] + b[i] + c == 0 (mod p).
// Requires 0 <= a[i], alpha < p and |b[i] + c| < 4p.
std::size_t count_affine_zeros(std::span<const double> a, std::span<const double> b, double alpha,
                               double c, std::uint32_t p);

// Sum of count_affine_zeros over the pairs (alphas[k], cs[k]), same preconditions.
std::size_t count_affine_zeros_multi(std::span<const double> a, std::span<const double> b,
                                     std::span<const double> alphas, std::span<const double> cs,
                                     std::uint32_t p);

// out[i] = (alpha*a[i] + b[i]) mod p, under the same preconditions with c = 0.
void affine_residues(std::span<const double> a, std::span<const double> b, double alpha,
                     std::uint32_t p, std::span<std::uint32_t> out);

}  // namespace inclab::detail
