#pragma once

// Internal: power-of-two FFT and a Bluestein chirp-z evaluator. Used only by
// the identity-warp fast path; the direct quadrature remains the reference.

#include <cstddef>
#include <vector>

#include "warpft/numerics.hpp"

namespace warpft::detail {

// In-place iterative radix-2 FFT; a.size() must be a power of two.
// inverse == true applies the conjugate transform including the 1/N factor.
void fft_pow2(std::vector<cplx>& a, bool inverse);

// r[m] = sum_n a[n] * exp(i * theta * n * m), m = 0 .. m_count-1,
// evaluated with Bluestein's factorization through a padded cyclic
// convolution. theta is an arbitrary real angle step.
std::vector<cplx> czt_exp_sum(const std::vector<cplx>& a, std::size_t m_count,
                              double theta);

}  // namespace warpft::detail
