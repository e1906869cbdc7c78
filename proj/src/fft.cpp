#include "fft.hpp"

#include <cmath>
#include <utility>

#include "warpft/errors.hpp"

namespace warpft::detail {

namespace {

constexpr long double kTwoPiL = 6.283185307179586476925286766559L;

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// exp(i * theta * k^2 / 2) with the quadratic phase reduced in extended
// precision; k^2 stays exactly representable for every grid size in range.
cplx quad_phasor(double theta, long long k) {
  const long double ph =
      std::fmod(0.5L * static_cast<long double>(theta) *
                    static_cast<long double>(k) * static_cast<long double>(k),
                kTwoPiL);
  return unit_phasor(ph);
}

}  // namespace

void fft_pow2(std::vector<cplx>& a, bool inverse) {
  const std::size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw ValidationError("fft: length must be a power of two");
  // bit-reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const long double ang = (inverse ? -kTwoPiL : kTwoPiL) / static_cast<long double>(len);
    const cplx wlen = unit_phasor(ang);
    for (std::size_t i = 0; i < n; i += len) {
      cplx w{1.0, 0.0};
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cplx u = a[i + k];
        const cplx v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  if (inverse) {
    const double inv = 1.0 / static_cast<double>(n);
    for (auto& z : a) z *= inv;
  }
}

std::vector<cplx> czt_exp_sum(const std::vector<cplx>& a, std::size_t m_count,
                              double theta) {
  const std::size_t n = a.size();
  if (n == 0 || m_count == 0) throw ValidationError("czt: empty input");
  // nm = (n^2 + m^2 - (n-m)^2) / 2 turns the sum into a convolution.
  const std::size_t conv_len = next_pow2(n + m_count);
  std::vector<cplx> fa(conv_len, cplx{0.0, 0.0});
  std::vector<cplx> fb(conv_len, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < n; ++i)
    fa[i] = a[i] * quad_phasor(theta, static_cast<long long>(i));
  for (std::size_t j = 0; j < m_count; ++j)
    fb[j] = quad_phasor(-theta, static_cast<long long>(j));
  for (std::size_t i = 1; i < n; ++i)
    fb[conv_len - i] = quad_phasor(-theta, static_cast<long long>(i));
  fft_pow2(fa, false);
  fft_pow2(fb, false);
  for (std::size_t i = 0; i < conv_len; ++i) fa[i] *= fb[i];
  fft_pow2(fa, true);
  std::vector<cplx> out(m_count);
  for (std::size_t m = 0; m < m_count; ++m)
    out[m] = fa[m] * quad_phasor(theta, static_cast<long long>(m));
  return out;
}

}  // namespace warpft::detail
