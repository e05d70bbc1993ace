#ifndef GVC_DCT_HPP_
#define GVC_DCT_HPP_

#include <array>

namespace gvc {

// Orthonormal 8x8 DCT-II in double precision. The basis table is baked
// in as hex-float literals and the summation order is fixed, so the
// transform is bit-identical on every IEEE-754 platform (the build
// disables FP contraction).

inline constexpr int kDctBlock = 8;

using DctBlock = std::array<double, kDctBlock * kDctBlock>;

// basis[k][n] = s_k * cos((2n+1) k pi / 16), s_0 = sqrt(1/8), else 1/2.
inline constexpr double kDctBasis[kDctBlock][kDctBlock] = {
    {0x1.6a09e667f3bcdp-2, 0x1.6a09e667f3bcdp-2, 0x1.6a09e667f3bcdp-2,
     0x1.6a09e667f3bcdp-2, 0x1.6a09e667f3bcdp-2, 0x1.6a09e667f3bcdp-2,
     0x1.6a09e667f3bcdp-2, 0x1.6a09e667f3bcdp-2},
    {0x1.f6297cff75cb0p-2, 0x1.a9b66290ea1a3p-2, 0x1.1c73b39ae68c9p-2,
     0x1.8f8b83c69a60dp-4, -0x1.8f8b83c69a608p-4, -0x1.1c73b39ae68c6p-2,
     -0x1.a9b66290ea1a4p-2, -0x1.f6297cff75cb0p-2},
    {0x1.d906bcf328d46p-2, 0x1.87de2a6aea964p-3, -0x1.87de2a6aea962p-3,
     -0x1.d906bcf328d46p-2, -0x1.d906bcf328d47p-2, -0x1.87de2a6aea96dp-3,
     0x1.87de2a6aea967p-3, 0x1.d906bcf328d44p-2},
    {0x1.a9b66290ea1a3p-2, -0x1.8f8b83c69a608p-4, -0x1.f6297cff75cb0p-2,
     -0x1.1c73b39ae68c8p-2, 0x1.1c73b39ae68c5p-2, 0x1.f6297cff75cb0p-2,
     0x1.8f8b83c69a61dp-4, -0x1.a9b66290ea1a2p-2},
    {0x1.6a09e667f3bcdp-2, -0x1.6a09e667f3bccp-2, -0x1.6a09e667f3bcep-2,
     0x1.6a09e667f3bcbp-2, 0x1.6a09e667f3bcep-2, -0x1.6a09e667f3bc5p-2,
     -0x1.6a09e667f3bc9p-2, 0x1.6a09e667f3bc4p-2},
    {0x1.1c73b39ae68c9p-2, -0x1.f6297cff75cb0p-2, 0x1.8f8b83c69a60cp-4,
     0x1.a9b66290ea1a5p-2, -0x1.a9b66290ea1a2p-2, -0x1.8f8b83c69a602p-4,
     0x1.f6297cff75cb2p-2, -0x1.1c73b39ae68c2p-2},
    {0x1.87de2a6aea964p-3, -0x1.d906bcf328d47p-2, 0x1.d906bcf328d44p-2,
     -0x1.87de2a6aea965p-3, -0x1.87de2a6aea971p-3, 0x1.d906bcf328d46p-2,
     -0x1.d906bcf328d43p-2, 0x1.87de2a6aea95fp-3},
    {0x1.8f8b83c69a60dp-4, -0x1.1c73b39ae68c8p-2, 0x1.a9b66290ea1a5p-2,
     -0x1.f6297cff75cb2p-2, 0x1.f6297cff75cb0p-2, -0x1.a9b66290ea1a1p-2,
     0x1.1c73b39ae68c2p-2, -0x1.8f8b83c69a616p-4},
};

// Rows first, then columns.
void forward_dct(const DctBlock &pixels, DctBlock *coefs);
// Columns first, then rows; exact transpose of the forward pass.
void inverse_dct(const DctBlock &coefs, DctBlock *pixels);

}  // namespace gvc

#endif  // GVC_DCT_HPP_
