#include "gvc/dct.hpp"

namespace gvc {

namespace {

// out[k] = sum_n basis[k][n] * in[n], ascending n.
inline void dct_1d(const double *in, int stride, double *out, int out_stride) {
  for (int k = 0; k < kDctBlock; ++k) {
    double acc = 0.0;
    for (int n = 0; n < kDctBlock; ++n) {
      acc += kDctBasis[k][n] * in[n * stride];
    }
    out[k * out_stride] = acc;
  }
}

// out[n] = sum_k basis[k][n] * in[k], ascending k.
inline void idct_1d(const double *in, int stride, double *out,
                    int out_stride) {
  for (int n = 0; n < kDctBlock; ++n) {
    double acc = 0.0;
    for (int k = 0; k < kDctBlock; ++k) {
      acc += kDctBasis[k][n] * in[k * stride];
    }
    out[n * out_stride] = acc;
  }
}

}  // namespace

void forward_dct(const DctBlock &pixels, DctBlock *coefs) {
  DctBlock rows;
  for (int y = 0; y < kDctBlock; ++y) {
    dct_1d(&pixels[y * kDctBlock], 1, &rows[y * kDctBlock], 1);
  }
  for (int x = 0; x < kDctBlock; ++x) {
    dct_1d(&rows[x], kDctBlock, &(*coefs)[x], kDctBlock);
  }
}

void inverse_dct(const DctBlock &coefs, DctBlock *pixels) {
  DctBlock cols;
  for (int x = 0; x < kDctBlock; ++x) {
    idct_1d(&coefs[x], kDctBlock, &cols[x], kDctBlock);
  }
  for (int y = 0; y < kDctBlock; ++y) {
    idct_1d(&cols[y * kDctBlock], 1, &(*pixels)[y * kDctBlock], 1);
  }
}

}  // namespace gvc
