#include "gvc/denoiser.hpp"

#include <cmath>

#include "gvc/error.hpp"
#include "gvc/rng.hpp"

namespace gvc {

namespace {

inline double silu(double x) { return x / (1.0 + std::exp(-x)); }

inline double silu_grad(double x) {
  const double s = 1.0 / (1.0 + std::exp(-x));
  return s * (1.0 + x * (1.0 - s));
}

// 3x3 convolution, stride 1, zero padding. Weight layout:
// w[((oc * in_c + ic) * 3 + dy) * 3 + dx].
void conv3x3_forward(const Tensor &in, const double *w, const double *b,
                     int out_c, Tensor *out) {
  *out = Tensor(out_c, in.h, in.w);
  for (int oc = 0; oc < out_c; ++oc) {
    for (int y = 0; y < in.h; ++y) {
      for (int x = 0; x < in.w; ++x) {
        double acc = b[oc];
        for (int ic = 0; ic < in.c; ++ic) {
          const double *wk = w + ((oc * in.c + ic) * 9);
          for (int dy = -1; dy <= 1; ++dy) {
            const int sy = y + dy;
            if (sy < 0 || sy >= in.h) continue;
            for (int dx = -1; dx <= 1; ++dx) {
              const int sx = x + dx;
              if (sx < 0 || sx >= in.w) continue;
              acc += wk[(dy + 1) * 3 + (dx + 1)] * in.at(ic, sy, sx);
            }
          }
        }
        out->at(oc, y, x) = acc;
      }
    }
  }
}

// d_in may be null when the input has no parameters upstream.
void conv3x3_backward(const Tensor &in, const double *w, const Tensor &d_out,
                      Tensor *d_in, double *d_w, double *d_b) {
  const int out_c = d_out.c;
  if (d_in != nullptr) {
    *d_in = Tensor(in.c, in.h, in.w);
  }
  for (int oc = 0; oc < out_c; ++oc) {
    for (int y = 0; y < in.h; ++y) {
      for (int x = 0; x < in.w; ++x) {
        const double g = d_out.at(oc, y, x);
        d_b[oc] += g;
        for (int ic = 0; ic < in.c; ++ic) {
          const double *wk = w + ((oc * in.c + ic) * 9);
          double *dwk = d_w + ((oc * in.c + ic) * 9);
          for (int dy = -1; dy <= 1; ++dy) {
            const int sy = y + dy;
            if (sy < 0 || sy >= in.h) continue;
            for (int dx = -1; dx <= 1; ++dx) {
              const int sx = x + dx;
              if (sx < 0 || sx >= in.w) continue;
              dwk[(dy + 1) * 3 + (dx + 1)] += g * in.at(ic, sy, sx);
              if (d_in != nullptr) {
                d_in->at(ic, sy, sx) += g * wk[(dy + 1) * 3 + (dx + 1)];
              }
            }
          }
        }
      }
    }
  }
}

Tensor silu_tensor(const Tensor &t) {
  Tensor out = t;
  for (double &v : out.v) v = silu(v);
  return out;
}

Tensor silu_backward(const Tensor &pre, const Tensor &d_out) {
  Tensor d = d_out;
  for (std::size_t i = 0; i < d.v.size(); ++i) {
    d.v[i] *= silu_grad(pre.v[i]);
  }
  return d;
}

Tensor avgpool2(const Tensor &in) {
  Tensor out(in.c, in.h / 2, in.w / 2);
  for (int c = 0; c < in.c; ++c) {
    for (int y = 0; y < out.h; ++y) {
      for (int x = 0; x < out.w; ++x) {
        out.at(c, y, x) = 0.25 * (in.at(c, 2 * y, 2 * x) +
                                  in.at(c, 2 * y, 2 * x + 1) +
                                  in.at(c, 2 * y + 1, 2 * x) +
                                  in.at(c, 2 * y + 1, 2 * x + 1));
      }
    }
  }
  return out;
}

Tensor avgpool2_backward(const Tensor &d_out, int h, int w) {
  Tensor d(d_out.c, h, w);
  for (int c = 0; c < d_out.c; ++c) {
    for (int y = 0; y < d_out.h; ++y) {
      for (int x = 0; x < d_out.w; ++x) {
        const double g = 0.25 * d_out.at(c, y, x);
        d.at(c, 2 * y, 2 * x) = g;
        d.at(c, 2 * y, 2 * x + 1) = g;
        d.at(c, 2 * y + 1, 2 * x) = g;
        d.at(c, 2 * y + 1, 2 * x + 1) = g;
      }
    }
  }
  return d;
}

Tensor upsample2(const Tensor &in) {
  Tensor out(in.c, in.h * 2, in.w * 2);
  for (int c = 0; c < in.c; ++c) {
    for (int y = 0; y < out.h; ++y) {
      for (int x = 0; x < out.w; ++x) {
        out.at(c, y, x) = in.at(c, y / 2, x / 2);
      }
    }
  }
  return out;
}

Tensor upsample2_backward(const Tensor &d_out) {
  Tensor d(d_out.c, d_out.h / 2, d_out.w / 2);
  for (int c = 0; c < d_out.c; ++c) {
    for (int y = 0; y < d_out.h; ++y) {
      for (int x = 0; x < d_out.w; ++x) {
        d.at(c, y / 2, x / 2) += d_out.at(c, y, x);
      }
    }
  }
  return d;
}

Tensor concat_channels(const Tensor &a, const Tensor &b) {
  Tensor out(a.c + b.c, a.h, a.w);
  std::copy(a.v.begin(), a.v.end(), out.v.begin());
  std::copy(b.v.begin(), b.v.end(), out.v.begin() + a.v.size());
  return out;
}

}  // namespace

std::vector<double> timestep_embedding(int t, int dim) {
  const int half = dim / 2;
  std::vector<double> emb(dim);
  for (int i = 0; i < half; ++i) {
    const double freq = std::exp(-std::log(10000.0) * i / half);
    emb[i] = std::sin(t * freq);
    emb[half + i] = std::cos(t * freq);
  }
  return emb;
}

Denoiser::Denoiser(const NetConfig &config) : config_(config) {
  if (config.x_channels < 1 || config.y_channels < 1 || config.hidden < 1) {
    throw ValidationError("denoiser channel counts must be positive");
  }
  if (config.emb_dim < 2 || config.emb_dim % 2 != 0) {
    throw ValidationError("timestep embedding width must be even");
  }
  if (config.height % 2 != 0 || config.width % 2 != 0 || config.height < 4 ||
      config.width < 4) {
    throw ValidationError("denoiser spatial dims must be even and >= 4");
  }
  const int cin = config.x_channels + config.y_channels;
  const int f = config.hidden;

  auto add = [&](const std::string &name, std::vector<int> dims) {
    ParamShape s;
    s.name = name;
    s.dims = std::move(dims);
    s.count = 1;
    for (int d : s.dims) s.count *= static_cast<std::size_t>(d);
    s.offset = params_.size();
    params_.resize(params_.size() + s.count, 0.0);
    shapes_.push_back(std::move(s));
  };

  add("conv1.w", {f, cin, 3, 3});
  add("conv1.b", {f});
  add("temb.w", {f, config.emb_dim});
  add("temb.b", {f});
  add("conv2.w", {f, f, 3, 3});
  add("conv2.b", {f});
  add("conv3.w", {f, f, 3, 3});
  add("conv3.b", {f});
  add("conv4.w", {f, f, 3, 3});
  add("conv4.b", {f});
  add("conv5.w", {f, 2 * f, 3, 3});
  add("conv5.b", {f});
  add("conv6.w", {config.x_channels, f, 3, 3});
  add("conv6.b", {config.x_channels});
}

void Denoiser::init_weights(std::uint64_t seed) {
  GaussianRng rng(seed);
  auto fill = [&](int idx, double scale) {
    double *p = params_.data() + shapes_[idx].offset;
    for (std::size_t i = 0; i < shapes_[idx].count; ++i) {
      p[i] = scale * rng.normal();
    }
  };
  auto zero = [&](int idx) {
    double *p = params_.data() + shapes_[idx].offset;
    std::fill(p, p + shapes_[idx].count, 0.0);
  };

  const int cin = config_.x_channels + config_.y_channels;
  const int f = config_.hidden;
  fill(kConv1W, std::sqrt(2.0 / (cin * 9)));
  zero(kConv1B);
  fill(kTembW, std::sqrt(1.0 / config_.emb_dim));
  zero(kTembB);
  fill(kConv2W, std::sqrt(2.0 / (f * 9)));
  zero(kConv2B);
  fill(kConv3W, std::sqrt(2.0 / (f * 9)));
  zero(kConv3B);
  fill(kConv4W, std::sqrt(2.0 / (f * 9)));
  zero(kConv4B);
  fill(kConv5W, std::sqrt(2.0 / (2 * f * 9)));
  zero(kConv5B);
  zero(kConv6W);  // fresh nets predict zero noise
  zero(kConv6B);
}

void Denoiser::check_input(const Tensor &x, const Tensor &y) const {
  if (x.c != config_.x_channels || y.c != config_.y_channels ||
      x.h != config_.height || x.w != config_.width || y.h != x.h ||
      y.w != x.w) {
    throw DimensionError("denoiser input shape mismatch");
  }
}

Tensor Denoiser::forward(const Tensor &x, const Tensor &y, int t,
                         Cache *cache) const {
  check_input(x, y);
  const int f = config_.hidden;

  Cache local;
  Cache &cc = cache != nullptr ? *cache : local;

  cc.in = concat_channels(x, y);
  cc.emb = timestep_embedding(t, config_.emb_dim);

  conv3x3_forward(cc.in, arr(kConv1W), arr(kConv1B), f, &cc.h1);
  {
    const double *tw = arr(kTembW);
    const double *tb = arr(kTembB);
    for (int c = 0; c < f; ++c) {
      double bias = tb[c];
      for (int e = 0; e < config_.emb_dim; ++e) {
        bias += tw[c * config_.emb_dim + e] * cc.emb[e];
      }
      for (int y2 = 0; y2 < cc.h1.h; ++y2) {
        for (int x2 = 0; x2 < cc.h1.w; ++x2) {
          cc.h1.at(c, y2, x2) += bias;
        }
      }
    }
  }
  cc.a1 = silu_tensor(cc.h1);
  conv3x3_forward(cc.a1, arr(kConv2W), arr(kConv2B), f, &cc.h2);
  cc.a2 = silu_tensor(cc.h2);
  cc.p = avgpool2(cc.a2);
  conv3x3_forward(cc.p, arr(kConv3W), arr(kConv3B), f, &cc.h3);
  cc.a3 = silu_tensor(cc.h3);
  conv3x3_forward(cc.a3, arr(kConv4W), arr(kConv4B), f, &cc.h4);
  cc.a4 = silu_tensor(cc.h4);
  cc.u = upsample2(cc.a4);
  cc.cat = concat_channels(cc.a2, cc.u);
  conv3x3_forward(cc.cat, arr(kConv5W), arr(kConv5B), f, &cc.h5);
  cc.a5 = silu_tensor(cc.h5);

  Tensor out;
  conv3x3_forward(cc.a5, arr(kConv6W), arr(kConv6B), config_.x_channels,
                  &out);
  return out;
}

void Denoiser::backward(const Cache &cc, const Tensor &d_out,
                        std::vector<double> *grad) const {
  if (grad->size() != params_.size()) {
    throw DimensionError("gradient buffer size mismatch");
  }
  const int f = config_.hidden;
  auto g = [&](int idx) { return grad->data() + shapes_[idx].offset; };

  Tensor d_a5;
  conv3x3_backward(cc.a5, arr(kConv6W), d_out, &d_a5, g(kConv6W), g(kConv6B));
  Tensor d_h5 = silu_backward(cc.h5, d_a5);

  Tensor d_cat;
  conv3x3_backward(cc.cat, arr(kConv5W), d_h5, &d_cat, g(kConv5W), g(kConv5B));

  // Split the concat gradient into skip (first f channels) and up path.
  Tensor d_a2(f, d_cat.h, d_cat.w);
  Tensor d_u(f, d_cat.h, d_cat.w);
  std::copy(d_cat.v.begin(), d_cat.v.begin() + d_a2.v.size(), d_a2.v.begin());
  std::copy(d_cat.v.begin() + d_a2.v.size(), d_cat.v.end(), d_u.v.begin());

  Tensor d_a4 = upsample2_backward(d_u);
  Tensor d_h4 = silu_backward(cc.h4, d_a4);
  Tensor d_a3;
  conv3x3_backward(cc.a3, arr(kConv4W), d_h4, &d_a3, g(kConv4W), g(kConv4B));
  Tensor d_h3 = silu_backward(cc.h3, d_a3);
  Tensor d_p;
  conv3x3_backward(cc.p, arr(kConv3W), d_h3, &d_p, g(kConv3W), g(kConv3B));

  Tensor d_a2_pool = avgpool2_backward(d_p, cc.a2.h, cc.a2.w);
  for (std::size_t i = 0; i < d_a2.v.size(); ++i) {
    d_a2.v[i] += d_a2_pool.v[i];
  }

  Tensor d_h2 = silu_backward(cc.h2, d_a2);
  Tensor d_a1;
  conv3x3_backward(cc.a1, arr(kConv2W), d_h2, &d_a1, g(kConv2W), g(kConv2B));
  Tensor d_h1 = silu_backward(cc.h1, d_a1);

  // Timestep projection sees d_h1 summed over space per channel.
  {
    double *dtw = g(kTembW);
    double *dtb = g(kTembB);
    for (int c = 0; c < f; ++c) {
      double sum = 0.0;
      for (int y = 0; y < d_h1.h; ++y) {
        for (int x = 0; x < d_h1.w; ++x) {
          sum += d_h1.at(c, y, x);
        }
      }
      dtb[c] += sum;
      for (int e = 0; e < config_.emb_dim; ++e) {
        dtw[c * config_.emb_dim + e] += sum * cc.emb[e];
      }
    }
  }

  conv3x3_backward(cc.in, arr(kConv1W), d_h1, nullptr, g(kConv1W), g(kConv1B));
}

}  // namespace gvc
