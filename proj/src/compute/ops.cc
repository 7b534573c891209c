// Copyright (c) 2026 The sgvad Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sgvad/compute/ops.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace sgvad::compute {
namespace {

// Fixed-order dot product with independent partial sums; deterministic and
// friendlier to the vectorizer than a single running sum.
template <typename T>
T Dot(const T* a, const T* b, size_t n) {
  T acc[8] = {};
  size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    for (int j = 0; j < 8; ++j) acc[j] += a[i + j] * b[i + j];
  }
  T tail = 0;
  for (; i < n; ++i) tail += a[i] * b[i];
  return ((acc[0] + acc[1]) + (acc[2] + acc[3])) +
         ((acc[4] + acc[5]) + (acc[6] + acc[7])) + tail;
}

template <typename T>
void Axpy(T alpha, const T* x, T* y, size_t n) {
  for (size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

// Valid output range [lo, hi) for which t + offset lies in [0, frames).
std::pair<size_t, size_t> ValidRange(ptrdiff_t offset, size_t frames) {
  const auto n = static_cast<ptrdiff_t>(frames);
  const ptrdiff_t lo = std::max<ptrdiff_t>(0, -offset);
  const ptrdiff_t hi = std::min<ptrdiff_t>(n, n - offset);
  if (hi <= lo) return {0, 0};
  return {static_cast<size_t>(lo), static_cast<size_t>(hi)};
}

template <typename T>
void CheckDepthwise(const Tensor<T>& x, const Tensor<T>& w, int dilation) {
  CheckRank(x, 3, "depthwise conv input");
  CheckRank(w, 2, "depthwise conv weight");
  if (w.dim(0) != x.dim(1)) {
    throw Error(ErrorCode::kShapeMismatch,
                "depthwise conv: weight " + ShapeString(w.shape()) +
                    " does not match input " + ShapeString(x.shape()));
  }
  if (w.dim(1) % 2 == 0 || dilation < 1) {
    throw Error(ErrorCode::kShapeMismatch,
                "depthwise conv: kernel width must be odd, dilation >= 1");
  }
}

template <typename T>
void CheckPointwise(const Tensor<T>& x, const Tensor<T>& w,
                    const Tensor<T>& bias) {
  CheckRank(x, 3, "pointwise conv input");
  CheckRank(w, 2, "pointwise conv weight");
  if (w.dim(1) != x.dim(1)) {
    throw Error(ErrorCode::kShapeMismatch,
                "pointwise conv: weight " + ShapeString(w.shape()) +
                    " does not match input " + ShapeString(x.shape()));
  }
  if (!bias.empty()) CheckShape(bias.shape(), {w.dim(0)}, "pointwise bias");
}

}  // namespace

template <typename T>
Tensor<T> DepthwiseConv1d(const Tensor<T>& x, const Tensor<T>& w,
                          int dilation) {
  CheckDepthwise(x, w, dilation);
  const size_t batch = x.dim(0), channels = x.dim(1), frames = x.dim(2);
  const size_t kernel = w.dim(1);
  const auto pad = static_cast<ptrdiff_t>((kernel - 1) * dilation / 2);
  Tensor<T> out(x.shape());
  for (size_t b = 0; b < batch; ++b) {
    for (size_t c = 0; c < channels; ++c) {
      const T* src = &x.at(b, c, 0);
      T* dst = &out.at(b, c, 0);
      for (size_t k = 0; k < kernel; ++k) {
        const ptrdiff_t offset = static_cast<ptrdiff_t>(k) * dilation - pad;
        auto [lo, hi] = ValidRange(offset, frames);
        const T wk = w[c * kernel + k];
        for (size_t t = lo; t < hi; ++t) dst[t] += wk * src[t + offset];
      }
    }
  }
  return out;
}

template <typename T>
void DepthwiseConv1dBackward(const Tensor<T>& x, const Tensor<T>& w,
                             int dilation, const Tensor<T>& dy, Tensor<T>* dx,
                             Tensor<T>* dw) {
  CheckDepthwise(x, w, dilation);
  CheckShape(dy.shape(), x.shape(), "depthwise conv grad");
  const size_t batch = x.dim(0), channels = x.dim(1), frames = x.dim(2);
  const size_t kernel = w.dim(1);
  const auto pad = static_cast<ptrdiff_t>((kernel - 1) * dilation / 2);
  if (dx) *dx = Tensor<T>(x.shape());
  for (size_t b = 0; b < batch; ++b) {
    for (size_t c = 0; c < channels; ++c) {
      const T* src = &x.at(b, c, 0);
      const T* g = &dy.at(b, c, 0);
      T* gx = dx ? &dx->at(b, c, 0) : nullptr;
      for (size_t k = 0; k < kernel; ++k) {
        const ptrdiff_t offset = static_cast<ptrdiff_t>(k) * dilation - pad;
        auto [lo, hi] = ValidRange(offset, frames);
        if (hi <= lo) continue;
        if (dw) (*dw)[c * kernel + k] += Dot(g + lo, src + lo + offset, hi - lo);
        if (gx) Axpy(w[c * kernel + k], g + lo, gx + lo + offset, hi - lo);
      }
    }
  }
}

template <typename T>
Tensor<T> PointwiseConv1d(const Tensor<T>& x, const Tensor<T>& w,
                          const Tensor<T>& bias) {
  CheckPointwise(x, w, bias);
  const size_t batch = x.dim(0), in_ch = x.dim(1), frames = x.dim(2);
  const size_t out_ch = w.dim(0);
  Tensor<T> out({batch, out_ch, frames});
  for (size_t b = 0; b < batch; ++b) {
    for (size_t o = 0; o < out_ch; ++o) {
      T* dst = &out.at(b, o, 0);
      if (!bias.empty()) std::fill(dst, dst + frames, bias[o]);
      for (size_t c = 0; c < in_ch; ++c) {
        Axpy(w[o * in_ch + c], &x.at(b, c, 0), dst, frames);
      }
    }
  }
  return out;
}

template <typename T>
void PointwiseConv1dBackward(const Tensor<T>& x, const Tensor<T>& w,
                             const Tensor<T>& dy, Tensor<T>* dx, Tensor<T>* dw,
                             Tensor<T>* dbias) {
  CheckPointwise(x, w, Tensor<T>());
  const size_t batch = x.dim(0), in_ch = x.dim(1), frames = x.dim(2);
  const size_t out_ch = w.dim(0);
  CheckShape(dy.shape(), {batch, out_ch, frames}, "pointwise conv grad");
  if (dx) *dx = Tensor<T>(x.shape());
  for (size_t b = 0; b < batch; ++b) {
    for (size_t o = 0; o < out_ch; ++o) {
      const T* g = &dy.at(b, o, 0);
      if (dbias) {
        T s = 0;
        for (size_t t = 0; t < frames; ++t) s += g[t];
        (*dbias)[o] += s;
      }
      for (size_t c = 0; c < in_ch; ++c) {
        if (dw) (*dw)[o * in_ch + c] += Dot(g, &x.at(b, c, 0), frames);
        if (dx) Axpy(w[o * in_ch + c], g, &dx->at(b, c, 0), frames);
      }
    }
  }
}

template <typename T>
Tensor<T> BatchNorm1d(const Tensor<T>& x, const Tensor<T>& gamma,
                      const Tensor<T>& beta, Tensor<T>* running_mean,
                      Tensor<T>* running_var, Mode mode,
                      BatchNormCache<T>* cache) {
  CheckRank(x, 3, "batch norm input");
  const size_t batch = x.dim(0), channels = x.dim(1), frames = x.dim(2);
  CheckShape(gamma.shape(), {channels}, "batch norm gamma");
  CheckShape(beta.shape(), {channels}, "batch norm beta");
  CheckShape(running_mean->shape(), {channels}, "batch norm running mean");
  CheckShape(running_var->shape(), {channels}, "batch norm running var");

  const T eps = static_cast<T>(kBatchNormEps);
  const T momentum = static_cast<T>(kBatchNormMomentum);
  const size_t count = batch * frames;
  Tensor<T> out(x.shape());
  Tensor<T> x_hat(x.shape());
  std::vector<T> inv_std(channels);
  for (size_t c = 0; c < channels; ++c) {
    T mean, var;
    if (mode == Mode::kTrain) {
      double sum = 0.0;
      for (size_t b = 0; b < batch; ++b) {
        for (size_t t = 0; t < frames; ++t) sum += x.at(b, c, t);
      }
      const double m = sum / static_cast<double>(count);
      double sq = 0.0;
      for (size_t b = 0; b < batch; ++b) {
        for (size_t t = 0; t < frames; ++t) {
          const double d = x.at(b, c, t) - m;
          sq += d * d;
        }
      }
      const double v = sq / static_cast<double>(count);
      mean = static_cast<T>(m);
      var = static_cast<T>(v);
      const double unbiased = count > 1 ? sq / static_cast<double>(count - 1) : v;
      (*running_mean)[c] = (1 - momentum) * (*running_mean)[c] + momentum * mean;
      (*running_var)[c] = (1 - momentum) * (*running_var)[c] +
                          momentum * static_cast<T>(unbiased);
    } else {
      mean = (*running_mean)[c];
      var = (*running_var)[c];
    }
    const T istd = T(1) / std::sqrt(var + eps);
    inv_std[c] = istd;
    for (size_t b = 0; b < batch; ++b) {
      for (size_t t = 0; t < frames; ++t) {
        const T h = (x.at(b, c, t) - mean) * istd;
        x_hat.at(b, c, t) = h;
        out.at(b, c, t) = gamma[c] * h + beta[c];
      }
    }
  }
  if (cache) {
    cache->mode = mode;
    cache->x_hat = std::move(x_hat);
    cache->inv_std = std::move(inv_std);
  }
  return out;
}

template <typename T>
Tensor<T> BatchNorm1dInfer(const Tensor<T>& x, const Tensor<T>& gamma,
                           const Tensor<T>& beta, const Tensor<T>& running_mean,
                           const Tensor<T>& running_var) {
  CheckRank(x, 3, "batch norm input");
  const size_t batch = x.dim(0), channels = x.dim(1), frames = x.dim(2);
  CheckShape(gamma.shape(), {channels}, "batch norm gamma");
  const T eps = static_cast<T>(kBatchNormEps);
  Tensor<T> out(x.shape());
  for (size_t c = 0; c < channels; ++c) {
    const T istd = T(1) / std::sqrt(running_var[c] + eps);
    const T mean = running_mean[c];
    for (size_t b = 0; b < batch; ++b) {
      for (size_t t = 0; t < frames; ++t) {
        out.at(b, c, t) = gamma[c] * ((x.at(b, c, t) - mean) * istd) + beta[c];
      }
    }
  }
  return out;
}

template <typename T>
void BatchNorm1dBackward(const BatchNormCache<T>& cache, const Tensor<T>& gamma,
                         const Tensor<T>& dy, Tensor<T>* dx, Tensor<T>* dgamma,
                         Tensor<T>* dbeta) {
  const Tensor<T>& x_hat = cache.x_hat;
  CheckShape(dy.shape(), x_hat.shape(), "batch norm grad");
  const size_t batch = dy.dim(0), channels = dy.dim(1), frames = dy.dim(2);
  const T count = static_cast<T>(batch * frames);
  if (dx) *dx = Tensor<T>(dy.shape());
  for (size_t c = 0; c < channels; ++c) {
    T sum_dy = 0, sum_dy_xhat = 0;
    for (size_t b = 0; b < batch; ++b) {
      for (size_t t = 0; t < frames; ++t) {
        sum_dy += dy.at(b, c, t);
        sum_dy_xhat += dy.at(b, c, t) * x_hat.at(b, c, t);
      }
    }
    if (dgamma) (*dgamma)[c] += sum_dy_xhat;
    if (dbeta) (*dbeta)[c] += sum_dy;
    if (!dx) continue;
    const T scale = gamma[c] * cache.inv_std[c];
    for (size_t b = 0; b < batch; ++b) {
      for (size_t t = 0; t < frames; ++t) {
        if (cache.mode == Mode::kTrain) {
          dx->at(b, c, t) = scale / count *
                            (count * dy.at(b, c, t) - sum_dy -
                             x_hat.at(b, c, t) * sum_dy_xhat);
        } else {
          dx->at(b, c, t) = scale * dy.at(b, c, t);
        }
      }
    }
  }
}

template <typename T>
Tensor<T> Tanh(const Tensor<T>& x) {
  Tensor<T> y(x.shape());
  for (size_t i = 0; i < x.size(); ++i) y[i] = std::tanh(x[i]);
  return y;
}

template <typename T>
Tensor<T> TanhBackward(const Tensor<T>& y, const Tensor<T>& dy) {
  CheckShape(dy.shape(), y.shape(), "tanh grad");
  Tensor<T> dx(y.shape());
  for (size_t i = 0; i < y.size(); ++i) dx[i] = dy[i] * (T(1) - y[i] * y[i]);
  return dx;
}

template <typename T>
Tensor<T> Relu(const Tensor<T>& x) {
  Tensor<T> y(x.shape());
  for (size_t i = 0; i < x.size(); ++i) y[i] = x[i] > T(0) ? x[i] : T(0);
  return y;
}

template <typename T>
Tensor<T> ReluBackward(const Tensor<T>& y, const Tensor<T>& dy) {
  CheckShape(dy.shape(), y.shape(), "relu grad");
  Tensor<T> dx(y.shape());
  for (size_t i = 0; i < y.size(); ++i) dx[i] = y[i] > T(0) ? dy[i] : T(0);
  return dx;
}

template <typename T>
Tensor<T> Add(const Tensor<T>& a, const Tensor<T>& b) {
  Tensor<T> out = a;
  AddInPlace(&out, b);
  return out;
}

template <typename T>
void AddInPlace(Tensor<T>* a, const Tensor<T>& b) {
  CheckShape(b.shape(), a->shape(), "add");
  for (size_t i = 0; i < b.size(); ++i) (*a)[i] += b[i];
}

template <typename T>
Tensor<T> GlobalAvgPool(const Tensor<T>& x) {
  CheckRank(x, 3, "global average pool");
  const size_t batch = x.dim(0), channels = x.dim(1), frames = x.dim(2);
  Tensor<T> out({batch, channels});
  for (size_t b = 0; b < batch; ++b) {
    for (size_t c = 0; c < channels; ++c) {
      T s = 0;
      for (size_t t = 0; t < frames; ++t) s += x.at(b, c, t);
      out[b * channels + c] = s / static_cast<T>(frames);
    }
  }
  return out;
}

template <typename T>
Tensor<T> GlobalAvgPoolBackward(const Tensor<T>& dy, size_t frames) {
  CheckRank(dy, 2, "global average pool grad");
  const size_t batch = dy.dim(0), channels = dy.dim(1);
  Tensor<T> dx({batch, channels, frames});
  for (size_t b = 0; b < batch; ++b) {
    for (size_t c = 0; c < channels; ++c) {
      const T g = dy[b * channels + c] / static_cast<T>(frames);
      for (size_t t = 0; t < frames; ++t) dx.at(b, c, t) = g;
    }
  }
  return dx;
}

template <typename T>
Tensor<T> Linear(const Tensor<T>& x, const Tensor<T>& w, const Tensor<T>& bias) {
  CheckRank(x, 2, "linear input");
  CheckRank(w, 2, "linear weight");
  if (w.dim(1) != x.dim(1)) {
    throw Error(ErrorCode::kShapeMismatch,
                "linear: weight " + ShapeString(w.shape()) +
                    " does not match input " + ShapeString(x.shape()));
  }
  CheckShape(bias.shape(), {w.dim(0)}, "linear bias");
  const size_t batch = x.dim(0), in = x.dim(1), out_dim = w.dim(0);
  Tensor<T> out({batch, out_dim});
  for (size_t b = 0; b < batch; ++b) {
    for (size_t o = 0; o < out_dim; ++o) {
      out[b * out_dim + o] = bias[o] + Dot(&w[o * in], &x[b * in], in);
    }
  }
  return out;
}

template <typename T>
void LinearBackward(const Tensor<T>& x, const Tensor<T>& w, const Tensor<T>& dy,
                    Tensor<T>* dx, Tensor<T>* dw, Tensor<T>* dbias) {
  const size_t batch = x.dim(0), in = x.dim(1), out_dim = w.dim(0);
  CheckShape(dy.shape(), {batch, out_dim}, "linear grad");
  if (dx) *dx = Tensor<T>(x.shape());
  for (size_t b = 0; b < batch; ++b) {
    for (size_t o = 0; o < out_dim; ++o) {
      const T g = dy[b * out_dim + o];
      if (dbias) (*dbias)[o] += g;
      if (dw) Axpy(g, &x[b * in], &(*dw)[o * in], in);
      if (dx) Axpy(g, &w[o * in], &(*dx)[b * in], in);
    }
  }
}

template <typename T>
std::vector<T> Softmax(std::span<const T> logits) {
  std::vector<T> p(logits.size());
  if (logits.empty()) return p;
  const T mx = *std::max_element(logits.begin(), logits.end());
  T sum = 0;
  for (size_t i = 0; i < logits.size(); ++i) {
    p[i] = std::exp(logits[i] - mx);
    sum += p[i];
  }
  for (T& v : p) v /= sum;
  return p;
}

template <typename T>
CrossEntropyResult<T> SoftmaxCrossEntropy(const Tensor<T>& logits,
                                          const std::vector<int>& targets) {
  CheckRank(logits, 2, "cross entropy logits");
  const size_t batch = logits.dim(0), classes = logits.dim(1);
  if (classes < 2) {
    throw Error(ErrorCode::kShapeMismatch, "cross entropy needs >= 2 classes");
  }
  if (targets.size() != batch) {
    throw Error(ErrorCode::kShapeMismatch, "cross entropy: target count " +
                                               std::to_string(targets.size()) +
                                               " != batch " +
                                               std::to_string(batch));
  }
  CrossEntropyResult<T> res;
  res.losses.resize(batch);
  res.grad = Tensor<T>(logits.shape());
  for (size_t b = 0; b < batch; ++b) {
    const int target = targets[b];
    if (target < 0 || static_cast<size_t>(target) >= classes) {
      throw Error(ErrorCode::kBadTarget,
                  "target " + std::to_string(target) + " outside [0, " +
                      std::to_string(classes) + ")");
    }
    std::span<const T> row(&logits[b * classes], classes);
    const T mx = *std::max_element(row.begin(), row.end());
    T sum = 0;
    for (T v : row) sum += std::exp(v - mx);
    const T log_z = mx + std::log(sum);
    res.losses[b] = log_z - row[target];
    for (size_t k = 0; k < classes; ++k) {
      res.grad[b * classes + k] = std::exp(row[k] - log_z);
    }
    res.grad[b * classes + target] -= T(1);
  }
  return res;
}

#define SGVAD_INSTANTIATE_OPS(T)                                               \
  template Tensor<T> DepthwiseConv1d(const Tensor<T>&, const Tensor<T>&, int); \
  template void DepthwiseConv1dBackward(const Tensor<T>&, const Tensor<T>&,    \
                                        int, const Tensor<T>&, Tensor<T>*,     \
                                        Tensor<T>*);                           \
  template Tensor<T> PointwiseConv1d(const Tensor<T>&, const Tensor<T>&,       \
                                     const Tensor<T>&);                        \
  template void PointwiseConv1dBackward(const Tensor<T>&, const Tensor<T>&,    \
                                        const Tensor<T>&, Tensor<T>*,          \
                                        Tensor<T>*, Tensor<T>*);               \
  template Tensor<T> BatchNorm1d(const Tensor<T>&, const Tensor<T>&,           \
                                 const Tensor<T>&, Tensor<T>*, Tensor<T>*,     \
                                 Mode, BatchNormCache<T>*);                    \
  template Tensor<T> BatchNorm1dInfer(const Tensor<T>&, const Tensor<T>&,      \
                                      const Tensor<T>&, const Tensor<T>&,      \
                                      const Tensor<T>&);                       \
  template void BatchNorm1dBackward(const BatchNormCache<T>&,                  \
                                    const Tensor<T>&, const Tensor<T>&,        \
                                    Tensor<T>*, Tensor<T>*, Tensor<T>*);       \
  template Tensor<T> Tanh(const Tensor<T>&);                                   \
  template Tensor<T> TanhBackward(const Tensor<T>&, const Tensor<T>&);         \
  template Tensor<T> Relu(const Tensor<T>&);                                   \
  template Tensor<T> ReluBackward(const Tensor<T>&, const Tensor<T>&);         \
  template Tensor<T> Add(const Tensor<T>&, const Tensor<T>&);                  \
  template void AddInPlace(Tensor<T>*, const Tensor<T>&);                      \
  template Tensor<T> GlobalAvgPool(const Tensor<T>&);                          \
  template Tensor<T> GlobalAvgPoolBackward(const Tensor<T>&, size_t);          \
  template Tensor<T> Linear(const Tensor<T>&, const Tensor<T>&,                \
                            const Tensor<T>&);                                 \
  template void LinearBackward(const Tensor<T>&, const Tensor<T>&,             \
                               const Tensor<T>&, Tensor<T>*, Tensor<T>*,       \
                               Tensor<T>*);                                    \
  template std::vector<T> Softmax(std::span<const T>);                         \
  template CrossEntropyResult<T> SoftmaxCrossEntropy(const Tensor<T>&,         \
                                                     const std::vector<int>&);

SGVAD_INSTANTIATE_OPS(float)
SGVAD_INSTANTIATE_OPS(double)

#undef SGVAD_INSTANTIATE_OPS

}  // namespace sgvad::compute
