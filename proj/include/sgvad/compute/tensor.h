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

#ifndef SGVAD_COMPUTE_TENSOR_H_
#define SGVAD_COMPUTE_TENSOR_H_

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "sgvad/common/error.h"

namespace sgvad::compute {

using Shape = std::vector<size_t>;

inline size_t NumElements(const Shape& shape) {
  return std::accumulate(shape.begin(), shape.end(), size_t{1},
                         std::multiplies<>());
}

inline std::string ShapeString(const Shape& shape) {
  std::string s = "[";
  for (size_t i = 0; i < shape.size(); ++i) {
    if (i) s += "x";
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

// Dense row-major array. Activations are laid out batch x channels x time.
template <typename T>
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(Shape shape, T fill = T{0})
      : shape_(std::move(shape)), data_(NumElements(shape_), fill) {}
  Tensor(Shape shape, std::vector<T> data)
      : shape_(std::move(shape)), data_(std::move(data)) {
    if (data_.size() != NumElements(shape_)) {
      throw Error(ErrorCode::kShapeMismatch,
                  "tensor data length does not match " + ShapeString(shape_));
    }
  }

  const Shape& shape() const { return shape_; }
  size_t rank() const { return shape_.size(); }
  size_t dim(size_t i) const { return shape_[i]; }
  size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }
  std::span<T> span() { return data_; }
  std::span<const T> span() const { return data_; }
  std::vector<T>& vec() { return data_; }
  const std::vector<T>& vec() const { return data_; }

  T& operator[](size_t i) { return data_[i]; }
  const T& operator[](size_t i) const { return data_[i]; }

  // Rank-3 accessors.
  T& at(size_t b, size_t c, size_t t) {
    return data_[(b * shape_[1] + c) * shape_[2] + t];
  }
  const T& at(size_t b, size_t c, size_t t) const {
    return data_[(b * shape_[1] + c) * shape_[2] + t];
  }

  void Fill(T v) { std::fill(data_.begin(), data_.end(), v); }
  bool SameShape(const Tensor& o) const { return shape_ == o.shape_; }

  template <typename U>
  Tensor<U> Cast() const {
    std::vector<U> out(data_.begin(), data_.end());
    return Tensor<U>(shape_, std::move(out));
  }

  bool operator==(const Tensor&) const = default;

 private:
  Shape shape_;
  std::vector<T> data_;
};

inline void CheckShape(const Shape& got, const Shape& want,
                       const char* what) {
  if (got != want) {
    throw Error(ErrorCode::kShapeMismatch, std::string(what) + ": got " +
                                               ShapeString(got) + ", want " +
                                               ShapeString(want));
  }
}

template <typename T>
void CheckRank(const Tensor<T>& x, size_t rank, const char* what) {
  if (x.rank() != rank) {
    throw Error(ErrorCode::kShapeMismatch,
                std::string(what) + ": expected rank " + std::to_string(rank) +
                    ", got " + ShapeString(x.shape()));
  }
}

}  // namespace sgvad::compute

#endif  // SGVAD_COMPUTE_TENSOR_H_
