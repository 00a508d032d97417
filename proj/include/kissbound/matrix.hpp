#pragma once

#include "kissbound/numeric.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace kissbound {

/// Square dense matrix, row-major.
template <class T>
class DenseMatrix {
public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, T(0)) {}

  static DenseMatrix identity(std::size_t dim, const T& scale = T(1)) {
    DenseMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = scale;
    return m;
  }

  std::size_t dim() const { return dim_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

  T& at(std::size_t i, std::size_t j) {
    check(i, j);
    return data_[i * dim_ + j];
  }
  const T& at(std::size_t i, std::size_t j) const {
    check(i, j);
    return data_[i * dim_ + j];
  }

  bool is_symmetric() const {
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t j = i + 1; j < dim_; ++j) {
        if ((*this)(i, j) != (*this)(j, i)) return false;
      }
    }
    return true;
  }

  /// (X + X^T) / 2.
  DenseMatrix symmetrized() const {
    DenseMatrix r(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t j = 0; j < dim_; ++j) r(i, j) = ((*this)(i, j) + (*this)(j, i)) / 2;
    }
    return r;
  }

  T trace() const {
    T acc(0);
    for (std::size_t i = 0; i < dim_; ++i) acc += (*this)(i, i);
    return acc;
  }

  DenseMatrix& operator+=(const DenseMatrix& o) {
    same_dim(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  DenseMatrix& operator-=(const DenseMatrix& o) {
    same_dim(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }

  bool operator==(const DenseMatrix& o) const { return dim_ == o.dim_ && data_ == o.data_; }

private:
  void check(std::size_t i, std::size_t j) const {
    if (i >= dim_ || j >= dim_) throw std::out_of_range("matrix index out of range");
  }
  void same_dim(const DenseMatrix& o) const {
    if (o.dim_ != dim_) throw std::invalid_argument("matrix dimension mismatch");
  }

  std::size_t dim_ = 0;
  std::vector<T> data_;
};

using RealMatrix = DenseMatrix<Real>;
using RationalMatrix = DenseMatrix<Rational>;

}  // namespace kissbound
