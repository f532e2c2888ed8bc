#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace lstar {

struct ShapeError : std::runtime_error {
  explicit ShapeError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Dense real tensor, row-major, 64-bit entries. A scalar has empty shape.
class Tensor {
 public:
  Tensor() : shape_(), data_(1, 0.0) {}
  explicit Tensor(std::vector<std::size_t> shape);
  Tensor(std::vector<std::size_t> shape, std::vector<double> data);

  static Tensor scalar(double x);
  static Tensor vec(std::initializer_list<double> xs);
  static Tensor vec(const std::vector<double>& xs);
  static Tensor zeros(std::vector<std::size_t> shape);
  static Tensor identity(std::size_t n);
  /// Unit basis vector e_i in dimension n.
  static Tensor basis(std::size_t n, std::size_t i);

  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t size() const { return data_.size(); }
  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  double& at(const std::vector<std::size_t>& idx);
  double at(const std::vector<std::size_t>& idx) const;
  double& operator[](std::size_t flat) { return data_[flat]; }
  double operator[](std::size_t flat) const { return data_[flat]; }

  /// Reinterpret the buffer under a new shape with the same total size.
  Tensor reshaped(std::vector<std::size_t> shape) const;
  Tensor transposed(const std::vector<std::size_t>& perm) const;

  Tensor operator+(const Tensor& o) const;
  Tensor operator-(const Tensor& o) const;
  Tensor scaled(double a) const;

  double sum() const;
  double norm() const;
  double max_abs() const;
  double dot(const Tensor& o) const;

  bool same_shape(const Tensor& o) const { return shape_ == o.shape_; }
  std::string shape_str() const;

 private:
  std::vector<std::size_t> shape_;
  std::vector<double> data_;
};

/// Outer product: shape is the concatenation, entries are products.
Tensor outer(const Tensor& a, const Tensor& b);

/// Generalized contraction of paired axes (a-axis, b-axis). Free axes of a
/// come first in the result, then free axes of b, both in original order.
Tensor contract(const Tensor& a, const Tensor& b,
                const std::vector<std::pair<std::size_t, std::size_t>>& axes);

/// Contract pairs of axes within a single tensor (generalized trace).
Tensor contract_within(const Tensor& a,
                       const std::vector<std::pair<std::size_t, std::size_t>>& axes);

double cosine(const Tensor& a, const Tensor& b);
double euclidean(const Tensor& a, const Tensor& b);

double max_abs_diff(const Tensor& a, const Tensor& b);
bool approx_equal(const Tensor& a, const Tensor& b, double tol);

}  // namespace lstar
