#include "lstar/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace lstar {

namespace {

std::size_t shape_product(const std::vector<std::size_t>& shape) {
  std::size_t n = 1;
  for (std::size_t d : shape) {
    if (d == 0) throw ShapeError("zero extent in shape");
    n *= d;
  }
  return n;
}

std::vector<std::size_t> row_major_strides(const std::vector<std::size_t>& shape) {
  std::vector<std::size_t> strides(shape.size(), 1);
  for (std::size_t i = shape.size(); i-- > 1;) strides[i - 1] = strides[i] * shape[i];
  return strides;
}

}  // namespace

Tensor::Tensor(std::vector<std::size_t> shape)
    : shape_(std::move(shape)), data_(shape_product(shape_), 0.0) {}

Tensor::Tensor(std::vector<std::size_t> shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  if (data_.size() != shape_product(shape_))
    throw ShapeError("data length " + std::to_string(data_.size()) +
                     " does not match shape " + shape_str());
}

Tensor Tensor::scalar(double x) {
  Tensor t;
  t.data_[0] = x;
  return t;
}

Tensor Tensor::vec(std::initializer_list<double> xs) {
  return Tensor({xs.size()}, std::vector<double>(xs));
}

Tensor Tensor::vec(const std::vector<double>& xs) {
  return Tensor({xs.size()}, xs);
}

Tensor Tensor::zeros(std::vector<std::size_t> shape) { return Tensor(std::move(shape)); }

Tensor Tensor::identity(std::size_t n) {
  Tensor t({n, n});
  for (std::size_t i = 0; i < n; ++i) t.data_[i * n + i] = 1.0;
  return t;
}

Tensor Tensor::basis(std::size_t n, std::size_t i) {
  Tensor t({n});
  t.data_.at(i) = 1.0;
  return t;
}

double& Tensor::at(const std::vector<std::size_t>& idx) {
  const auto& self = *this;
  return const_cast<double&>(self.at(idx));
}

double Tensor::at(const std::vector<std::size_t>& idx) const {
  if (idx.size() != shape_.size()) throw ShapeError("index rank mismatch");
  std::size_t flat = 0, stride = 1;
  for (std::size_t i = shape_.size(); i-- > 0;) {
    if (idx[i] >= shape_[i]) throw ShapeError("index out of range");
    flat += idx[i] * stride;
    stride *= shape_[i];
  }
  return data_[flat];
}

Tensor Tensor::reshaped(std::vector<std::size_t> shape) const {
  if (shape_product(shape) != data_.size())
    throw ShapeError("reshape size mismatch: " + shape_str());
  return Tensor(std::move(shape), data_);
}

Tensor Tensor::transposed(const std::vector<std::size_t>& perm) const {
  if (perm.size() != shape_.size()) throw ShapeError("transpose rank mismatch");
  std::vector<std::size_t> new_shape(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) new_shape[i] = shape_[perm[i]];
  Tensor out(new_shape);
  if (rank() == 0) {
    out.data_[0] = data_[0];
    return out;
  }
  const auto in_strides = row_major_strides(shape_);
  const auto out_strides = row_major_strides(new_shape);
  std::vector<std::size_t> idx(rank(), 0);
  for (std::size_t flat = 0; flat < data_.size(); ++flat) {
    std::size_t rest = flat;
    std::size_t off = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
      idx[i] = rest / in_strides[i];
      rest %= in_strides[i];
    }
    for (std::size_t i = 0; i < rank(); ++i) off += idx[perm[i]] * out_strides[i];
    out.data_[off] = data_[flat];
  }
  return out;
}

Tensor Tensor::operator+(const Tensor& o) const {
  if (!same_shape(o)) throw ShapeError("add: shape mismatch");
  Tensor out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += o.data_[i];
  return out;
}

Tensor Tensor::operator-(const Tensor& o) const {
  if (!same_shape(o)) throw ShapeError("sub: shape mismatch");
  Tensor out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= o.data_[i];
  return out;
}

Tensor Tensor::scaled(double a) const {
  Tensor out = *this;
  for (double& x : out.data_) x *= a;
  return out;
}

double Tensor::sum() const { return std::accumulate(data_.begin(), data_.end(), 0.0); }

double Tensor::norm() const { return std::sqrt(dot(*this)); }

double Tensor::max_abs() const {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::fabs(x));
  return m;
}

double Tensor::dot(const Tensor& o) const {
  if (data_.size() != o.data_.size()) throw ShapeError("dot: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i) s += data_[i] * o.data_[i];
  return s;
}

std::string Tensor::shape_str() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < shape_.size(); ++i) os << (i ? "," : "") << shape_[i];
  os << ")";
  return os.str();
}

Tensor outer(const Tensor& a, const Tensor& b) {
  std::vector<std::size_t> shape = a.shape();
  shape.insert(shape.end(), b.shape().begin(), b.shape().end());
  Tensor out(shape, std::vector<double>(a.size() * b.size()));
  std::size_t k = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[k++] = a[i] * b[j];
  return out;
}

Tensor contract(const Tensor& a, const Tensor& b,
                const std::vector<std::pair<std::size_t, std::size_t>>& axes) {
  std::vector<bool> a_used(a.rank(), false), b_used(b.rank(), false);
  for (auto [ia, ib] : axes) {
    if (ia >= a.rank() || ib >= b.rank()) throw ShapeError("contract: axis out of range");
    if (a_used[ia] || b_used[ib]) throw ShapeError("contract: axis reused");
    if (a.shape()[ia] != b.shape()[ib])
      throw ShapeError("contract: extent mismatch on axes " + std::to_string(ia) + "," +
                       std::to_string(ib));
    a_used[ia] = true;
    b_used[ib] = true;
  }
  // Move contracted axes to the back of a and the front of b, then matmul.
  std::vector<std::size_t> a_perm, b_perm, out_shape;
  for (std::size_t i = 0; i < a.rank(); ++i)
    if (!a_used[i]) {
      a_perm.push_back(i);
      out_shape.push_back(a.shape()[i]);
    }
  std::size_t k = 1;
  for (auto [ia, ib] : axes) {
    a_perm.push_back(ia);
    k *= a.shape()[ia];
  }
  for (auto [ia, ib] : axes) b_perm.push_back(ib);
  for (std::size_t i = 0; i < b.rank(); ++i)
    if (!b_used[i]) {
      b_perm.push_back(i);
      out_shape.push_back(b.shape()[i]);
    }
  const Tensor at = a.transposed(a_perm);
  const Tensor bt = b.transposed(b_perm);
  const std::size_t m = a.size() / k, n = b.size() / k;
  Tensor out(out_shape, std::vector<double>(m * n, 0.0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      const double av = at[i * k + t];
      if (av == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) out[i * n + j] += av * bt[t * n + j];
    }
  return out;
}

Tensor contract_within(const Tensor& a,
                       const std::vector<std::pair<std::size_t, std::size_t>>& axes) {
  std::vector<int> role(a.rank(), -1);  // -1 free, otherwise pair id
  for (std::size_t p = 0; p < axes.size(); ++p) {
    auto [i, j] = axes[p];
    if (i >= a.rank() || j >= a.rank() || i == j)
      throw ShapeError("contract_within: bad axis pair");
    if (role[i] != -1 || role[j] != -1) throw ShapeError("contract_within: axis reused");
    if (a.shape()[i] != a.shape()[j]) throw ShapeError("contract_within: extent mismatch");
    role[i] = static_cast<int>(p);
    role[j] = static_cast<int>(p);
  }
  std::vector<std::size_t> free_axes, out_shape, pair_dims(axes.size());
  for (std::size_t i = 0; i < a.rank(); ++i)
    if (role[i] == -1) {
      free_axes.push_back(i);
      out_shape.push_back(a.shape()[i]);
    }
  for (std::size_t p = 0; p < axes.size(); ++p) pair_dims[p] = a.shape()[axes[p].first];

  Tensor out(out_shape);
  const auto strides = row_major_strides(a.shape());
  const std::size_t n_out = out.size();
  std::size_t n_sum = 1;
  for (std::size_t d : pair_dims) n_sum *= d;

  std::vector<std::size_t> out_idx(free_axes.size(), 0), sum_idx(axes.size(), 0);
  for (std::size_t of = 0; of < n_out; ++of) {
    // decode output index
    std::size_t rest = of, base = 0;
    for (std::size_t i = 0; i < free_axes.size(); ++i) {
      std::size_t block = 1;
      for (std::size_t k = i + 1; k < free_axes.size(); ++k) block *= out_shape[k];
      out_idx[i] = rest / block;
      rest %= block;
      base += out_idx[i] * strides[free_axes[i]];
    }
    double acc = 0.0;
    std::fill(sum_idx.begin(), sum_idx.end(), 0);
    for (std::size_t s = 0; s < n_sum; ++s) {
      std::size_t off = base;
      for (std::size_t p = 0; p < axes.size(); ++p)
        off += sum_idx[p] * (strides[axes[p].first] + strides[axes[p].second]);
      acc += a[off];
      for (std::size_t p = axes.size(); p-- > 0;) {
        if (++sum_idx[p] < pair_dims[p]) break;
        sum_idx[p] = 0;
      }
    }
    out[of] = acc;
  }
  return out;
}

double cosine(const Tensor& a, const Tensor& b) {
  if (!a.same_shape(b)) throw ShapeError("cosine: shape mismatch");
  double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw ShapeError("cosine: zero vector");
  double c = a.dot(b) / (na * nb);
  return std::clamp(c, -1.0, 1.0);
}

double euclidean(const Tensor& a, const Tensor& b) {
  if (!a.same_shape(b)) throw ShapeError("euclidean: shape mismatch");
  return (a - b).norm();
}

double max_abs_diff(const Tensor& a, const Tensor& b) {
  if (!a.same_shape(b)) throw ShapeError("max_abs_diff: shape mismatch");
  return (a - b).max_abs();
}

bool approx_equal(const Tensor& a, const Tensor& b, double tol) {
  return a.same_shape(b) && max_abs_diff(a, b) <= tol;
}

}  // namespace lstar
