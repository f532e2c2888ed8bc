#include "lstar/fock.hpp"

#include <bit>
#include <stdexcept>

namespace lstar {

FockVec::FockVec(std::size_t n) : generators(n), coeffs({fock_dim(n)}) {}

FockVec::FockVec(std::size_t n, Tensor c) : generators(n), coeffs(std::move(c)) {
  if (coeffs.rank() != 1 || coeffs.size() != fock_dim(n))
    throw ShapeError("fock vector over " + std::to_string(n) +
                     " generators needs 2^n coefficients");
}

FockVec FockVec::unit_scalar(std::size_t n) { return monomial(n, 0); }

FockVec FockVec::monomial(std::size_t n, std::uint64_t mask, double c) {
  FockVec v(n);
  if (mask >= fock_dim(n)) throw ShapeError("monomial mask out of range");
  v.coeffs[mask] = c;
  return v;
}

FockVec FockVec::embed(const Tensor& v) {
  if (v.rank() != 1) throw ShapeError("embed expects a vector");
  FockVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out.coeffs[std::uint64_t(1) << i] = v[i];
  return out;
}

FockVec FockVec::operator+(const FockVec& o) const {
  if (generators != o.generators) throw ShapeError("fock add: generator mismatch");
  return FockVec(generators, coeffs + o.coeffs);
}

FockVec FockVec::scaled(double a) const { return FockVec(generators, coeffs.scaled(a)); }

int FockVec::homogeneous_layer() const {
  int layer = -1;
  for (std::size_t m = 0; m < dim(); ++m) {
    if (coeffs[m] == 0.0) continue;
    int l = std::popcount(static_cast<std::uint64_t>(m));
    if (layer == -1) layer = l;
    else if (layer != l) return -1;
  }
  return layer < 0 ? 0 : layer;
}

std::uint64_t fock_dim(std::size_t n) {
  if (n == 0 || n >= 63) throw std::invalid_argument("generator count out of range");
  return std::uint64_t(1) << n;
}

std::vector<std::uint64_t> fock_layer_dims(std::size_t n) {
  std::vector<std::uint64_t> dims(n + 1, 0);
  for (std::uint64_t m = 0; m < fock_dim(n); ++m)
    ++dims[std::popcount(m)];
  return dims;
}

int wedge_sign(std::uint64_t a, std::uint64_t b) {
  // inversions: generators of a that exceed a generator of b
  int inv = 0;
  for (std::uint64_t bb = b; bb; bb &= bb - 1) {
    int j = std::countr_zero(bb);
    std::uint64_t higher = a >> (j + 1);
    inv += std::popcount(higher);
  }
  return inv % 2 == 0 ? 1 : -1;
}

FockVec wedge_product(const FockVec& x, const FockVec& y) {
  if (x.generators != y.generators)
    throw ShapeError("wedge: generator dimension mismatch");
  FockVec out(x.generators);
  for (std::uint64_t s = 0; s < x.dim(); ++s) {
    if (x.coeffs[s] == 0.0) continue;
    for (std::uint64_t t = 0; t < y.dim(); ++t) {
      if (y.coeffs[t] == 0.0 || (s & t)) continue;
      out.coeffs[s | t] += wedge_sign(s, t) * x.coeffs[s] * y.coeffs[t];
    }
  }
  return out;
}

Tensor fock_eps(const FockVec& x) {
  Tensor v({x.generators});
  for (std::size_t i = 0; i < x.generators; ++i)
    v[i] = x.coeffs[std::uint64_t(1) << i];
  return v;
}

Tensor fock_group_delta(const FockVec& x) {
  const std::size_t d = x.dim();
  Tensor out({d, d});
  for (std::size_t m = 0; m < d; ++m) out[m * d + m] = x.coeffs[m];
  return out;
}

double fock_group_counit(const FockVec& x) { return x.coeffs.sum(); }

Tensor fock_multiplication_tensor(std::size_t n) {
  const std::size_t d = fock_dim(n);
  Tensor mul({d, d, d});
  for (std::uint64_t s = 0; s < d; ++s)
    for (std::uint64_t t = 0; t < d; ++t) {
      if (s & t) continue;
      mul.at({s | t, s, t}) = wedge_sign(s, t);
    }
  return mul;
}

Tensor fock_dual_codelta(const FockVec& x) {
  if (x.generators > 3)
    throw std::invalid_argument(
        "dual comultiplication is guarded to 3 generators (the multiplication "
        "matrix has (2^n)^2 x 2^n entries)");
  const std::size_t d = x.dim();
  Tensor out({d, d});
  // delta(x)[s,t] = sum_r mul[r, s, t] * x[r]; mul[r,s,t] is sign(s,t) at r=s|t
  for (std::uint64_t s = 0; s < d; ++s)
    for (std::uint64_t t = 0; t < d; ++t) {
      if (s & t) continue;
      out.at({s, t}) = wedge_sign(s, t) * x.coeffs[s | t];
    }
  return out;
}

}  // namespace lstar
