#pragma once

#include "lrc/common.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <type_traits>

namespace lrc {

// Two working precisions above double. Most branches are refined and checked in
// long double; badly conditioned ones (‖H‖ up to ~1e7) cancel too much for 64
// mantissa bits and use 113-bit quad.
using ComplexX = std::complex<long double>;
using Quad = boost::multiprecision::cpp_bin_float_quad;
using ComplexQ = boost::multiprecision::cpp_complex_quad;

template <typename C>
using Mat2t = Eigen::Matrix<C, 2, 2>;
template <typename C>
using Vec2t = Eigen::Matrix<C, 2, 1>;

using Mat2x = Mat2t<ComplexX>;
using Mat2q = Mat2t<ComplexQ>;

/// Real component type of ComplexX or ComplexQ.
template <typename C>
struct RealOf;
template <>
struct RealOf<ComplexX> {
  using type = long double;
};
template <>
struct RealOf<ComplexQ> {
  using type = Quad;
};
template <typename C>
using real_t = typename RealOf<C>::type;

/// Conversion between any two of Complex, ComplexX and ComplexQ.
template <typename To, typename From>
To convert(const From& z) {
  if constexpr (std::is_same_v<To, Complex>) {
    return Complex(static_cast<double>(z.real()), static_cast<double>(z.imag()));
  } else {
    using R = real_t<To>;
    return To(static_cast<R>(z.real()), static_cast<R>(z.imag()));
  }
}

template <typename To, typename Derived>
Mat2t<To> convert_matrix(const Eigen::MatrixBase<Derived>& m) {
  Mat2t<To> out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out(i, j) = convert<To>(m(i, j));
  }
  return out;
}

template <typename C>
real_t<C> magnitude(const C& z) {
  using std::abs;
  return abs(z);
}

template <typename C>
real_t<C> max_magnitude(const Mat2t<C>& m) {
  real_t<C> mx = 0;
  for (int i = 0; i < 4; ++i) {
    const real_t<C> v = magnitude(m(i / 2, i % 2));
    if (v > mx) mx = v;
  }
  return mx;
}

}  // namespace lrc
