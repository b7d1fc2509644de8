#pragma once

// Second-order forward-mode jets. A Jet<N> carries a value together with its
// gradient and full (symmetric) Hessian with respect to N independent
// variables. Expressions written generically over the scalar type evaluate to
// exact derivatives when instantiated with jets.

#include <array>
#include <cmath>
#include <cstddef>

namespace wpe {

template <std::size_t N>
struct Jet {
  double val = 0.0;
  std::array<double, N> d{};
  std::array<double, N * N> dd{};

  constexpr Jet() = default;
  constexpr Jet(double v) : val(v) {}  // NOLINT: constants promote implicitly

  static constexpr Jet variable(double v, std::size_t index) {
    Jet j(v);
    j.d[index] = 1.0;
    return j;
  }

  constexpr double hess(std::size_t i, std::size_t k) const { return dd[i * N + k]; }
};

using Jet1 = Jet<1>;
using Jet2 = Jet<2>;

// Applies a scalar function with known value/first/second derivative at x.val.
template <std::size_t N>
constexpr Jet<N> chain(const Jet<N>& x, double f0, double f1, double f2) {
  Jet<N> r(f0);
  for (std::size_t i = 0; i < N; ++i) r.d[i] = f1 * x.d[i];
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t k = 0; k < N; ++k)
      r.dd[i * N + k] = f2 * x.d[i] * x.d[k] + f1 * x.dd[i * N + k];
  return r;
}

template <std::size_t N>
constexpr Jet<N> operator-(const Jet<N>& a) {
  Jet<N> r(-a.val);
  for (std::size_t i = 0; i < N; ++i) r.d[i] = -a.d[i];
  for (std::size_t i = 0; i < N * N; ++i) r.dd[i] = -a.dd[i];
  return r;
}

template <std::size_t N>
constexpr Jet<N> operator+(const Jet<N>& a, const Jet<N>& b) {
  Jet<N> r(a.val + b.val);
  for (std::size_t i = 0; i < N; ++i) r.d[i] = a.d[i] + b.d[i];
  for (std::size_t i = 0; i < N * N; ++i) r.dd[i] = a.dd[i] + b.dd[i];
  return r;
}

template <std::size_t N>
constexpr Jet<N> operator-(const Jet<N>& a, const Jet<N>& b) {
  return a + (-b);
}

template <std::size_t N>
constexpr Jet<N> operator*(const Jet<N>& a, const Jet<N>& b) {
  Jet<N> r(a.val * b.val);
  for (std::size_t i = 0; i < N; ++i) r.d[i] = a.d[i] * b.val + a.val * b.d[i];
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t k = 0; k < N; ++k) {
      const std::size_t ik = i * N + k;
      r.dd[ik] = a.dd[ik] * b.val + a.d[i] * b.d[k] + a.d[k] * b.d[i] + a.val * b.dd[ik];
    }
  return r;
}

template <std::size_t N>
constexpr Jet<N> operator/(const Jet<N>& a, const Jet<N>& b) {
  const double inv = 1.0 / b.val;
  return a * chain(b, inv, -inv * inv, 2.0 * inv * inv * inv);
}

template <std::size_t N> constexpr Jet<N> operator+(const Jet<N>& a, double b) { return a + Jet<N>(b); }
template <std::size_t N> constexpr Jet<N> operator+(double a, const Jet<N>& b) { return Jet<N>(a) + b; }
template <std::size_t N> constexpr Jet<N> operator-(const Jet<N>& a, double b) { return a - Jet<N>(b); }
template <std::size_t N> constexpr Jet<N> operator-(double a, const Jet<N>& b) { return Jet<N>(a) - b; }
template <std::size_t N> constexpr Jet<N> operator*(const Jet<N>& a, double b) { return a * Jet<N>(b); }
template <std::size_t N> constexpr Jet<N> operator*(double a, const Jet<N>& b) { return Jet<N>(a) * b; }
template <std::size_t N> constexpr Jet<N> operator/(const Jet<N>& a, double b) { return a * Jet<N>(1.0 / b); }
template <std::size_t N> constexpr Jet<N> operator/(double a, const Jet<N>& b) { return Jet<N>(a) / b; }

template <std::size_t N>
Jet<N> sqrt(const Jet<N>& x) {
  const double s = std::sqrt(x.val);
  return chain(x, s, 0.5 / s, -0.25 / (s * x.val));
}

template <std::size_t N>
Jet<N> exp(const Jet<N>& x) {
  const double e = std::exp(x.val);
  return chain(x, e, e, e);
}

template <std::size_t N>
Jet<N> log(const Jet<N>& x) {
  return chain(x, std::log(x.val), 1.0 / x.val, -1.0 / (x.val * x.val));
}

template <std::size_t N>
Jet<N> cosh(const Jet<N>& x) {
  const double c = std::cosh(x.val);
  return chain(x, c, std::sinh(x.val), c);
}

template <std::size_t N>
Jet<N> sinh(const Jet<N>& x) {
  const double s = std::sinh(x.val);
  return chain(x, s, std::cosh(x.val), s);
}

template <std::size_t N>
Jet<N> sin(const Jet<N>& x) {
  const double s = std::sin(x.val);
  return chain(x, s, std::cos(x.val), -s);
}

template <std::size_t N>
Jet<N> cos(const Jet<N>& x) {
  const double c = std::cos(x.val);
  return chain(x, c, -std::sin(x.val), -c);
}

template <std::size_t N>
Jet<N> pow(const Jet<N>& x, double e) {
  const double p = std::pow(x.val, e - 2.0);
  return chain(x, p * x.val * x.val, e * p * x.val, e * (e - 1.0) * p);
}

// Composes a 1D jet (outer function evaluated at inner.val) with an N-variable inner jet.
template <std::size_t N>
constexpr Jet<N> compose(const Jet1& outer, const Jet<N>& inner) {
  return chain(inner, outer.val, outer.d[0], outer.dd[0]);
}

}  // namespace wpe
