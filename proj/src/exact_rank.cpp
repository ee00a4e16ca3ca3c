#include "aopc/exact_rank.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <vector>

#include "aopc/errors.hpp"

namespace aopc::exact {

namespace {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

// Exact value of a finite double: mantissa * 2^exponent.
Rational toRational(double x) {
  if (!std::isfinite(x)) throw InputError("non-finite coordinate");
  if (x == 0.0) return Rational(0);
  int exponent = 0;
  const double frac = std::frexp(x, &exponent);
  const auto mantissa = static_cast<long long>(std::ldexp(frac, 53));
  exponent -= 53;
  Rational r{Integer(mantissa)};
  if (exponent > 0) r *= Rational(Integer(1) << exponent);
  if (exponent < 0) r /= Rational(Integer(1) << -exponent);
  return r;
}

std::vector<Rational> coordinates(const ModelPoint& p) {
  std::vector<Rational> v;
  v.reserve(p.w.size() + 1);
  for (double w : p.w) v.push_back(toRational(w));
  v.push_back(toRational(p.z));
  return v;
}

}  // namespace

int affineDimension(std::span<const ModelPoint> points) {
  if (points.empty()) throw InputError("affine dimension of an empty point set");
  const auto origin = coordinates(points.front());
  const std::size_t dim = origin.size();

  // Reduced row echelon basis: pivot column of basis[k] is pivots[k] with
  // coefficient 1, and that column is zero in every other basis row.
  std::vector<std::vector<Rational>> basis;
  std::vector<std::size_t> pivots;

  for (std::size_t k = 1; k < points.size() && basis.size() < dim; ++k) {
    if (points[k].w.size() + 1 != dim) throw InputError("points of different dimension");
    auto v = coordinates(points[k]);
    for (std::size_t c = 0; c < dim; ++c) v[c] -= origin[c];
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const Rational f = v[pivots[b]];
      if (f == 0) continue;
      for (std::size_t c = 0; c < dim; ++c)
        if (basis[b][c] != 0) v[c] -= f * basis[b][c];
    }
    std::size_t piv = 0;
    while (piv < dim && v[piv] == 0) ++piv;
    if (piv == dim) continue;
    const Rational lead = v[piv];
    for (auto& x : v) x /= lead;
    for (auto& row : basis) {
      const Rational f = row[piv];
      if (f == 0) continue;
      for (std::size_t c = 0; c < dim; ++c)
        if (v[c] != 0) row[c] -= f * v[c];
    }
    basis.push_back(std::move(v));
    pivots.push_back(piv);
  }
  return static_cast<int>(basis.size());
}

}  // namespace aopc::exact
