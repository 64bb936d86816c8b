#pragma once

// Adaptive Gauss-Kronrod (G7,K15) quadrature on a finite interval. The worst
// subinterval (largest error estimate) is bisected until the summed error
// estimate meets the requested absolute tolerance.

#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "sectorsec/errors.hpp"

namespace sectorsec {

struct QuadratureResult {
  double value;
  double abs_error;   // summed Kronrod error estimate
  int subdivisions;   // number of bisections performed
};

namespace detail {

// Kronrod-15 abscissae (positive half) and weights; Gauss-7 weights embed at
// the odd-indexed abscissae.
inline constexpr double kKronrodX[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double kKronrodW[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGaussW[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <typename F>
Segment kronrod15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - h * kKronrodX[i]);
    fv[14 - i] = f(c + h * kKronrodX[i]);
  }
  fv[7] = f(c);
  double resk = kKronrodW[7] * fv[7];
  double resg = kGaussW[3] * fv[7];
  for (int i = 0; i < 7; ++i) {
    resk += kKronrodW[i] * (fv[i] + fv[14 - i]);
    if (i % 2 == 1) resg += kGaussW[i / 2] * (fv[i] + fv[14 - i]);
  }
  // QUADPACK-style error estimate: scale |K15-G7| by the integrand's deviation
  // from its mean so smooth integrands are not flagged by pure cancellation.
  const double reskh = 0.5 * resk;
  double resasc = kKronrodW[7] * std::abs(fv[7] - reskh);
  for (int i = 0; i < 7; ++i)
    resasc += kKronrodW[i] * (std::abs(fv[i] - reskh) + std::abs(fv[14 - i] - reskh));
  resasc *= std::abs(h);
  double err = std::abs(resk - resg) * std::abs(h);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double value = resk * h;
  if (!std::isfinite(value) || !std::isfinite(err))
    throw NumericError("quadrature: non-finite integrand evaluation");
  return {a, b, value, err};
}

}  // namespace detail

template <typename F>
QuadratureResult integrate(F f, double a, double b, double abs_tol, int max_subdivisions = 500) {
  if (!(abs_tol > 0.0)) throw std::domain_error("integrate: abs_tol must be > 0");
  std::priority_queue<detail::Segment> queue;
  queue.push(detail::kronrod15(f, a, b));
  double total_value = queue.top().value;
  double total_error = queue.top().error;
  int splits = 0;
  while (total_error > abs_tol && splits < max_subdivisions) {
    const detail::Segment worst = queue.top();
    queue.pop();
    total_value -= worst.value;
    total_error -= worst.error;
    const double mid = 0.5 * (worst.a + worst.b);
    for (const auto& seg : {detail::kronrod15(f, worst.a, mid), detail::kronrod15(f, mid, worst.b)}) {
      total_value += seg.value;
      total_error += seg.error;
      queue.push(seg);
    }
    ++splits;
  }
  if (total_error > abs_tol)
    throw NumericError("quadrature: tolerance " + std::to_string(abs_tol) +
                       " not reached; achieved error " + std::to_string(total_error) + " after " +
                       std::to_string(splits) + " subdivisions");
  // Re-sum from the segment list so the result does not carry the incremental
  // add/subtract rounding of the refinement loop.
  total_value = 0.0;
  total_error = 0.0;
  while (!queue.empty()) {
    total_value += queue.top().value;
    total_error += queue.top().error;
    queue.pop();
  }
  return {total_value, total_error, splits};
}

}  // namespace sectorsec
