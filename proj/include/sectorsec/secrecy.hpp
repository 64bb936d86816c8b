#pragma once

// Capacity formulas and the secrecy outage probability (SOP): a three-point
// closed form over the fitted adversary distribution, and a high-accuracy
// adaptive-quadrature reference for the same integral. Capacities are in
// bits/s/Hz (base-2 logarithms throughout).

#include <algorithm>
#include <cmath>

#include "sectorsec/errors.hpp"
#include "sectorsec/lognormal.hpp"
#include "sectorsec/quadrature.hpp"

namespace sectorsec {

inline constexpr double kLn2 = 0.6931471805599453094;

struct SopInputs {
  LogNormalParams gamma_d;  // fitted destination SNR
  LogNormalParams gamma_q;  // fitted adversary SNR
  int n_sectors;            // N >= 1
  double rate_threshold;    // R >= 0, bits/s/Hz
};

namespace detail {

inline void check_sop_inputs(const SopInputs& in) {
  if (in.n_sectors < 1) throw std::domain_error("SopInputs: n_sectors must be >= 1");
  if (!(in.rate_threshold >= 0.0) || !std::isfinite(in.rate_threshold))
    throw std::domain_error("SopInputs: rate_threshold must be finite and >= 0");
}

// ln(2^{2R} (1+e^beta)^{1/N} - 1), or -infinity (reported via the bool) when
// the argument is at/below the support boundary (possible only for R = 0).
// Evaluated in log space so large beta or large R cannot overflow.
inline bool log_outage_threshold(double beta, double rate, int n, double& out) {
  const double softplus = std::max(beta, 0.0) + std::log1p(std::exp(-std::abs(beta)));
  const double s = 2.0 * rate * kLn2 + softplus / static_cast<double>(n);
  if (s <= 0.0) return false;               // threshold <= 0: outage impossible
  out = s > 36.0 ? s : std::log(std::expm1(s));
  return true;
}

}  // namespace detail

inline double capacity_destination(double gamma_d_value) {
  if (gamma_d_value < 0.0) throw std::domain_error("capacity_destination: negative SNR");
  return 0.5 * std::log2(1.0 + gamma_d_value);
}

// Adversary capacity under the two hypotheses: full capacity when it holds the
// right sector's signal, zero otherwise.
inline double capacity_eavesdropper(double gamma_value, bool in_right_sector) {
  return in_right_sector ? 0.5 * std::log2(1.0 + gamma_value) : 0.0;
}

// Worst case: the adversary is assumed to decode whenever it guesses the right
// sector, which discounts its capacity by 1/N.
inline double secrecy_capacity_worst(double gamma_d_value, double gamma_q_value, int n_sectors) {
  const double cd = 0.5 * std::log2(1.0 + gamma_d_value);
  const double cq = 0.5 * std::log2(1.0 + gamma_q_value) / static_cast<double>(n_sectors);
  return std::max(0.0, cd - cq);
}

// Pr[C_d < R] with no adversary term: the best-case/limit curve.
inline double sop_no_eavesdropper(const LogNormalParams& gamma_d, double rate_threshold) {
  if (!(rate_threshold >= 0.0) || !std::isfinite(rate_threshold))
    throw std::domain_error("sop_no_eavesdropper: rate_threshold must be finite and >= 0");
  const double s = 2.0 * rate_threshold * kLn2;
  if (s <= 0.0) return 0.0;
  const double lt = s > 36.0 ? s : std::log(std::expm1(s));
  return std_normal_cdf((lt - gamma_d.mu()) / gamma_d.sigma());
}

// Outage probability conditional on the adversary's log-SNR beta.
inline double sop_conditional(const SopInputs& in, double beta) {
  double lt;
  if (!detail::log_outage_threshold(beta, in.rate_threshold, in.n_sectors, lt)) return 0.0;
  return std_normal_cdf((lt - in.gamma_d.mu()) / in.gamma_d.sigma());
}

// Three-point closed form: the conditional outage averaged over beta by the
// Holtzman rule, clamped to [0,1] (the printed-weight preset can leave range).
inline double sop_closed_form(const SopInputs& in,
                              const HoltzmanWeights& weights = HoltzmanWeights::standard()) {
  detail::check_sop_inputs(in);
  const double v = holtzman_expectation([&](double beta) { return sop_conditional(in, beta); },
                                        in.gamma_q.mu(), in.gamma_q.sigma(), weights);
  return std::clamp(v, 0.0, 1.0);
}

// Reference value: the conditional outage integrated exactly (to ~1e-10
// absolute) against the Gaussian density of beta, truncated at +/-10 sigma.
inline double sop_exact_integral(const SopInputs& in) {
  detail::check_sop_inputs(in);
  const auto integrand = [&](double u) {
    return sop_conditional(in, in.gamma_q.mu() + in.gamma_q.sigma() * u) * kInvSqrt2Pi *
           std::exp(-0.5 * u * u);
  };
  const QuadratureResult r = integrate(integrand, -10.0, 10.0, 1e-10, 2000);
  return std::clamp(r.value, 0.0, 1.0);
}

}  // namespace sectorsec
