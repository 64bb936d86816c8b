#pragma once

// Log-normal parameter algebra: pdf/cdf, closure under scaling and powers,
// Fenton-Wilkinson moment-matched sums, Holtzman three-point expectations,
// and sampling. Parameters are carried as (mu, sigma) of the underlying
// normal; formulas stated in sigma^2 convert at the boundary.

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "sectorsec/errors.hpp"
#include "sectorsec/random.hpp"

namespace sectorsec {

inline constexpr double kInvSqrt2 = 0.7071067811865475244;
inline constexpr double kInvSqrt2Pi = 0.3989422804014326779;
inline constexpr double kSqrt3 = 1.7320508075688772935;

inline double std_normal_cdf(double x) {
  if (!std::isfinite(x)) throw std::domain_error("std_normal_cdf: non-finite argument");
  return 0.5 * std::erfc(-x * kInvSqrt2);
}

class LogNormalParams {
 public:
  LogNormalParams(double mu, double sigma) : mu_(mu), sigma_(sigma) {
    if (!std::isfinite(mu) || !std::isfinite(sigma) || sigma <= 0.0)
      throw std::domain_error("LogNormalParams: require finite mu and sigma > 0");
  }

  double mu() const noexcept { return mu_; }
  double sigma() const noexcept { return sigma_; }

 private:
  double mu_;
  double sigma_;
};

inline double lognormal_pdf(const LogNormalParams& p, double x) {
  if (!(x > 0.0)) throw std::domain_error("lognormal_pdf: x must be > 0");
  const double z = (std::log(x) - p.mu()) / p.sigma();
  return kInvSqrt2Pi / (x * p.sigma()) * std::exp(-0.5 * z * z);
}

inline double lognormal_cdf(const LogNormalParams& p, double x) {
  if (x < 0.0) throw std::domain_error("lognormal_cdf: x must be >= 0");
  if (x == 0.0) return 0.0;
  return std_normal_cdf((std::log(x) - p.mu()) / p.sigma());
}

// aX for a > 0: shifts the log-location, leaves the log-scale.
inline LogNormalParams scale(const LogNormalParams& p, double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::domain_error("scale: a must be finite and > 0");
  return {p.mu() + std::log(a), p.sigma()};
}

// X^a for a != 0: scales both parameters; sigma stays positive via |a|.
inline LogNormalParams power(const LogNormalParams& p, double a) {
  if (a == 0.0 || !std::isfinite(a)) throw std::domain_error("power: a must be finite and != 0");
  return {a * p.mu(), std::abs(a) * p.sigma()};
}

// Fenton-Wilkinson fit of a sum of independent log-normals: the unique
// log-normal matching the sum's exact mean and variance. Evaluated in log
// space (logsumexp / log1p / expm1) so widely spread components stay stable.
inline LogNormalParams fenton_sum(std::span<const LogNormalParams> components) {
  if (components.empty()) throw std::domain_error("fenton_sum: empty component list");

  auto logsumexp = [](const std::vector<double>& v) {
    double hi = v[0];
    for (double t : v)
      if (t > hi) hi = t;
    double s = 0.0;
    for (double t : v) s += std::exp(t - hi);
    return hi + std::log(s);
  };

  std::vector<double> log_means, log_vars;
  log_means.reserve(components.size());
  log_vars.reserve(components.size());
  for (const auto& c : components) {
    const double s2 = c.sigma() * c.sigma();
    log_means.push_back(c.mu() + 0.5 * s2);
    log_vars.push_back(2.0 * c.mu() + s2 + std::log(std::expm1(s2)));
  }
  const double log_mean_sum = logsumexp(log_means);
  const double log_var_sum = logsumexp(log_vars);
  const double sigma2 = std::log1p(std::exp(log_var_sum - 2.0 * log_mean_sum));
  return {log_mean_sum - 0.5 * sigma2, std::sqrt(sigma2)};
}

inline LogNormalParams fenton_sum(std::initializer_list<LogNormalParams> components) {
  return fenton_sum(std::span<const LogNormalParams>(components.begin(), components.size()));
}

// Three-point rule for E[psi(beta)], beta ~ N(mu, sigma^2): evaluations at mu
// and mu +/- sqrt(3) sigma.
struct HoltzmanWeights {
  double w_center;
  double w_plus;
  double w_minus;

  static constexpr HoltzmanWeights standard() noexcept {
    return {2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0};
  }
  // The third weight as printed in the source equation; sums to 2/3 and is kept
  // only so the printed formula can be reproduced verbatim.
  static constexpr HoltzmanWeights paper_printed() noexcept {
    return {2.0 / 3.0, 1.0 / 6.0, -1.0 / 6.0};
  }
};

template <typename F>
double holtzman_expectation(F&& psi, double mu, double sigma, const HoltzmanWeights& w) {
  if (!(sigma > 0.0)) throw std::domain_error("holtzman_expectation: sigma must be > 0");
  const double step = kSqrt3 * sigma;
  const double pc = psi(mu);
  const double pp = psi(mu + step);
  const double pm = psi(mu - step);
  if (!std::isfinite(pc) || !std::isfinite(pp) || !std::isfinite(pm))
    throw NumericError("holtzman_expectation: non-finite psi evaluation");
  return w.w_center * pc + w.w_plus * pp + w.w_minus * pm;
}

inline double sample(const LogNormalParams& p, RandomStream& stream) {
  return std::exp(p.mu() + p.sigma() * stream.next_normal());
}

}  // namespace sectorsec
