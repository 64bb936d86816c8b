#pragma once

// Empirical SOP estimation sampling the exact (un-approximated) SNR
// expressions: per-relay gamma = g_s*g_r/(g_s+g_r+1) including the "+1", summed
// over the beamforming relays; likewise over the colluding leaks. Serves as the
// ground-truth oracle for every analytic approximation in the library.

#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "sectorsec/errors.hpp"
#include "sectorsec/network_model.hpp"
#include "sectorsec/random.hpp"
#include "sectorsec/secrecy.hpp"

namespace sectorsec {

enum class CorrelationMode { Independent, SharedDraws };

struct TrialOutcome {
  double gamma_d;
  double gamma_q;
  double secrecy_capacity;
  bool outage;  // secrecy_capacity < rate_threshold
};

struct McEstimate {
  std::uint64_t trials;
  std::uint64_t outages;
  double p_hat;
  double ci_low;   // 95% Wilson interval
  double ci_high;
};

inline McEstimate wilson_estimate(std::uint64_t trials, std::uint64_t outages) {
  if (trials == 0) throw ConfigError("wilson_estimate: trials must be >= 1", {"trials"});
  const double z = 1.959963984540054;  // two-sided 95% normal quantile
  const double n = static_cast<double>(trials);
  const double k = static_cast<double>(outages);
  const double p = k / n;
  const double denom = n + z * z;
  const double center = (k + 0.5 * z * z) / denom;
  const double half = z * std::sqrt(k * (n - k) / n + 0.25 * z * z) / denom;
  const double lo = std::max(0.0, std::min(center - half, p));
  const double hi = std::min(1.0, std::max(center + half, p));
  return {trials, outages, p, lo, hi};
}

// One trial. Draw order is part of the determinism contract:
//   per relay m = 0..M-1: source link, then relay link;
//   then the adversary draws (passive: one source link; colluding: per leak
//   u = 0..U1-1 a source link unless shared, then the leak link);
//   then, in Hypothesis mode only, one uniform for the sector guess.
// SharedDraws reuses relay m's source-side SNR for leak m (and for the passive
// eavesdropper, relay 0's); leaks beyond M draw fresh source links.
inline TrialOutcome run_trial(const ScenarioConfig& config, RandomStream& stream,
                              CorrelationMode mode = CorrelationMode::Independent) {
  const double rho = db_to_linear(config.snr_db);
  const LogNormalParams link_src =
      link_snr_dist(config.channel.mu_s, config.channel.sigma_s, rho);
  const LogNormalParams link_rel =
      link_snr_dist(config.channel.mu_k, config.channel.sigma_k, rho);
  const bool shared = mode == CorrelationMode::SharedDraws;
  const bool colluding = config.adversary == Adversary::Colluding;

  const auto exact_ratio = [](double a, double b) { return a * b / (a + b + 1.0); };

  double gamma_d = 0.0;
  double gamma_q = 0.0;
  double first_src = 0.0;
  for (int m = 0; m < config.m_right; ++m) {
    const double g_s = sample(link_src, stream);
    const double g_r = sample(link_rel, stream);
    if (m == 0) first_src = g_s;
    gamma_d += exact_ratio(g_s, g_r);
    if (shared && colluding && m < config.u1_colluding)
      gamma_q += exact_ratio(g_s, sample(link_rel, stream));
  }
  if (colluding) {
    for (int u = shared ? config.m_right : 0; u < config.u1_colluding; ++u) {
      const double g_s = sample(link_src, stream);  // sequenced: source before leak
      gamma_q += exact_ratio(g_s, sample(link_rel, stream));
    }
  } else {
    gamma_q = shared ? first_src : sample(link_src, stream);
  }

  double cs;
  if (config.capacity_mode == CapacityMode::WorstCase) {
    cs = secrecy_capacity_worst(gamma_d, gamma_q, config.n_sectors);
  } else {
    const bool in_right = stream.next_uniform() < 1.0 / static_cast<double>(config.n_sectors);
    cs = std::max(0.0, capacity_destination(gamma_d) - capacity_eavesdropper(gamma_q, in_right));
  }
  return {gamma_d, gamma_q, cs, cs < config.rate_threshold};
}

namespace detail {

inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SECTORSEC_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

}  // namespace detail

// Estimate the SOP over `trials` independent trials. Trial i draws from
// RandomStream(seed, i), so the outage total — hence the whole estimate —
// is identical for every worker count and schedule.
inline McEstimate estimate_sop(const ScenarioConfig& config, std::uint64_t trials,
                               std::uint64_t seed,
                               CorrelationMode mode = CorrelationMode::Independent,
                               unsigned threads = 0) {
  require_valid(config);
  if (trials == 0) throw ConfigError("estimate_sop: trials must be >= 1", {"trials"});

  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(detail::resolve_threads(threads), trials));
  std::vector<std::uint64_t> counts(workers, 0);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::uint64_t chunk = trials / workers;
  const std::uint64_t rem = trials % workers;
  std::uint64_t begin = 0;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t end = begin + chunk + (w < rem ? 1 : 0);
    pool.emplace_back([&, w, begin, end] {
      std::uint64_t local = 0;
      for (std::uint64_t i = begin; i < end; ++i) {
        RandomStream stream(seed, i);
        if (run_trial(config, stream, mode).outage) ++local;
      }
      counts[w] = local;
    });
    begin = end;
  }
  for (auto& t : pool) t.join();
  std::uint64_t outages = 0;
  for (std::uint64_t c : counts) outages += c;
  return wilson_estimate(trials, outages);
}

}  // namespace sectorsec
