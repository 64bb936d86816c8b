#pragma once

// Maps a scenario configuration to the fitted log-normal distributions of all
// SNRs in the model: per-link SNRs, the per-relay end-to-end SNR (high-SNR
// harmonic form), the beamformed destination sum, and the adversary SNR
// (single leak link or colluding sum).

#include <cmath>
#include <string>
#include <vector>

#include "sectorsec/errors.hpp"
#include "sectorsec/lognormal.hpp"

namespace sectorsec {

struct ChannelStats {
  double mu_s;     // source-link log-location
  double sigma_s;  // source-link log-scale (> 0)
  double mu_k;     // relay-link log-location
  double sigma_k;  // relay-link log-scale (> 0)
};

enum class Adversary { Passive, Colluding };
enum class CapacityMode { WorstCase, Hypothesis };

struct ScenarioConfig {
  ChannelStats channel{};
  int n_sectors = 1;       // N >= 1
  int m_right = 1;         // M >= 1, relays beamforming to the destination
  int u1_colluding = 0;    // U1 >= 0, colluding relays leaking to the wiretapper
  double rate_threshold = 0.0;  // R >= 0, bits/s/Hz
  double snr_db = 0.0;          // common transmit SNR rho in dB (noise power 1)
  Adversary adversary = Adversary::Passive;
  CapacityMode capacity_mode = CapacityMode::WorstCase;
};

// Field names of everything wrong with a config; empty means valid.
inline std::vector<std::string> validate(const ScenarioConfig& c) {
  std::vector<std::string> bad;
  if (!std::isfinite(c.channel.mu_s)) bad.push_back("mu_s");
  if (!std::isfinite(c.channel.sigma_s) || c.channel.sigma_s <= 0.0) bad.push_back("sigma_s");
  if (!std::isfinite(c.channel.mu_k)) bad.push_back("mu_k");
  if (!std::isfinite(c.channel.sigma_k) || c.channel.sigma_k <= 0.0) bad.push_back("sigma_k");
  if (c.n_sectors < 1) bad.push_back("n_sectors");
  if (c.m_right < 1) bad.push_back("m_right");
  if (c.u1_colluding < 0 || (c.adversary == Adversary::Colluding && c.u1_colluding < 1))
    bad.push_back("u1_colluding");
  if (!std::isfinite(c.rate_threshold) || c.rate_threshold < 0.0) bad.push_back("rate_threshold");
  if (!std::isfinite(c.snr_db)) bad.push_back("snr_db");
  return bad;
}

inline void require_valid(const ScenarioConfig& c) {
  auto bad = validate(c);
  if (!bad.empty()) {
    std::string msg = "invalid scenario config, offending fields:";
    for (const auto& f : bad) msg += " " + f;
    throw ConfigError(msg, bad);
  }
}

inline double db_to_linear(double snr_db) { return std::pow(10.0, snr_db / 10.0); }

struct DerivedDistributions {
  LogNormalParams gamma_link_src;    // any source->relay (or source->eavesdropper) link SNR
  LogNormalParams gamma_link_relay;  // any relay->destination (or relay->wiretapper) link SNR
  LogNormalParams gamma_m;           // per-relay end-to-end SNR (high-SNR fit)
  LogNormalParams gamma_d;           // destination SNR (sum over the M beamforming relays)
  LogNormalParams gamma_q;           // adversary SNR (single link or colluding sum)
};

// rho*|h|^2 for h ~ lnN(mu_v, sigma_v^2): square the gain, then scale by rho.
inline LogNormalParams link_snr_dist(double mu_v, double sigma_v, double rho_linear) {
  if (!(rho_linear > 0.0) || !std::isfinite(rho_linear))
    throw std::domain_error("link_snr_dist: rho must be finite and > 0");
  return scale(power(LogNormalParams(mu_v, sigma_v), 2.0), rho_linear);
}

// High-SNR per-relay SNR: gamma_m ~ 1/(1/gamma_sm + 1/gamma_md), fitted by
// reciprocal -> Fenton sum -> reciprocal.
inline LogNormalParams relay_snr_dist(const LogNormalParams& g_sm, const LogNormalParams& g_md) {
  const LogNormalParams z = fenton_sum({power(g_sm, -1.0), power(g_md, -1.0)});
  return power(z, -1.0);
}

// Beamformed destination SNR: Fenton sum of m_right i.i.d. copies of gamma_m,
// written in the specialized identical-component form (equal to the general
// Fenton path to rounding).
inline LogNormalParams destination_snr_dist(const LogNormalParams& g_m, int m_right) {
  if (m_right < 1) throw std::domain_error("destination_snr_dist: m_right must be >= 1");
  const double s2 = g_m.sigma() * g_m.sigma();
  const double sigma_d2 = std::log1p(std::expm1(s2) / static_cast<double>(m_right));
  const double mu_d = std::log(static_cast<double>(m_right)) + g_m.mu() + 0.5 * (s2 - sigma_d2);
  return {mu_d, std::sqrt(sigma_d2)};
}

// Colluding wiretapper SNR: same diversity-combining form over the U1 leaks.
inline LogNormalParams wiretapper_snr_dist(const LogNormalParams& g_m, int u1) {
  if (u1 < 1) throw std::domain_error("wiretapper_snr_dist: u1 must be >= 1");
  return destination_snr_dist(g_m, u1);
}

inline DerivedDistributions derive_all(const ScenarioConfig& config) {
  require_valid(config);
  const double rho = db_to_linear(config.snr_db);
  const LogNormalParams g_src = link_snr_dist(config.channel.mu_s, config.channel.sigma_s, rho);
  const LogNormalParams g_rel = link_snr_dist(config.channel.mu_k, config.channel.sigma_k, rho);
  const LogNormalParams g_m = relay_snr_dist(g_src, g_rel);
  const LogNormalParams g_d = destination_snr_dist(g_m, config.m_right);
  const LogNormalParams g_q = config.adversary == Adversary::Passive
                                  ? g_src
                                  : wiretapper_snr_dist(g_m, config.u1_colluding);
  return {g_src, g_rel, g_m, g_d, g_q};
}

}  // namespace sectorsec
