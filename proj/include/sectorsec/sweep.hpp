#pragma once

// Sweep plumbing for the CLI: load a scenario + grid from a config table, run
// the analytic / Monte Carlo / comparison pipelines over (axis value, SNR)
// points, and emit byte-stable CSV plus a human-readable comparison report.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sectorsec/config.hpp"
#include "sectorsec/errors.hpp"
#include "sectorsec/montecarlo.hpp"
#include "sectorsec/network_model.hpp"
#include "sectorsec/secrecy.hpp"

namespace sectorsec {

enum class SweepAxis { None, Sectors, Colluders };

struct SweepSpec {
  ScenarioConfig base{};
  std::vector<double> snr_grid;     // strictly increasing, non-empty
  SweepAxis vary = SweepAxis::None;
  std::vector<int> axis_values;     // used when vary != None
  std::uint64_t mc_trials = 1000000;
  std::uint64_t seed = 1;
  HoltzmanWeights weights = HoltzmanWeights::standard();
  CorrelationMode correlation = CorrelationMode::Independent;
  std::string output_path;
};

struct SweepRow {
  double snr_db = 0.0;
  double axis = 0.0;  // varied parameter's value; 0 when nothing is varied
  std::optional<double> sop_analytic;
  std::optional<double> sop_exact;
  std::optional<double> sop_mc;
  std::optional<double> ci_low;
  std::optional<double> ci_high;
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

inline ScenarioConfig point_config(const SweepSpec& spec, int axis_value, double snr_db) {
  ScenarioConfig c = spec.base;
  c.snr_db = snr_db;
  if (spec.vary == SweepAxis::Sectors) c.n_sectors = axis_value;
  if (spec.vary == SweepAxis::Colluders) c.u1_colluding = axis_value;
  return c;
}

// ---- config-file loading -------------------------------------------------

namespace detail {

inline const ConfigValue* find(const ConfigTable& t, const std::string& key) {
  auto it = t.find(key);
  return it == t.end() ? nullptr : &it->second;
}

inline double need_number(const ConfigTable& t, const std::string& key,
                          std::vector<std::string>& missing) {
  const ConfigValue* v = find(t, key);
  if (!v || v->kind != ConfigValue::Kind::Number) {
    missing.push_back(key);
    return 0.0;
  }
  return v->number;
}

inline int need_int(const ConfigTable& t, const std::string& key,
                    std::vector<std::string>& missing) {
  const double x = need_number(t, key, missing);
  if (!missing.empty() && missing.back() == key) return 0;
  if (x != std::floor(x)) {
    missing.push_back(key);
    return 0;
  }
  return static_cast<int>(x);
}

}  // namespace detail

// Build a SweepSpec from a parsed config table. Scenario keys mirror the
// ScenarioConfig fields; the grid comes from snr_db or snr_db_start/stop/step;
// an optional vary/vary_values pair sweeps n_sectors or u1_colluding.
inline SweepSpec load_sweep_spec(const ConfigTable& table) {
  static const std::set<std::string> known = {
      "mu_s",        "sigma_s",      "mu_k",       "sigma_k",        "n_sectors",
      "m_right",     "u1_colluding", "rate_threshold", "snr_db",     "adversary",
      "capacity_mode", "snr_db_start", "snr_db_stop", "snr_db_step", "vary",
      "vary_values"};
  std::vector<std::string> bad;
  for (const auto& [key, value] : table)
    if (!known.count(key))
      throw ConfigError("unknown config key '" + key + "' (line " + std::to_string(value.line) + ")",
                        {key});

  SweepSpec spec;
  spec.base.channel.mu_s = detail::need_number(table, "mu_s", bad);
  spec.base.channel.sigma_s = detail::need_number(table, "sigma_s", bad);
  spec.base.channel.mu_k = detail::need_number(table, "mu_k", bad);
  spec.base.channel.sigma_k = detail::need_number(table, "sigma_k", bad);
  spec.base.rate_threshold = detail::need_number(table, "rate_threshold", bad);
  spec.base.m_right = detail::need_int(table, "m_right", bad);

  if (detail::find(table, "n_sectors")) spec.base.n_sectors = detail::need_int(table, "n_sectors", bad);
  if (detail::find(table, "u1_colluding"))
    spec.base.u1_colluding = detail::need_int(table, "u1_colluding", bad);

  if (const ConfigValue* v = detail::find(table, "adversary");
      v && v->kind == ConfigValue::Kind::String && (v->text == "passive" || v->text == "colluding")) {
    spec.base.adversary = v->text == "passive" ? Adversary::Passive : Adversary::Colluding;
  } else {
    bad.push_back("adversary");
  }
  if (const ConfigValue* v = detail::find(table, "capacity_mode")) {
    if (v->kind == ConfigValue::Kind::String && (v->text == "worst-case" || v->text == "hypothesis"))
      spec.base.capacity_mode =
          v->text == "worst-case" ? CapacityMode::WorstCase : CapacityMode::Hypothesis;
    else
      bad.push_back("capacity_mode");
  }

  const bool has_point = detail::find(table, "snr_db") != nullptr;
  const bool has_grid = detail::find(table, "snr_db_start") || detail::find(table, "snr_db_stop") ||
                        detail::find(table, "snr_db_step");
  if (has_point && has_grid) {
    bad.push_back("snr_db");
  } else if (has_grid) {
    const double start = detail::need_number(table, "snr_db_start", bad);
    const double stop = detail::need_number(table, "snr_db_stop", bad);
    const double step = detail::need_number(table, "snr_db_step", bad);
    if (std::none_of(bad.begin(), bad.end(), [](const std::string& k) {
          return k.rfind("snr_db_", 0) == 0;
        })) {
      if (!(step > 0.0)) {
        bad.push_back("snr_db_step");
      } else {
        for (double v = start; v <= stop + 1e-9 * std::max(1.0, std::abs(stop)); v += step)
          spec.snr_grid.push_back(v);
      }
    }
  } else if (has_point) {
    spec.snr_grid.push_back(detail::need_number(table, "snr_db", bad));
  }
  if (spec.snr_grid.empty() &&
      std::none_of(bad.begin(), bad.end(),
                   [](const std::string& k) { return k.rfind("snr_db", 0) == 0; }))
    bad.push_back("snr_grid");

  if (const ConfigValue* v = detail::find(table, "vary")) {
    if (v->kind == ConfigValue::Kind::String &&
        (v->text == "n_sectors" || v->text == "u1_colluding")) {
      spec.vary = v->text == "n_sectors" ? SweepAxis::Sectors : SweepAxis::Colluders;
      const ConfigValue* vv = detail::find(table, "vary_values");
      if (!vv || vv->kind != ConfigValue::Kind::Array || vv->array.empty()) {
        bad.push_back("vary_values");
      } else {
        for (double x : vv->array) {
          if (x != std::floor(x) || x < 0.0) {
            bad.push_back("vary_values");
            break;
          }
          spec.axis_values.push_back(static_cast<int>(x));
        }
      }
    } else {
      bad.push_back("vary");
    }
  } else if (detail::find(table, "vary_values")) {
    bad.push_back("vary");
  }

  if (!bad.empty()) {
    std::string msg = "config invalid; offending fields:";
    for (const auto& f : bad) msg += " " + f;
    throw ConfigError(msg, bad);
  }

  // Validate every point the sweep will touch so errors surface before work.
  for (int axis : spec.axis_values.empty() ? std::vector<int>{0} : spec.axis_values) {
    const ScenarioConfig c = point_config(spec, axis, spec.snr_grid.front());
    const auto fields = validate(c);
    if (!fields.empty()) {
      std::string msg = "config invalid; offending fields:";
      for (const auto& f : fields) msg += " " + f;
      throw ConfigError(msg, fields);
    }
  }
  return spec;
}

inline SweepSpec load_sweep_file(const std::string& path) {
  return load_sweep_spec(parse_config_file(path));
}

// ---- sweep execution -------------------------------------------------------

namespace detail {

template <typename PointFn>
SweepResult run_points(const SweepSpec& spec, PointFn&& fill) {
  SweepResult result;
  const std::vector<int> axes = spec.vary == SweepAxis::None ? std::vector<int>{0} : spec.axis_values;
  for (int axis : axes) {
    for (double snr : spec.snr_grid) {
      SweepRow row;
      row.snr_db = snr;
      row.axis = static_cast<double>(axis);
      fill(point_config(spec, axis, snr), row);
      result.rows.push_back(row);
    }
  }
  std::stable_sort(result.rows.begin(), result.rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return a.axis != b.axis ? a.axis < b.axis : a.snr_db < b.snr_db;
  });
  return result;
}

}  // namespace detail

inline SweepResult run_analytic(const SweepSpec& spec) {
  return detail::run_points(spec, [&](const ScenarioConfig& c, SweepRow& row) {
    const DerivedDistributions d = derive_all(c);
    const SopInputs in{d.gamma_d, d.gamma_q, c.n_sectors, c.rate_threshold};
    row.sop_analytic = sop_closed_form(in, spec.weights);
    row.sop_exact = sop_exact_integral(in);
  });
}

inline SweepResult run_simulate(const SweepSpec& spec) {
  return detail::run_points(spec, [&](const ScenarioConfig& c, SweepRow& row) {
    const McEstimate e = estimate_sop(c, spec.mc_trials, spec.seed, spec.correlation);
    row.sop_mc = e.p_hat;
    row.ci_low = e.ci_low;
    row.ci_high = e.ci_high;
  });
}

// ---- comparison ------------------------------------------------------------

// Deviations are compared on the log10 scale and only where both values are
// at least `floor` (avoids MC zero-count artifacts).
struct CompareReport {
  double max_abs_dlog10 = 0.0;
  int compared_points = 0;
  int flagged_points = 0;
  std::string text;
};

inline std::optional<double> log10_deviation(std::optional<double> a, std::optional<double> b,
                                             double floor_value = 1e-6) {
  if (!a || !b || *a < floor_value || *b < floor_value) return std::nullopt;
  return std::abs(std::log10(*a) - std::log10(*b));
}

inline CompareReport compare_columns(const std::vector<SweepRow>& rows, double tolerance,
                                     std::optional<double> SweepRow::*lhs,
                                     std::optional<double> SweepRow::*rhs) {
  CompareReport rep;
  char buf[160];
  double cur_axis = std::nan("");
  double axis_max = 0.0;
  auto flush_axis = [&]() {
    if (!std::isnan(cur_axis)) {
      std::snprintf(buf, sizeof buf, "  axis=%g: max |dlog10| = %.4f\n", cur_axis, axis_max);
      rep.text += buf;
    }
  };
  for (const auto& row : rows) {
    if (row.axis != cur_axis || std::isnan(cur_axis)) {
      flush_axis();
      cur_axis = row.axis;
      axis_max = 0.0;
    }
    const auto dev = log10_deviation(row.*lhs, row.*rhs);
    if (!dev) continue;
    ++rep.compared_points;
    axis_max = std::max(axis_max, *dev);
    rep.max_abs_dlog10 = std::max(rep.max_abs_dlog10, *dev);
    if (*dev > tolerance) {
      ++rep.flagged_points;
      std::snprintf(buf, sizeof buf, "  FLAG axis=%g snr_db=%g |dlog10| = %.4f exceeds %.4f\n",
                    row.axis, row.snr_db, *dev, tolerance);
      rep.text += buf;
    }
  }
  flush_axis();
  std::snprintf(buf, sizeof buf, "  compared %d points, %d exceed tolerance %.4f, max |dlog10| = %.4f\n",
                rep.compared_points, rep.flagged_points, tolerance, rep.max_abs_dlog10);
  rep.text += buf;
  return rep;
}

struct CompareOutcome {
  SweepResult result;        // all columns filled (standard-weight analytic)
  CompareReport report;      // analytic vs MC
  std::string summary;       // human-readable, includes the weights verdict
};

inline CompareOutcome run_compare(const SweepSpec& spec, double tolerance) {
  CompareOutcome out;
  out.result = detail::run_points(spec, [&](const ScenarioConfig& c, SweepRow& row) {
    const DerivedDistributions d = derive_all(c);
    const SopInputs in{d.gamma_d, d.gamma_q, c.n_sectors, c.rate_threshold};
    row.sop_analytic = sop_closed_form(in, HoltzmanWeights::standard());
    row.sop_exact = sop_exact_integral(in);
    const McEstimate e = estimate_sop(c, spec.mc_trials, spec.seed, spec.correlation);
    row.sop_mc = e.p_hat;
    row.ci_low = e.ci_low;
    row.ci_high = e.ci_high;
  });
  out.report = compare_columns(out.result.rows, tolerance, &SweepRow::sop_analytic, &SweepRow::sop_mc);

  // Which weight preset tracks the MC column better, by total log deviation.
  double total_std = 0.0, total_printed = 0.0;
  int counted = 0;
  for (const auto& row : out.result.rows) {
    if (!row.sop_mc || *row.sop_mc < 1e-6 || !row.sop_analytic) continue;
    ScenarioConfig c = spec.base;
    c.snr_db = row.snr_db;
    if (spec.vary == SweepAxis::Sectors) c.n_sectors = static_cast<int>(row.axis);
    if (spec.vary == SweepAxis::Colluders) c.u1_colluding = static_cast<int>(row.axis);
    const DerivedDistributions d = derive_all(c);
    const SopInputs in{d.gamma_d, d.gamma_q, c.n_sectors, c.rate_threshold};
    const double printed = sop_closed_form(in, HoltzmanWeights::paper_printed());
    if (*row.sop_analytic < 1e-6 || printed < 1e-6) continue;
    total_std += std::abs(std::log10(*row.sop_analytic) - std::log10(*row.sop_mc));
    total_printed += std::abs(std::log10(printed) - std::log10(*row.sop_mc));
    ++counted;
  }
  out.summary = "compare report (analytic standard-weights vs monte carlo)\n" + out.report.text;
  if (counted > 0) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "  weights fit: standard total |dlog10| = %.4f, printed-variant total = %.4f -> "
                  "%s fits the simulation better\n",
                  total_std, total_printed, total_std <= total_printed ? "standard" : "printed-variant");
    out.summary += buf;
  }
  return out;
}

// ---- CSV / gnuplot emission -------------------------------------------------

inline std::string csv_format(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline std::string to_csv(const SweepResult& result) {
  std::string out = "snr_db,axis,sop_analytic,sop_exact,sop_mc,ci_low,ci_high\n";
  auto cell = [](const std::optional<double>& v) { return v ? csv_format(*v) : std::string(); };
  for (const auto& row : result.rows) {
    out += csv_format(row.snr_db);
    out += ',';
    out += csv_format(row.axis);
    out += ',';
    out += cell(row.sop_analytic);
    out += ',';
    out += cell(row.sop_exact);
    out += ',';
    out += cell(row.sop_mc);
    out += ',';
    out += cell(row.ci_low);
    out += ',';
    out += cell(row.ci_high);
    out += '\n';
  }
  return out;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + path);
  out << content;
  if (!out) throw ConfigError("failed writing output file: " + path);
}

// A ready-to-run gnuplot script plotting every curve in the CSV on a log axis.
inline std::string gnuplot_script(const std::string& csv_path, const SweepResult& result) {
  std::set<double> axes;
  for (const auto& row : result.rows) axes.insert(row.axis);
  std::string s;
  s += "set datafile separator ','\n";
  s += "set logscale y\n";
  s += "set xlabel 'SNR (dB)'\n";
  s += "set ylabel 'secrecy outage probability'\n";
  s += "set key bottom left\n";
  s += "plot \\\n";
  bool first = true;
  for (double axis : axes) {
    for (const auto& [col, name] : {std::pair<int, const char*>{3, "analytic"},
                                    std::pair<int, const char*>{5, "simulated"}}) {
      if (!first) s += ", \\\n";
      first = false;
      s += "  '" + csv_path + "' using 1:($2==" + csv_format(axis) + " ? $" + std::to_string(col) +
           " : 1/0) with linespoints title 'axis=" + csv_format(axis) + " " + name + "'";
    }
  }
  s += "\n";
  return s;
}

}  // namespace sectorsec
