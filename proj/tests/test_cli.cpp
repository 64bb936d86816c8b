#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

fs::path work_dir() {
  const fs::path dir = fs::temp_directory_path() / "sectorsec_cli_tests";
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd =
      std::string(SECTORSEC_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(s);
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

// CSV rows (excluding header) as raw string fields; empty cells stay empty.
std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(text);
  std::string line;
  bool first = true;
  while (std::getline(ss, line)) {
    if (first) {
      first = false;
      continue;
    }
    if (line.empty()) continue;
    auto fields = split(line, ',');
    fields.resize(7);
    rows.push_back(fields);
  }
  return rows;
}

const char* kSmallScenario =
    "mu_s = 0.69\n"
    "sigma_s = 1.1\n"
    "mu_k = 0.69\n"
    "sigma_k = 1.1\n"
    "n_sectors = 4\n"
    "m_right = 4\n"
    "u1_colluding = 3\n"
    "rate_threshold = 2.0\n"
    "adversary = \"colluding\"\n"
    "snr_db_start = 14\n"
    "snr_db_stop = 16\n"
    "snr_db_step = 1\n";

fs::path write_config(const char* name, const std::string& body) {
  const fs::path p = work_dir() / name;
  std::ofstream out(p, std::ios::binary);
  out << body;
  return p;
}

}  // namespace

TEST_CASE("analytic subcommand writes the full sweep CSV", "[cli]") {
  const fs::path out = work_dir() / "fig2.csv";
  const fs::path plot = work_dir() / "fig2.gp";
  const fs::path log = work_dir() / "fig2.log";
  const int rc = run_cli("analytic --config " + std::string(SECTORSEC_CONFIG_DIR) +
                             "/fig2.toml --out " + out.string() + " --gnuplot " + plot.string(),
                         log);
  INFO(read_file(log));
  REQUIRE(rc == 0);

  const std::string csv = read_file(out);
  CHECK(csv.rfind("snr_db,axis,sop_analytic,sop_exact,sop_mc,ci_low,ci_high\n", 0) == 0);
  const auto rows = csv_rows(csv);
  REQUIRE(rows.size() == 124);  // 4 sector counts x 31 SNR points

  std::string prev_axis;
  double prev_value = 2.0;
  for (const auto& row : rows) {
    CHECK_FALSE(row[2].empty());  // analytic
    CHECK_FALSE(row[3].empty());  // reference integral
    CHECK(row[4].empty());        // no MC columns in analytic mode
    CHECK(row[5].empty());
    CHECK(row[6].empty());
    const double value = std::stod(row[2]);
    CHECK(value >= 0.0);
    CHECK(value <= 1.0);
    if (row[1] == prev_axis) {
      CHECK(value <= prev_value + 1e-12);  // nonincreasing along each curve
    }
    prev_axis = row[1];
    prev_value = value;
  }

  const std::string script = read_file(plot);
  CHECK(script.find("plot") != std::string::npos);
  CHECK(script.find("axis=1 analytic") != std::string::npos);
}

TEST_CASE("weights preset switches the analytic column", "[cli]") {
  const fs::path cfg = write_config("point.toml",
                                    "mu_s = 1.0\nsigma_s = 0.95\nmu_k = 1.0\nsigma_k = 0.95\n"
                                    "n_sectors = 4\nm_right = 4\nrate_threshold = 3.0\n"
                                    "adversary = \"passive\"\nsnr_db = 15\n");
  const fs::path out_std = work_dir() / "w_std.csv";
  const fs::path out_printed = work_dir() / "w_printed.csv";
  const fs::path log = work_dir() / "w.log";
  REQUIRE(run_cli("analytic --config " + cfg.string() + " --out " + out_std.string(), log) == 0);
  REQUIRE(run_cli("analytic --config " + cfg.string() + " --out " + out_printed.string() +
                      " --weights paper-printed",
                  log) == 0);
  const auto std_rows = csv_rows(read_file(out_std));
  const auto printed_rows = csv_rows(read_file(out_printed));
  REQUIRE(std_rows.size() == 1);
  REQUIRE(printed_rows.size() == 1);
  CHECK(std_rows[0][2] != printed_rows[0][2]);          // weights change the value
  CHECK(std_rows[0][3] == printed_rows[0][3]);          // reference integral does not move
  CHECK(std::stod(std_rows[0][2]) > std::stod(printed_rows[0][2]));
}

TEST_CASE("simulate subcommand is reproducible byte for byte", "[cli]") {
  const fs::path cfg = write_config("small.toml", kSmallScenario);
  const fs::path out1 = work_dir() / "sim1.csv";
  const fs::path out2 = work_dir() / "sim2.csv";
  const fs::path log = work_dir() / "sim.log";
  REQUIRE(run_cli("simulate --config " + cfg.string() + " --out " + out1.string() +
                      " --trials 5000 --seed 42",
                  log) == 0);
  REQUIRE(run_cli("simulate --config " + cfg.string() + " --out " + out2.string() +
                      " --trials 5000 --seed 42",
                  log) == 0);
  const std::string csv = read_file(out1);
  CHECK(csv == read_file(out2));

  const auto rows = csv_rows(csv);
  REQUIRE(rows.size() == 3);
  for (const auto& row : rows) {
    CHECK(row[2].empty());  // no analytic columns in simulate mode
    CHECK(row[3].empty());
    const double p = std::stod(row[4]);
    const double lo = std::stod(row[5]);
    const double hi = std::stod(row[6]);
    CHECK(lo <= p);
    CHECK(p <= hi);
    CHECK(lo >= 0.0);
    CHECK(hi <= 1.0);
  }

  const fs::path out3 = work_dir() / "sim3.csv";
  REQUIRE(run_cli("simulate --config " + cfg.string() + " --out " + out3.string() +
                      " --trials 5000 --seed 42 --correlation shared",
                  log) == 0);
  CHECK(read_file(out3) != csv);  // different draw plan, different estimate
}

TEST_CASE("compare subcommand reports analytic-vs-simulation fit", "[cli]") {
  const fs::path cfg = write_config("small.toml", kSmallScenario);
  const fs::path out = work_dir() / "cmp.csv";
  const fs::path log = work_dir() / "cmp.log";
  REQUIRE(run_cli("compare --config " + cfg.string() + " --out " + out.string() +
                      " --trials 2000 --seed 1 --tolerance 0.5",
                  log) == 0);
  const std::string report = read_file(log);
  CHECK(report.find("compare report") != std::string::npos);
  CHECK(report.find("weights fit") != std::string::npos);
  CHECK(report.find("max |dlog10|") != std::string::npos);
  for (const auto& row : csv_rows(read_file(out)))
    for (int col = 2; col <= 6; ++col) CHECK_FALSE(row[static_cast<size_t>(col)].empty());
}

TEST_CASE("config and usage errors exit with status 2", "[cli]") {
  const fs::path log = work_dir() / "err.log";
  const fs::path out = work_dir() / "err.csv";
  const std::string out_arg = " --out " + out.string();

  const fs::path cfg = write_config("small.toml", kSmallScenario);
  CHECK(run_cli("simulate --config " + cfg.string() + out_arg + " --trials 0 --seed 1", log) == 2);
  CHECK(read_file(log).find("config error") != std::string::npos);

  const fs::path reversed = write_config(
      "reversed.toml",
      "mu_s = 1\nsigma_s = 0.95\nmu_k = 1\nsigma_k = 0.95\nm_right = 4\nrate_threshold = 3\n"
      "adversary = \"passive\"\nsnr_db_start = 10\nsnr_db_stop = 0\nsnr_db_step = 1\n");
  CHECK(run_cli("analytic --config " + reversed.string() + out_arg, log) == 2);

  const fs::path unknown = write_config("unknown.toml", std::string(kSmallScenario) + "bogus = 1\n");
  CHECK(run_cli("analytic --config " + unknown.string() + out_arg, log) == 2);
  CHECK(read_file(log).find("bogus") != std::string::npos);

  CHECK(run_cli("analytic" + out_arg, log) == 2);                        // missing --config
  CHECK(run_cli("", log) == 2);                                          // missing subcommand
  CHECK(run_cli("analytic --config /no/such/file.toml" + out_arg, log) == 2);
  CHECK(run_cli("analytic --config " + cfg.string() + out_arg + " --weights bogus", log) == 2);
  CHECK(run_cli("analytic --config " + cfg.string() + " --out /nonexistent-dir/x.csv", log) == 2);
}
