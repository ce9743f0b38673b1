#include "decay/cli.hpp"
#include "decay/csv.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using doctest::Approx;

namespace {

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("decay_spectra_cli_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run_exe(const std::string& args) {
  const std::string cmd = std::string("\"") + DECAY_SPECTRA_EXE + "\" " + args + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string path(const std::string& name) { return (scratch_dir() / name).string(); }

}  // namespace

TEST_CASE("spectrum writes the expected table") {
  REQUIRE(run_exe("spectrum --model bw --mass 1 --width 0.05 --time 20 --omega-min -0.25 --omega-max 2.25 "
                  "--points 2001 --out " + path("eta.csv")) == 0);
  const auto table = decay::read_csv(path("eta.csv"));
  CHECK(table.columns == std::vector<std::string>{"omega", "eta", "eta_normalized"});
  CHECK(table.rows.size() == 2001);
  CHECK(table.rows.front()[0] == Approx(-0.25));
  CHECK(table.rows.back()[0] == Approx(2.25));
  const auto config = std::find_if(table.metadata.begin(), table.metadata.end(),
                                   [](const std::string& line) { return line.rfind("config: {", 0) == 0; });
  CHECK(config != table.metadata.end());
  const std::string text = slurp(path("eta.csv"));
  CHECK(text.find('\r') == std::string::npos);
}

TEST_CASE("fwhm reaches the natural width") {
  REQUIRE(run_exe("fwhm --model bw --width 1 --times 0.1,0.5,1,3,100 --out " + path("fwhm.csv")) == 0);
  const auto table = decay::read_csv(path("fwhm.csv"));
  CHECK(table.columns == std::vector<std::string>{"t", "delta_omega", "delta_omega_over_gamma"});
  REQUIRE(table.rows.size() == 5);
  CHECK(table.rows.back()[0] == Approx(100.0));
  CHECK(table.rows.back()[1] == Approx(1.0).epsilon(1e-2));
  CHECK(table.rows.back()[2] == Approx(1.0).epsilon(1e-2));
  CHECK(table.rows.front()[2] == Approx(55.6665533652).epsilon(1e-10));
}

TEST_CASE("piplus scenario reports the width ratios") {
  REQUIRE(run_exe("scenario piplus --time 1.0 --out " + path("pi.csv")) == 0);
  const auto table = decay::read_csv(path("pi.csv"));
  CHECK(table.rows.at(0).at(table.column("ratio_mu")) == Approx(0.2134).epsilon(1e-4 / 0.2134));
  CHECK(table.rows.at(0).at(table.column("ratio_nu")) == Approx(0.7866).epsilon(1e-4 / 0.7866));
}

TEST_CASE("exit codes") {
  CHECK(run_exe("") == 2);
  CHECK(run_exe("spectrum --bogus 1") == 2);
  CHECK(run_exe("spectrum --model bw --width -1 --out " + path("bad.csv")) == 2);
  CHECK(run_exe("scenario kaon --out " + path("bad.csv")) == 2);
  CHECK(run_exe("fwhm --model bw --times 0 --out " + path("bad.csv")) == 2);
  CHECK(!fs::exists(path("bad.csv")));
  CHECK(run_exe("survival --model smooth --mass 3 --coupling 2 --half-width 2.5 --cutoff 1 --grid-points 3 --out " +
                path("numerical.csv")) == 3);
}

TEST_CASE("config files resolve with flags taking precedence") {
  {
    std::ofstream cfg(path("cfg.json"));
    cfg << R"({"model": "bw", "width": 2.0, "times": [0.5, 1.0]})";
  }
  REQUIRE(run_exe("fwhm --config " + path("cfg.json") + " --times 0.25 --out " + path("cfg.csv")) == 0);
  const auto table = decay::read_csv(path("cfg.csv"));
  REQUIRE(table.rows.size() == 1);
  CHECK(table.rows[0][0] == Approx(0.25));
  CHECK(table.rows[0][2] == Approx(11.153755523158204).epsilon(1e-10));
  CHECK(table.rows[0][1] == Approx(2.0 * 11.153755523158204).epsilon(1e-10));

  {
    std::ofstream bad(path("bad.json"));
    bad << R"({"width": "wide"})";
  }
  CHECK(run_exe("fwhm --config " + path("bad.json") + " --out " + path("x.csv")) == 2);
  CHECK(run_exe("fwhm --config " + path("bad.json") + " --width 1 --out " + path("x.csv")) == 2);
  {
    std::ofstream unknown(path("unknown.json"));
    unknown << R"({"colour": 3})";
  }
  CHECK(run_exe("fwhm --config " + path("unknown.json") + " --out " + path("x.csv")) == 2);
  CHECK(run_exe("fwhm --config " + path("missing.json") + " --out " + path("x.csv")) == 2);
}

TEST_CASE("identical runs are byte-identical") {
  const std::string args = "spectrum --model band --mass 2.72811214639 --coupling 0.95 --half-width 2.52 "
                           "--asymmetry 0.0396 --time 0.4 --points 101 --out ";
  REQUIRE(run_exe(args + path("same.csv")) == 0);
  const std::string first = slurp(path("same.csv"));
  REQUIRE(run_exe(args + path("same.csv")) == 0);
  CHECK(slurp(path("same.csv")) == first);
  CHECK(!first.empty());
}

TEST_CASE("plot scripts") {
  REQUIRE(run_exe("spectrum --model bw --width 1 --time 1 --points 201 --out " + path("t1.csv")) == 0);
  REQUIRE(run_exe("spectrum --model bw --width 1 --time 100 --points 201 --out " + path("t100.csv")) == 0);
  REQUIRE(run_exe("plot --figure fig1 --inputs " + path("t1.csv") + "," + path("t100.csv") + " --out " +
                  path("fig1.gp")) == 0);
  const std::string script = slurp(path("fig1.gp"));
  CHECK(script.find("plot ") != std::string::npos);
  CHECK(script.find("dt 2") != std::string::npos);
  REQUIRE(run_exe("plot --figure fig1 --inputs " + path("t1.csv") + "," + path("t100.csv") + " --out " +
                  path("fig1.gp")) == 0);
  CHECK(slurp(path("fig1.gp")) == script);

  REQUIRE(run_exe("fwhm --model bw --width 1 --times 0.1,1,10 --format csv+plotscript --out " + path("w.csv")) == 0);
  CHECK(fs::exists(path("w.gp")));
  CHECK(slurp(path("w.gp")).find("5.5662") != std::string::npos);

  CHECK(run_exe("plot --figure fig3 --inputs " + path("t1.csv") + " --out " + path("bad.gp")) == 2);
  CHECK(run_exe("plot --figure fig9 --inputs " + path("t1.csv") + " --out " + path("bad.gp")) == 2);
}

TEST_CASE("in-process entry point") {
  CHECK(decay::cli::run({"fwhm", "--model", "bw", "--times", "1", "--out", path("inproc.csv")}) == 0);
  CHECK(decay::cli::run({"poles", "--model", "flat", "--out", path("poles.csv")}) == 0);
  CHECK(decay::cli::thread_count() >= 1);
}
