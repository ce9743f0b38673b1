#ifndef DECAY_CLI_HPP_
#define DECAY_CLI_HPP_

// Command-line front end. Subcommands: survival, spectrum, fwhm, twobody,
// poles, scenario <name>, plot. Exit codes: 0 success, 2 argument, config or
// input-domain errors, 3 numerical failures, 1 anything else.

#include <limits>
#include <string>
#include <vector>

namespace decay::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

/// Fully resolved run configuration. Values come from flags, then from the
/// JSON config file for flags not given, then from defaults; automatic values
/// (grid ranges, time lists) are filled in before the run.
struct RunConfig {
  std::string command;
  std::string scenario;
  std::string model = "bw";
  std::string unit = "natural";
  double mass = 0.0;
  double width = 1.0;
  double coupling = 1.0;
  double half_width = 1.0;
  double asymmetry = 0.0;
  double cutoff = 1.0;
  double time = 1.0;
  std::vector<double> times;
  double omega_min = std::numeric_limits<double>::quiet_NaN();  // NaN: automatic
  double omega_max = std::numeric_limits<double>::quiet_NaN();
  long points = 0;  // 0: automatic (2001, or 401 for form-factor scenarios)
  long grid_points = 4001;
  double m1 = 0.0;
  double m2 = 0.0;
  long particle = 1;
  std::string figure = "fig1";
  std::vector<std::string> inputs;
  std::string out = "-";
  std::string format = "csv";
};

/// Runs the command line (argv[0] is the program name). Diagnostics go to
/// standard error.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);

/// Worker count: hardware concurrency, capped by DECAY_SPECTRA_THREADS.
unsigned thread_count();

}  // namespace decay::cli

#endif  // DECAY_CLI_HPP_
