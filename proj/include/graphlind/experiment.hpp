#pragma once

#include <optional>
#include <string>
#include <vector>

#include "graphlind/engine.hpp"

namespace graphlind {

// Config or usage problems; the CLI maps these to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IsingConfig {
  int a = 0, b = 0;  // 0 means auto: N/2 and N/2 + 1
  double coupling = 1.0;
};

// One [section] of a config file.
struct CaseConfig {
  std::string name;
  Rates rates;
  std::string graph = "complete";
  std::vector<int> n_values;
  std::optional<IsingConfig> ising;
  double tau = 0.004;
  double t_final = 5.0;
  int sample_every = 25;
  std::vector<std::string> observables;  // tokens, ';'-separated in file
  std::vector<std::string> cuts;         // "half" or a bond index
  std::string reference = "analytic";    // compare mode: analytic | dense
  int max_bond = 64;
  double max_discarded_weight = 1e-16;
};

std::vector<CaseConfig> parse_config(const std::string& text);
std::vector<CaseConfig> load_config(const std::string& path);

// Observable tokens: "stab" (stabilizer of vertex 1), "sig:n,m,l"
// (canonical X^n Y^m Z^l word), or word text like "X1 Z2 Z3".
PauliWord observable_from_token(const std::string& token, const GraphSpec& g);
int cut_from_token(const std::string& token, int n);

struct RunOutput {
  int n = 0;
  std::vector<std::string> observable_names;
  std::vector<int> cuts;
  TimeSeries series;
  double seconds = 0.0;
};

RunOutput run_case(const CaseConfig& cfg, int n);

std::string series_csv(const RunOutput& out);
std::string sidecar_json(const CaseConfig& cfg, const RunOutput& out);

struct ObservableDeviation {
  std::string name;
  double max_abs = 0.0;
  double t_at_max = 0.0;
  long samples = 0;
};

struct ComparisonReport {
  std::vector<ObservableDeviation> rows;
  double tolerance = 1e-9;
  bool pass() const;
};

// Numeric run vs the closed-form oracle (reference "analytic", complete
// graphs only) or the dense Liouvillian (reference "dense", N <= 6).
ComparisonReport compare_case(const CaseConfig& cfg, int n, double tol);

struct PlateauFit {
  std::vector<int> n_values;
  std::vector<double> t_star;   // OSEE first below (ln 2)/2
  std::vector<double> t_early;  // OSEE first below 0.9 * 2 ln 2
  double delta_hat = 0.0;       // slope of t_star vs ln N
  double delta_ref = 0.0;       // 1 / (2 alpha)
  double residual = 0.0;        // rms residual of the linear fit
  double early_exponent = 0.0;  // slope of ln t_early vs ln N
};

PlateauFit plateau_fit(const CaseConfig& cfg);

struct IsingMarkers {
  double peak_time = -1.0;  // interior local maximum of the OSEE curve
  double peak_value = 0.0;
  int max_bond = 0;
};

IsingMarkers detect_peak(const RunOutput& out, int cut_index);

// Full CLI: graphlind run|compare|plateau|ising --config <file>
// [--out <dir>] [--workers k] [--tol 1e-9]. Exit 0 ok, 1 tolerance
// failure, 2 usage or config error.
int cli_main(int argc, char** argv);

}  // namespace graphlind
