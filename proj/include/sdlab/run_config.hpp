#pragma once

// Run configuration, read from JSON. Every field a mode needs must be present;
// validation reports all offending fields at once.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sdlab/errors.hpp"
#include "sdlab/profiles.hpp"
#include "sdlab/propagators.hpp"

namespace sdlab {

class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

struct GridSpec {
  int n = 1;
  int M = 64;
};

struct InitialSpec {
  std::optional<ProfileSpec> profile;
  /// Serialized Field records (CSV when the name ends in .csv, binary otherwise).
  std::string u0_file;
  std::string v0_file;
};

struct SimulateSpec {
  double dt = 0.0;
  double T = 0.0;
  int save_every = 1;
  bool dump_fields = false;
};

struct WindowSpec {
  double length = 0.0;
  int samples = 0;
  double delta = 0.0;
};

struct PicardSpec {
  WindowSpec window;
  double s = 1.0;
  double tol = 0.0;
  int kmax = 0;
  bool probe = false;
};

struct StrichartzSpec {
  std::vector<std::int64_t> N;
  /// 1-D section cutoff and exponent for the K_p lower bound; kp_trials = 0 skips it.
  std::int64_t kp_N = 1;
  int kp_p = 6;
  int kp_trials = 0;
  std::vector<std::pair<int, double>> admissible;
};

struct XsbSpec {
  WindowSpec window;
  double s = 0.0;
  double b = 0.0;
  double b_prime = 0.0;
  std::vector<double> T;
};

struct ClassifySpec {
  std::vector<int> n;
  std::vector<double> alpha;
  std::vector<double> s;
};

struct RunConfig {
  std::string mode;
  std::uint64_t seed = 0;
  std::string output;
  std::optional<GridSpec> grid;
  std::optional<ModelParams> model;
  std::optional<InitialSpec> initial;
  std::optional<SimulateSpec> simulate;
  std::optional<PicardSpec> picard;
  std::optional<StrichartzSpec> strichartz;
  std::optional<XsbSpec> xsb;
  std::optional<ClassifySpec> classify;
  /// The validated document, with command-line overrides applied.
  nlohmann::json document;
};

struct ConfigOverrides {
  std::optional<std::string> mode;
  std::optional<std::string> output;
  std::optional<std::uint64_t> seed;
};

/// Throws ConfigError listing every problem found.
RunConfig parse_config(const nlohmann::json& document, const ConfigOverrides& overrides = {});
RunConfig load_config(const std::string& path, const ConfigOverrides& overrides = {});

/// 64-bit FNV-1a of the canonical JSON dump, as 16 hex digits.
std::string config_hash(const nlohmann::json& document);

}  // namespace sdlab
