#include "sdlab/run_config.hpp"

#include <cstdio>
#include <fstream>
#include <set>

namespace sdlab {

namespace {

std::string join_problems(const std::vector<std::string>& problems) {
  std::string out = "invalid configuration:";
  for (const auto& p : problems) out += "\n  " + p;
  return out;
}

using nlohmann::json;

class Reader {
 public:
  std::vector<std::string> problems;

  void fail(const std::string& path, const std::string& what) { problems.push_back(path + ": " + what); }

  const json* section(const json& doc, const std::string& key, bool required) {
    if (!doc.contains(key)) {
      if (required) fail(key, "required section is missing");
      return nullptr;
    }
    if (!doc[key].is_object()) {
      fail(key, "must be an object");
      return nullptr;
    }
    return &doc[key];
  }

  template <class T>
  std::optional<T> get(const json& obj, const std::string& prefix, const std::string& key, bool required) {
    const std::string path = prefix.empty() ? key : prefix + "." + key;
    if (!obj.contains(key)) {
      if (required) fail(path, "required field is missing");
      return std::nullopt;
    }
    const json& v = obj[key];
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) return mistyped(path, "a boolean");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) return mistyped(path, "a string");
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) return mistyped(path, "an integer");
      if constexpr (std::is_unsigned_v<T>)
        if (v.is_number_integer() && !v.is_number_unsigned()) return mistyped(path, "a non-negative integer");
    } else {
      if (!v.is_number()) return mistyped(path, "a number");
    }
    return v.get<T>();
  }

  template <class T>
  std::optional<std::vector<T>> list(const json& obj, const std::string& prefix, const std::string& key,
                                     bool required) {
    const std::string path = prefix + "." + key;
    if (!obj.contains(key)) {
      if (required) fail(path, "required field is missing");
      return std::nullopt;
    }
    const json& v = obj[key];
    if (!v.is_array() || v.empty()) {
      fail(path, "must be a non-empty array");
      return std::nullopt;
    }
    std::vector<T> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const bool ok = std::is_integral_v<T> ? v[i].is_number_integer() : v[i].is_number();
      if (!ok) {
        fail(path + "[" + std::to_string(i) + "]", std::is_integral_v<T> ? "must be an integer" : "must be a number");
        return std::nullopt;
      }
      out.push_back(v[i].get<T>());
    }
    return out;
  }

  void require(bool ok, const std::string& path, const std::string& what) {
    if (!ok) fail(path, what);
  }

  void unknown_keys(const json& obj, const std::string& prefix, std::set<std::string> known) {
    for (const auto& [key, value] : obj.items())
      if (!known.contains(key)) fail(prefix.empty() ? key : prefix + "." + key, "unknown field");
  }

 private:
  std::nullopt_t mistyped(const std::string& path, const std::string& type) {
    fail(path, "must be " + type);
    return std::nullopt;
  }
};

std::optional<WindowSpec> read_window(Reader& r, const json& parent, const std::string& prefix) {
  const std::string path = prefix + ".window";
  if (!parent.contains("window") || !parent["window"].is_object()) {
    r.fail(path, "required object is missing");
    return std::nullopt;
  }
  const json& w = parent["window"];
  r.unknown_keys(w, path, {"length", "samples", "delta"});
  const auto length = r.get<double>(w, path, "length", true);
  const auto samples = r.get<int>(w, path, "samples", true);
  const auto delta = r.get<double>(w, path, "delta", true);
  if (!length || !samples || !delta) return std::nullopt;
  bool ok = true;
  if (!(*length > 0.0)) ok = false, r.fail(path + ".length", "must be positive");
  if (*samples < 4 || *samples % 2 != 0) ok = false, r.fail(path + ".samples", "must be even and >= 4");
  if (!(*delta > 0.0 && 4.0 * *delta < *length)) ok = false, r.fail(path + ".delta", "needs 0 < 4 delta < length");
  if (!ok) return std::nullopt;
  return WindowSpec{*length, *samples, *delta};
}

std::optional<ProfileSpec> read_profile(Reader& r, const json& init, int n, std::uint64_t seed) {
  const std::string path = "initial";
  ProfileSpec spec;
  spec.seed = seed;
  spec.name = *r.get<std::string>(init, path, "profile", true);
  if (auto v = r.get<double>(init, path, "v_scale", false)) spec.v_scale = *v;
  if (auto h = r.get<double>(init, path, "h1_norm", false)) {
    r.require(*h > 0.0, path + ".h1_norm", "must be positive");
    spec.h1_norm = *h;
  }
  std::set<std::string> known{"profile", "v_scale", "h1_norm"};
  if (spec.name == "single_mode") {
    known.insert({"mode", "amplitude"});
    if (auto a = r.get<double>(init, path, "amplitude", true)) spec.amplitude = *a;
    if (auto m = r.list<int>(init, path, "mode", true)) {
      if (static_cast<int>(m->size()) != n) {
        r.fail(path + ".mode", "must have one entry per dimension");
      } else {
        for (int i = 0; i < n; ++i) spec.mode[static_cast<std::size_t>(i)] = (*m)[static_cast<std::size_t>(i)];
      }
    }
  } else if (spec.name == "gaussian_bump") {
    known.insert({"width", "amplitude"});
    if (auto a = r.get<double>(init, path, "amplitude", true)) spec.amplitude = *a;
    if (auto w = r.get<double>(init, path, "width", true)) {
      r.require(*w > 0.0, path + ".width", "must be positive");
      spec.width = *w;
    }
  } else if (spec.name == "random_bandlimited") {
    known.insert({"band", "decay", "amplitude"});
    if (auto a = r.get<double>(init, path, "amplitude", true)) spec.amplitude = *a;
    if (auto b = r.get<int>(init, path, "band", true)) {
      r.require(*b >= 0, path + ".band", "must be non-negative");
      spec.band = *b;
    }
    if (auto d = r.get<double>(init, path, "decay", true)) spec.decay = *d;
  } else if (spec.name != "zero") {
    r.fail(path + ".profile", "unknown profile '" + spec.name + "'");
  }
  r.unknown_keys(init, path, known);
  return spec;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : Error(join_problems(problems)), problems_(std::move(problems)) {}

RunConfig parse_config(const json& input, const ConfigOverrides& overrides) {
  if (!input.is_object()) throw ConfigError({"<root>: configuration must be a JSON object"});
  json doc = input;
  if (overrides.mode) doc["mode"] = *overrides.mode;
  if (overrides.output) doc["output"] = *overrides.output;
  if (overrides.seed) doc["seed"] = *overrides.seed;

  Reader r;
  RunConfig cfg;
  r.unknown_keys(doc, "", {"mode", "seed", "output", "grid", "model", "initial", "simulate", "picard", "strichartz",
                           "xsb", "classify"});
  cfg.mode = r.get<std::string>(doc, "", "mode", true).value_or("");
  cfg.seed = r.get<std::uint64_t>(doc, "", "seed", true).value_or(0);
  cfg.output = r.get<std::string>(doc, "", "output", true).value_or("");

  static const std::set<std::string> modes{"simulate", "picard", "strichartz", "xsb", "classify"};
  if (!cfg.mode.empty() && !modes.contains(cfg.mode))
    r.fail("mode", "must be one of simulate, picard, strichartz, xsb, classify");
  const bool field_mode = cfg.mode == "simulate" || cfg.mode == "picard" || cfg.mode == "xsb";
  const bool model_mode = cfg.mode == "simulate" || cfg.mode == "picard";

  if (const json* g = r.section(doc, "grid", field_mode)) {
    r.unknown_keys(*g, "grid", {"n", "M"});
    const auto n = r.get<int>(*g, "grid", "n", true);
    const auto M = r.get<int>(*g, "grid", "M", true);
    if (n) r.require(*n >= 1 && *n <= 3, "grid.n", "must be 1, 2 or 3");
    if (M) r.require(*M >= 4 && *M <= 1024 && *M % 2 == 0, "grid.M", "must be even and in [4, 1024]");
    if (n && M) cfg.grid = GridSpec{*n, *M};
  }

  if (const json* m = r.section(doc, "model", model_mode)) {
    r.unknown_keys(*m, "model", {"K", "eps", "alpha"});
    const auto K = r.get<double>(*m, "model", "K", true);
    const auto eps = r.get<int>(*m, "model", "eps", true);
    const auto alpha = r.get<double>(*m, "model", "alpha", true);
    if (K) r.require(*K > 0.0, "model.K", "must be positive");
    if (eps) r.require(*eps == 1 || *eps == -1, "model.eps", "must be +1 or -1");
    if (alpha) r.require(*alpha > 0.0, "model.alpha", "must be positive");
    if (K && eps && alpha) {
      ModelParams p;
      p.K = *K;
      p.eps = *eps;
      p.alpha = *alpha;
      p.dim = cfg.grid ? cfg.grid->n : 1;
      cfg.model = p;
    }
  }

  if (const json* init = r.section(doc, "initial", field_mode)) {
    InitialSpec spec;
    if (init->contains("profile")) {
      spec.profile = read_profile(r, *init, cfg.grid ? cfg.grid->n : 1, cfg.seed);
    } else {
      r.unknown_keys(*init, "initial", {"u0_file", "v0_file"});
      spec.u0_file = r.get<std::string>(*init, "initial", "u0_file", true).value_or("");
      spec.v0_file = r.get<std::string>(*init, "initial", "v0_file", true).value_or("");
    }
    cfg.initial = spec;
  }

  if (const json* s = r.section(doc, "simulate", cfg.mode == "simulate")) {
    r.unknown_keys(*s, "simulate", {"dt", "T", "save_every", "dump_fields"});
    const auto dt = r.get<double>(*s, "simulate", "dt", true);
    const auto T = r.get<double>(*s, "simulate", "T", true);
    const auto every = r.get<int>(*s, "simulate", "save_every", true);
    const auto dump = r.get<bool>(*s, "simulate", "dump_fields", false);
    if (dt) r.require(*dt > 0.0, "simulate.dt", "must be positive");
    if (T) r.require(*T > 0.0, "simulate.T", "must be positive");
    if (every) r.require(*every >= 1, "simulate.save_every", "must be >= 1");
    if (dt && T && every) cfg.simulate = SimulateSpec{*dt, *T, *every, dump.value_or(false)};
  }

  if (const json* p = r.section(doc, "picard", cfg.mode == "picard")) {
    r.unknown_keys(*p, "picard", {"window", "s", "tol", "kmax", "probe"});
    const auto window = read_window(r, *p, "picard");
    const auto s = r.get<double>(*p, "picard", "s", true);
    const auto tol = r.get<double>(*p, "picard", "tol", true);
    const auto kmax = r.get<int>(*p, "picard", "kmax", true);
    const auto probe = r.get<bool>(*p, "picard", "probe", false);
    if (s) r.require(*s >= 0.0, "picard.s", "must be non-negative");
    if (tol) r.require(*tol > 0.0, "picard.tol", "must be positive");
    if (kmax) r.require(*kmax >= 1, "picard.kmax", "must be >= 1");
    if (window && s && tol && kmax) cfg.picard = PicardSpec{*window, *s, *tol, *kmax, probe.value_or(false)};
  }

  if (const json* st = r.section(doc, "strichartz", cfg.mode == "strichartz")) {
    r.unknown_keys(*st, "strichartz", {"N", "kp", "admissible"});
    StrichartzSpec spec;
    if (auto N = r.list<std::int64_t>(*st, "strichartz", "N", true)) {
      for (std::size_t i = 0; i < N->size(); ++i)
        r.require((*N)[i] >= 1 && (*N)[i] <= 256, "strichartz.N[" + std::to_string(i) + "]", "must be in [1, 256]");
      spec.N = *N;
    }
    if (st->contains("kp")) {
      const json& kp = (*st)["kp"];
      if (!kp.is_object()) {
        r.fail("strichartz.kp", "must be an object");
      } else {
        r.unknown_keys(kp, "strichartz.kp", {"N", "p", "trials"});
        spec.kp_N = r.get<std::int64_t>(kp, "strichartz.kp", "N", true).value_or(1);
        spec.kp_p = r.get<int>(kp, "strichartz.kp", "p", true).value_or(6);
        spec.kp_trials = r.get<int>(kp, "strichartz.kp", "trials", true).value_or(0);
        r.require(spec.kp_N >= 0, "strichartz.kp.N", "must be non-negative");
        r.require(spec.kp_p >= 2 && spec.kp_p % 2 == 0, "strichartz.kp.p", "must be even and >= 2");
        r.require(spec.kp_trials >= 0, "strichartz.kp.trials", "must be non-negative");
      }
    }
    if (st->contains("admissible")) {
      const json& adm = (*st)["admissible"];
      if (!adm.is_array()) r.fail("strichartz.admissible", "must be an array of [d, p] pairs");
      else
        for (std::size_t i = 0; i < adm.size(); ++i) {
          const json& e = adm[i];
          if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number() || e[0].get<int>() < 2)
            r.fail("strichartz.admissible[" + std::to_string(i) + "]", "must be [d, p] with integer d >= 2");
          else
            spec.admissible.emplace_back(e[0].get<int>(), e[1].get<double>());
        }
    }
    cfg.strichartz = spec;
  }

  if (const json* x = r.section(doc, "xsb", cfg.mode == "xsb")) {
    r.unknown_keys(*x, "xsb", {"window", "s", "b", "b_prime", "T"});
    const auto window = read_window(r, *x, "xsb");
    const auto s = r.get<double>(*x, "xsb", "s", true);
    const auto b = r.get<double>(*x, "xsb", "b", true);
    const auto bp = r.get<double>(*x, "xsb", "b_prime", true);
    const auto T = r.list<double>(*x, "xsb", "T", true);
    if (b && bp) r.require(-0.5 < *bp && *bp <= *b && *b < 0.5, "xsb.b", "needs -1/2 < b_prime <= b < 1/2");
    if (T && window)
      for (std::size_t i = 0; i < T->size(); ++i)
        r.require((*T)[i] > 0.0 && (*T)[i] < 1.0 && 4.0 * (*T)[i] < window->length, "xsb.T[" + std::to_string(i) + "]",
                  "needs 0 < T < 1 and 4 T < window length");
    if (window && s && b && bp && T) cfg.xsb = XsbSpec{*window, *s, *b, *bp, *T};
  }

  if (const json* c = r.section(doc, "classify", cfg.mode == "classify")) {
    r.unknown_keys(*c, "classify", {"n", "alpha", "s"});
    const auto n = r.list<int>(*c, "classify", "n", true);
    const auto alpha = r.list<double>(*c, "classify", "alpha", true);
    const auto s = r.list<double>(*c, "classify", "s", true);
    if (n)
      for (int v : *n) r.require(v >= 1, "classify.n", "entries must be >= 1");
    if (alpha)
      for (double v : *alpha) r.require(v > 0.0, "classify.alpha", "entries must be positive");
    if (n && alpha && s) cfg.classify = ClassifySpec{*n, *alpha, *s};
  }

  if (!r.problems.empty()) throw ConfigError(r.problems);
  cfg.document = doc;
  return cfg;
}

RunConfig load_config(const std::string& path, const ConfigOverrides& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError({path + ": cannot open configuration file"});
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError({path + ": " + e.what()});
  }
  return parse_config(doc, overrides);
}

std::string config_hash(const json& document) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : document.dump()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace sdlab
