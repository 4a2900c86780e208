#include "sdlab/runner.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>

#include <fftw3.h>

#include "sdlab/classifier.hpp"
#include "sdlab/diagnostics.hpp"
#include "sdlab/picard.hpp"
#include "sdlab/serialization.hpp"
#include "sdlab/strichartz.hpp"
#include "sdlab/xsb.hpp"

#ifndef SDLAB_VERSION
#define SDLAB_VERSION "unknown"
#endif

namespace sdlab {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

class Output {
 public:
  explicit Output(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

  std::ofstream open(const std::string& name, bool binary = false) {
    files_.push_back(name);
    std::ofstream os(dir_ / name, binary ? std::ios::binary : std::ios::out);
    if (!os) throw Error("cannot write " + (dir_ / name).string());
    return os;
  }
  void json(const std::string& name, const ordered_json& doc) { open(name) << doc.dump(2) << '\n'; }
  const std::vector<std::string>& files() const { return files_; }

 private:
  fs::path dir_;
  std::vector<std::string> files_;
};

RecordFormat format_for(const std::string& path) {
  return path.size() >= 4 && path.substr(path.size() - 4) == ".csv" ? RecordFormat::Csv : RecordFormat::Binary;
}

Field read_field(const std::string& path, const TorusGrid& grid) {
  const RecordFormat fmt = format_for(path);
  std::ifstream in(path, fmt == RecordFormat::Binary ? std::ios::binary : std::ios::in);
  if (!in) throw InvalidArgument("cannot open field file " + path);
  Record rec = read_record(in, fmt);
  Field f = std::holds_alternative<Field>(rec) ? std::get<Field>(rec) : inverse(std::get<Spectrum>(rec));
  if (!(f.grid == grid)) throw InvalidArgument(path + " does not match the configured grid");
  return f;
}

InitialData load_initial(const RunConfig& cfg) {
  const TorusGrid grid(cfg.grid->n, cfg.grid->M);
  if (cfg.initial->profile) return initial_profile(*cfg.initial->profile, grid);
  return {read_field(cfg.initial->u0_file, grid), read_field(cfg.initial->v0_file, grid)};
}

ModelParams model_of(const RunConfig& cfg) {
  ModelParams p = *cfg.model;
  p.dim = cfg.grid->n;
  return p;
}

TimeWindow window_of(const WindowSpec& w) {
  TimeWindow win{w.length, w.samples, w.delta};
  win.validate();
  return win;
}

void run_simulate(const RunConfig& cfg, Output& out, ordered_json& summary) {
  const SimulateSpec& sim = *cfg.simulate;
  InitialData init = load_initial(cfg);
  SimState state{0.0, std::move(init.u0), std::move(init.v0), model_of(cfg)};
  const Trajectory traj = evolve(state, sim.T, sim.dt, sim.save_every);

  std::vector<BalanceRecord> recs;
  for (const auto& st : traj.states) recs.push_back(balance_terms(st));

  // The balance residual needs uniform snapshots; a short final step is left out.
  Trajectory uniform = traj;
  if (uniform.states.size() >= 3) {
    const double h = uniform.states[1].t - uniform.states[0].t;
    const auto n = uniform.states.size();
    if (std::abs((uniform.states[n - 1].t - uniform.states[n - 2].t) - h) > 1e-9 * h) uniform.states.pop_back();
  }
  std::vector<double> residual(recs.size(), std::nan(""));
  if (uniform.states.size() >= 3) {
    const ResidualSeries res = h1_balance_residual(uniform);
    for (std::size_t i = 0; i < res.residual.size(); ++i) residual[i + 1] = res.residual[i];
    summary["balance_max_residual"] = res.max_abs;
    const IntegratedResidual integ = integrated_balance_residual(traj);
    summary["integrated_residual"] = integ.direct;
    summary["integrated_residual_printed_form"] = integ.printed;
  }

  auto traj_csv = out.open("trajectory.csv");
  traj_csv << "t,l2,h1,v_l2\n";
  auto bal_csv = out.open("balance.csv");
  bal_csv << "t,grad_energy,coupling,potential_p,residual\n";
  const double l2_0 = std::sqrt(recs.front().l2);
  double drift = 0.0;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const auto& r = recs[i];
    const double v_l2 = lebesgue_norm(2.0, traj.states[i].v);
    traj_csv << num(r.t) << ',' << num(std::sqrt(r.l2)) << ',' << num(r.h1) << ',' << num(v_l2) << '\n';
    bal_csv << num(r.t) << ',' << num(r.grad_energy) << ',' << num(r.coupling) << ',' << num(r.potential_p) << ','
            << (std::isnan(residual[i]) ? std::string() : num(residual[i])) << '\n';
    drift = std::max(drift, std::abs(std::sqrt(r.l2) - l2_0));
  }

  summary["steps"] = static_cast<std::int64_t>(std::llround(sim.T / sim.dt));
  summary["snapshots"] = traj.states.size();
  summary["l2_initial"] = l2_0;
  summary["l2_max_drift"] = drift;
  summary["l2_max_drift_relative"] = l2_0 > 0.0 ? drift / l2_0 : 0.0;

  if (sim.dump_fields) {
    auto u_bin = out.open("u_final.bin", true);
    write_record(u_bin, traj.states.back().u, RecordFormat::Binary);
    auto v_bin = out.open("v_final.bin", true);
    write_record(v_bin, traj.states.back().v, RecordFormat::Binary);
  }
}

int run_picard(const RunConfig& cfg, Output& out, ordered_json& summary) {
  const PicardSpec& spec = *cfg.picard;
  const InitialData init = load_initial(cfg);
  const Spectrum u0 = forward(init.u0);
  const ModelParams params = model_of(cfg);
  const TimeWindow window = window_of(spec.window);
  const PicardOptions options{spec.s, spec.tol, spec.kmax};

  if (spec.probe) {
    const DeltaProbe probe = probe_existence_time(u0, init.v0, params, window, window.delta, options);
    auto csv = out.open("probe.csv");
    csv << "delta,contracted,last_ratio,iterations\n";
    for (const auto& e : probe.entries)
      csv << num(e.delta) << ',' << (e.contracted ? 1 : 0) << ',' << num(e.last_ratio) << ',' << e.iterations << '\n';
    summary["breakdown_delta"] = probe.breakdown_delta ? ordered_json(*probe.breakdown_delta) : ordered_json(nullptr);
  }

  const PicardResult result = picard_solve(u0, init.v0, params, window, options);
  auto csv = out.open("picard_history.csv");
  csv << "k,difference,ratio\n";
  for (const auto& step : result.history)
    csv << step.k << ',' << num(step.difference) << ',' << (std::isnan(step.ratio) ? std::string() : num(step.ratio))
        << '\n';
  auto bin = out.open("solution.sdst", true);
  write_space_time(bin, to_spectrum(result.solution));

  summary["converged"] = result.converged;
  summary["iterations"] = result.history.size();
  summary["final_difference"] = result.history.empty() ? 0.0 : result.history.back().difference;
  summary["solution_xsb_norm"] = xsb_norm(to_spectrum(result.solution), spec.s, 0.5);
  return result.converged ? kExitOk : kExitNotConverged;
}

void run_strichartz(const RunConfig& cfg, Output& out, ordered_json& summary) {
  const StrichartzSpec& spec = *cfg.strichartz;
  auto table_csv = out.open("count_summary.csv");
  table_csv << "N,max_count,total,pairs\n";
  std::vector<std::int64_t> fit_N;
  std::vector<std::int64_t> fit_max;
  for (std::int64_t N : spec.N) {
    const CountTable table = representation_counts(N);
    table_csv << N << ',' << table.max_count << ',' << table.total() << ',' << table.entries.size() << '\n';
    if (N <= 32) {
      auto csv = out.open("counts_N" + std::to_string(N) + ".csv");
      csv << "n,j,count\n";
      for (const auto& e : table.entries) csv << e.n << ',' << e.j << ',' << e.count << '\n';
    }
    if (N >= 8) {
      fit_N.push_back(N);
      fit_max.push_back(table.max_count);
    }
  }
  if (fit_N.size() >= 4) {
    const GrowthFit fit = growth_fit(fit_N, fit_max);
    out.open("growth_fit.json") << to_json(fit) << '\n';
    summary["growth_c"] = fit.c;
    summary["growth_residual_trend"] = fit.residual_trend;
  } else {
    summary["growth_fit"] = "skipped: needs at least 4 cutoffs N >= 8";
  }

  if (spec.kp_trials > 0) {
    const ParaboloidSection S = section_1d(spec.kp_N);
    const KpBound kp = kp_lower_bound(S, spec.kp_p, spec.kp_trials, cfg.seed);
    ordered_json j;
    j["N"] = spec.kp_N;
    j["p"] = spec.kp_p;
    j["trials"] = spec.kp_trials;
    j["lower_bound"] = kp.value;
    j["best_source"] = kp.best_source;
    out.json("kp_bound.json", j);
  }

  if (!spec.admissible.empty()) {
    const AdmissibilityEvidence evidence = default_admissibility_evidence();
    auto csv = out.open("admissible.csv");
    csv << "d,p,verdict,rule\n";
    for (const auto& [d, p] : spec.admissible) {
      const AdmissibilityVerdict v = admissible_check(d, p, evidence);
      csv << d << ',' << num(p) << ',' << to_string(v.kind) << ",\"" << v.rule << "\"\n";
    }
  }
}

void run_xsb(const RunConfig& cfg, Output& out, ordered_json& summary) {
  const XsbSpec& spec = *cfg.xsb;
  const InitialData init = load_initial(cfg);
  const TimeWindow window = window_of(spec.window);
  const SpaceTimeSpectrum h = to_spectrum(cutoff_free_solution(forward(init.u0), window));

  summary["xsb_norm"] = xsb_norm(h, spec.s, spec.b);
  summary["xsb_norm_half"] = xsb_norm(h, spec.s, 0.5);
  summary["triple_norm"] = triple_norm(h, spec.s);
  ordered_json ratios = ordered_json::array();
  for (double T : spec.T) ratios.push_back({{"T", T}, {"ratio", cutoff_scaling_ratio(h, T, spec.s, spec.b, spec.b_prime)}});
  summary["cutoff_scaling"] = ratios;

  auto csv = out.open("shells.csv");
  csv << "A,N,mass\n";
  for (const ShellIndex& shell : lattice_shells(h)) {
    const SpaceTimeSpectrum piece = shell_restrict(h, shell);
    const double mass = xsb_norm(piece, 0.0, 0.0);
    if (mass > 0.0) csv << shell.A << ',' << shell.N << ',' << num(mass * mass) << '\n';
  }
}

void run_classify(const RunConfig& cfg, Output& out, ordered_json& summary) {
  const ClassifySpec& spec = *cfg.classify;
  auto csv = out.open("verdicts.csv");
  csv << "n,alpha,s,verdict,theorem_tag\n";
  std::size_t rows = 0;
  for (int n : spec.n)
    for (double alpha : spec.alpha)
      for (double s : spec.s) {
        const Verdict v = classify_wellposedness(n, alpha, s);
        csv << n << ',' << num(alpha) << ',' << num(s) << ',' << to_string(v.kind) << ',' << v.theorem_tag << '\n';
        ++rows;
      }
  summary["rows"] = rows;
}

ordered_json manifest(const RunConfig& cfg, const std::vector<std::string>& files) {
  ordered_json m;
  m["config_hash"] = config_hash(cfg.document);
  m["version"] = SDLAB_VERSION;
  m["fftw_version"] = std::string(fftw_version);
  m["mode"] = cfg.mode;
  m["seed"] = cfg.seed;
  m["grid"] = cfg.grid ? ordered_json{{"n", cfg.grid->n}, {"M", cfg.grid->M}} : ordered_json(nullptr);
  ordered_json budgets;
  budgets["blowup_threshold"] = kBlowUpThreshold;
  budgets["convolution_max_terms"] = ConvolutionBudget{}.max_terms;
  budgets["max_count_cutoff"] = kMaxCountCutoff;
  budgets["max_factorable"] = kMaxFactorable;
  budgets["max_brute_force"] = kMaxBruteForce;
  if (cfg.picard) budgets["picard_kmax"] = cfg.picard->kmax;
  m["budgets"] = budgets;
  m["config"] = ordered_json::parse(cfg.document.dump());
  m["outputs"] = files;
  return m;
}

void report_error(Output* out, std::ostream& err, const std::string& kind, const std::string& message,
                  ordered_json extra = ordered_json::object()) {
  ordered_json e;
  e["error"] = kind;
  e["message"] = message;
  for (auto& [k, v] : extra.items()) e[k] = v;
  err << e.dump() << '\n';
  if (out != nullptr) {
    try {
      out->json("error.json", e);
    } catch (const std::exception&) {
    }
  }
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& err) {
  std::unique_ptr<Output> out;
  try {
    out = std::make_unique<Output>(cfg.output);
  } catch (const std::exception& e) {
    report_error(nullptr, err, "io", e.what());
    return kExitFailure;
  }

  ordered_json summary;
  int code = kExitOk;
  try {
    if (cfg.mode == "simulate") run_simulate(cfg, *out, summary);
    else if (cfg.mode == "picard") code = run_picard(cfg, *out, summary);
    else if (cfg.mode == "strichartz") run_strichartz(cfg, *out, summary);
    else if (cfg.mode == "xsb") run_xsb(cfg, *out, summary);
    else if (cfg.mode == "classify") run_classify(cfg, *out, summary);
  } catch (const BlowUp& e) {
    report_error(out.get(), err, "blow_up", e.what(), {{"t", e.time}, {"l2", e.l2_norm}, {"sup", e.sup_norm}});
    code = kExitBlowUp;
  } catch (const NoContraction& e) {
    report_error(out.get(), err, "no_contraction", e.what(), {{"ratios", e.ratios}});
    code = kExitNoContraction;
  } catch (const std::exception& e) {
    report_error(out.get(), err, "failure", e.what());
    code = kExitFailure;
  }

  try {
    if (code == kExitOk || code == kExitNotConverged) out->json("summary.json", summary);
    out->json("manifest.json", manifest(cfg, out->files()));
  } catch (const std::exception& e) {
    report_error(nullptr, err, "io", e.what());
    return kExitFailure;
  }
  return code;
}

int run_file(const std::string& path, const ConfigOverrides& overrides, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = load_config(path, overrides);
  } catch (const ConfigError& e) {
    ordered_json j;
    j["error"] = "config";
    j["fields"] = e.problems();
    err << j.dump() << '\n';
    return kExitConfig;
  }
  return run(cfg, err);
}

}  // namespace sdlab
