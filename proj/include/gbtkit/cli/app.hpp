/*
 * Copyright 2026 The gbtkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef GBTKIT_CLI_APP_HPP_
#define GBTKIT_CLI_APP_HPP_

// `gbtkit` command-line front end.
//
// Exit codes: 0 success, 1 domain error (or a failed verify-tables),
// 2 usage error.

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gbtkit/cli/emit.hpp"
#include "gbtkit/cli/parse.hpp"
#include "gbtkit/cli/scenario.hpp"
#include "gbtkit/cli/tables.hpp"
#include "gbtkit/design.hpp"
#include "gbtkit/error.hpp"
#include "gbtkit/gbt.hpp"
#include "gbtkit/response.hpp"
#include "gbtkit/simkit.hpp"

namespace gbtkit::cli {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string plant;
  double f_samp = 0.0;
  std::optional<double> alpha;
  std::string method;
  bool zoh = true;
  double delay_ns = 0.0;
  bool unwrap = false;
  std::string scenario;
  std::string channel;
  std::optional<std::uint64_t> seed;
  std::string out;
  // bode
  std::optional<double> f_lo;
  std::optional<double> f_hi;
  int n = 200;
  std::string spacing = "log";
  // simulate / prewarp
  double f = 0.0;
  int settle = 50;
  int fit = 20;
  double amplitude = 1.0;
};

namespace detail {

inline DiscretizationSpec ResolveSpec(const RunConfig& cfg) {
  if (cfg.alpha && !cfg.method.empty()) throw UsageError("--alpha and --method are exclusive");
  if (!cfg.alpha && cfg.method.empty()) throw UsageError("one of --alpha or --method is required");
  if (!(cfg.f_samp > 0.0)) throw UsageError("--fs must be > 0");
  const ShapeFactor shape = cfg.alpha ? ShapeFactor(*cfg.alpha) : AliasToAlpha(ParseMethod(cfg.method));
  return DiscretizationSpec(shape, 1.0 / cfg.f_samp);
}

inline ResponseOptions ResolveResponse(const RunConfig& cfg) {
  if (!(cfg.delay_ns >= 0.0)) throw UsageError("--delay must be >= 0");
  return ResponseOptions{cfg.zoh, cfg.delay_ns * 1e-9, cfg.unwrap};
}

// Writes to --out when given, else to `out`.
template <typename F>
void Emit(const RunConfig& cfg, std::ostream& out, F&& write) {
  if (cfg.out.empty()) {
    write(out);
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw Error(ErrorCode::kParameterOutOfRange, "cannot write '" + cfg.out + "'");
  write(file);
}

inline std::optional<std::uint64_t> EnvSeed() {
  const char* env = std::getenv("GBTKIT_SEED");
  if (env == nullptr || *env == '\0') return std::nullopt;
  std::uint64_t v = 0;
  const std::string s(env);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw UsageError("GBTKIT_SEED must be an unsigned 64-bit integer");
  }
  return v;
}

inline int Discretize(const RunConfig& cfg, std::ostream& out) {
  const DiscretizationSpec spec = ResolveSpec(cfg);
  const PoleZeroGain plant = ParsePlant(cfg.plant);
  const RationalFunction s_tf = PzkToRational(plant);
  const RationalFunction z_tf = GbtSubstitute(s_tf, spec);
  const DifferenceEquation deq = Realize(z_tf);
  const StabilityReport stab = IsDiscreteStable(z_tf);
  Json j{{"alpha", spec.alpha()},
         {"alpha_in_stable_range", spec.shape().is_stable()},
         {"f_samp_hz", cfg.f_samp},
         {"period_s", spec.period()},
         {"s_num", ToJson(s_tf.num())},
         {"s_den", ToJson(s_tf.den())},
         {"z_num", ToJson(z_tf.num())},
         {"z_den", ToJson(z_tf.den())},
         {"difference_equation", {{"b", deq.in_coeffs()}, {"a", deq.out_coeffs()}}},
         {"poles", ToJson(stab.poles)},
         {"max_pole_radius", stab.max_pole_radius},
         {"stable", stab.stable}};
  Emit(cfg, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  return 0;
}

inline int Bode(const RunConfig& cfg, std::ostream& out) {
  const DiscretizationSpec spec = ResolveSpec(cfg);
  const PoleZeroGain plant = ParsePlant(cfg.plant);
  Spacing spacing = Spacing::kLog;
  if (cfg.spacing == "linear") {
    spacing = Spacing::kLinear;
  } else if (cfg.spacing != "log") {
    throw UsageError("--spacing must be log or linear");
  }
  const BodeRequest req{cfg.f_lo.value_or(cfg.f_samp * 1e-3), cfg.f_hi.value_or(0.49 * cfg.f_samp),
                        cfg.n, spacing, true};
  const BodeData data = BodeGrid(plant, spec, req, ResolveResponse(cfg));
  Emit(cfg, out, [&](std::ostream& os) { WriteBodeCsv(os, BodeRows(data)); });
  return 0;
}

inline int Design(const RunConfig& cfg, std::ostream& out) {
  if (cfg.scenario.empty()) throw UsageError("--scenario is required");
  const ScenarioFile file = LoadScenarioFile(cfg.scenario);
  Channel channel = file.channel.value_or(Channel::kMagnitudeFirst);
  if (!cfg.channel.empty()) channel = ParseChannel(cfg.channel);
  std::optional<std::uint64_t> seed = cfg.seed;
  if (!seed) seed = file.seed;
  if (!seed) seed = EnvSeed();
  const DesignResult r = OptimizeAlpha(file.scenario, channel, seed);
  Json j = ToJson(r);
  if (seed) j["seed"] = *seed;
  j["normalization_mode"] = file.scenario.normalization().mode == NormalizationMode::kScenarioMaximum
                                ? "scenario_max"
                                : "reference_frequency";
  if (cfg.out.empty()) {
    out << j.dump(2) << '\n' << DesignTable(r);
  } else {
    Emit(cfg, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
    out << DesignTable(r);
  }
  return 0;
}

inline Json PointJson(double mag_db, double phase_deg) {
  return Json{{"mag_db", mag_db}, {"phase_deg", phase_deg}};
}

inline int Simulate(const RunConfig& cfg, std::ostream& out) {
  const DiscretizationSpec spec = ResolveSpec(cfg);
  const PoleZeroGain plant = ParsePlant(cfg.plant);
  const ResponseOptions resp = ResolveResponse(cfg);
  const RationalFunction z_tf = GbtSubstitute(plant, spec);
  const ProbeOptions popts{cfg.settle, cfg.fit, cfg.amplitude};
  const ProbeRun run = RunSineProbe(Realize(z_tf), cfg.f, cfg.f_samp, popts, !cfg.out.empty());
  if (!cfg.out.empty()) Emit(cfg, out, [&](std::ostream& os) { WriteTraceCsv(os, run.trace); });

  const Complex theory = ZDomainResponse(z_tf, spec.period(), cfg.f, ResponseOptions{false, 0.0, false});
  // What the analog side sees: sampled response times ZOH and delay factors.
  ResponseOptions recon_opts = resp;
  const Complex recon_factor = gbtkit::detail::ReconstructionFactors(cfg.f, spec.period(), recon_opts);
  ProbeResult reconstructed = run.result;
  reconstructed.mag_db += ToDecibels(recon_factor);
  reconstructed.phase_deg += PhaseDegrees(recon_factor);
  Json j{{"probe", ToJson(run.result)},
         {"theory_sampled", PointJson(ToDecibels(theory), PhaseDegrees(theory))},
         {"reconstructed", ToJson(reconstructed)},
         {"reconstructed_delay_compensated", ToJson(CompensateDelay(reconstructed, resp.extra_delay))},
         {"analog", PointJson(ToDecibels(AnalogResponse(plant, cfg.f)),
                              PhaseDegrees(AnalogResponse(plant, cfg.f)))}};
  out << j.dump(2) << '\n';
  return 0;
}

inline int PrewarpCmd(const RunConfig& cfg, std::ostream& out) {
  if (!(cfg.f_samp > 0.0)) throw UsageError("--fs must be > 0");
  const double omega = kTwoPi * cfg.f;
  const double pw = Prewarp(omega, 1.0 / cfg.f_samp);
  Json j{{"f_hz", cfg.f}, {"omega_ori_rad_s", omega}, {"omega_pwp_rad_s", pw}, {"f_pwp_hz", pw / kTwoPi}};
  Emit(cfg, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  return 0;
}

inline int VerifyTablesCmd(const RunConfig& cfg, std::ostream& out) {
  const TableReport report = VerifyTables();
  Emit(cfg, out, [&](std::ostream& os) { os << ToJson(report).dump(2) << '\n'; });
  return report.pass() ? 0 : 1;
}

}  // namespace detail

inline int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"gbtkit: generalized bilinear discretization toolkit", "gbtkit"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::uint64_t seed_value = 0;

  auto add_system = [&](CLI::App* sub) {
    sub->add_option("--plant", cfg.plant, "lpf:fc=<Hz> | pzk:k=..,z=..,p=..")->required();
    sub->add_option("--fs", cfg.f_samp, "sampling frequency, Hz")->required();
    sub->add_option("--alpha", cfg.alpha, "shape factor in [0, 1]");
    sub->add_option("--method", cfg.method, "euler | tustin | al-alaoui:a=.. | pole:ap=.. | gbt:alpha=..");
  };
  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", cfg.out, "output path"); };
  auto add_recon = [&](CLI::App* sub) {
    sub->add_flag("--zoh,!--no-zoh", cfg.zoh, "apply zero-order-hold factors (default on)");
    sub->add_option("--delay", cfg.delay_ns, "extra processing delay, ns");
  };

  auto* discretize = app.add_subcommand("discretize", "print z-domain coefficients and stability");
  add_system(discretize);
  add_out(discretize);

  auto* bode = app.add_subcommand("bode", "emit analog vs discrete Bode CSV");
  add_system(bode);
  add_recon(bode);
  add_out(bode);
  bode->add_option("--f-lo", cfg.f_lo, "lowest frequency, Hz");
  bode->add_option("--f-hi", cfg.f_hi, "highest frequency, Hz (< f_samp/2)");
  bode->add_option("--n", cfg.n, "number of grid points");
  bode->add_option("--spacing", cfg.spacing, "log | linear");
  bode->add_flag("--unwrap", cfg.unwrap, "unwrap phase along the grid");

  auto* design = app.add_subcommand("design", "optimal shape factor for a scenario file");
  design->add_option("--scenario", cfg.scenario, "scenario JSON file")->required();
  design->add_option("--channel", cfg.channel, "mag | phase | tradeoff");
  auto* seed_opt = design->add_option("--seed", seed_value, "multi-start seed (fallback GBTKIT_SEED)");
  add_out(design);

  auto* simulate = app.add_subcommand("simulate", "run the recurrence against a sine probe");
  add_system(simulate);
  add_recon(simulate);
  add_out(simulate);
  simulate->add_option("--f", cfg.f, "probe frequency, Hz")->required();
  simulate->add_option("--settle", cfg.settle, "settling cycles");
  simulate->add_option("--fit", cfg.fit, "fit cycles");
  simulate->add_option("--amplitude", cfg.amplitude, "probe amplitude");

  auto* prewarp = app.add_subcommand("prewarp", "Tustin pre-warped frequency");
  prewarp->add_option("--f", cfg.f, "frequency, Hz")->required();
  prewarp->add_option("--fs", cfg.f_samp, "sampling frequency, Hz")->required();
  add_out(prewarp);

  auto* verify = app.add_subcommand("verify-tables", "compare against the tabulated reference tables");
  add_out(verify);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << '\n';
    return 2;
  }
  if (seed_opt->count() > 0) cfg.seed = seed_value;

  try {
    if (discretize->parsed()) return detail::Discretize(cfg, out);
    if (bode->parsed()) return detail::Bode(cfg, out);
    if (design->parsed()) return detail::Design(cfg, out);
    if (simulate->parsed()) return detail::Simulate(cfg, out);
    if (prewarp->parsed()) return detail::PrewarpCmd(cfg, out);
    if (verify->parsed()) return detail::VerifyTablesCmd(cfg, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace gbtkit::cli

#endif  // GBTKIT_CLI_APP_HPP_
