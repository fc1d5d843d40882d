// fockmeter CLI: configures interferometer experiments, runs sweeps, and
// emits machine-readable tables (CSV or JSON) with the matching closed-form
// oracle columns alongside the engine columns.
//
// Subcommands:
//   fringe       detection probabilities vs phi
//   sensitivity  minimum phase uncertainty vs probe count n
//   loss         uncertainty / visibility / entropy vs a transmission sweep
//   state        amplitude dump of the prepared state
//
// Identical flags produce byte-identical output; `--stamp` opts into a
// timestamp in the manifest. `--check` re-validates every engine column
// against its oracle column and exits 3 on disagreement.
//
// Exit codes: 0 success, 1 usage, 2 domain error, 3 check failure.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fockmeter/emit.hpp"
#include "fockmeter/entanglement.hpp"
#include "fockmeter/experiment.hpp"
#include "fockmeter/fockmeter.hpp"
#include "fockmeter/metrology.hpp"
#include "fockmeter/reference.hpp"

namespace {

using namespace fockmeter;

constexpr double kPi = std::numbers::pi;
constexpr double kFringeTolerance = 1e-10;
constexpr double kDeltaPhiTolerance = 1e-6;
constexpr double kVisibilityTolerance = 1e-10;
constexpr double kEntropyTolerance = 1e-10;

struct CommonFlags {
  double xi = 0.0;
  double gamma = 0.0;
  std::string transmissions = "1";
  std::string stats = "boson";
  std::string format = "csv";
  std::string out_path;
  bool degrees = false;
  bool stamp = false;
  bool check = false;
  double corrupt_oracle = 0.0;  // test-only hook; shifts oracle columns
};

void add_common_flags(CLI::App* cmd, CommonFlags* flags, bool with_check) {
  cmd->add_option("--xi", flags->xi, "Constant source phase xi (radians)");
  cmd->add_option("--gamma", flags->gamma, "p0/p0' path phase gamma (radians)");
  cmd->add_option("--t", flags->transmissions,
                  "Per-probe transmissions: comma list, or one value broadcast to all probes");
  cmd->add_option("--stats", flags->stats, "Particle statistics")
      ->check(CLI::IsMember({"boson", "fermion"}));
  cmd->add_option("--format", flags->format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", flags->out_path, "Write output to a file instead of stdout");
  cmd->add_flag("--deg", flags->degrees, "Interpret all input angles as degrees");
  cmd->add_flag("--stamp", flags->stamp, "Record a timestamp in the manifest (opt-in)");
  if (with_check) {
    cmd->add_flag("--check", flags->check,
                  "Exit 3 unless every engine column matches its oracle column");
    cmd->add_option("--corrupt-oracle", flags->corrupt_oracle, "")->group("");
  }
}

double to_radians(double value, bool degrees) {
  return degrees ? value * kPi / 180.0 : value;
}

ParticleStatistics parse_statistics(const std::string& s) {
  return s == "fermion" ? ParticleStatistics::Fermion : ParticleStatistics::Boson;
}

std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> values;
  std::stringstream stream(csv);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      values.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw std::invalid_argument("cannot parse transmission '" + item + "'");
    }
  }
  if (values.empty()) throw std::invalid_argument("empty transmission list");
  return values;
}

std::vector<double> parse_transmissions(const std::string& csv, int n) {
  std::vector<double> values = parse_double_list(csv);
  if (values.size() == 1) values.assign(static_cast<std::size_t>(n), values.front());
  if (values.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("transmission list must have 1 or n entries");
  }
  return values;
}

std::string join_doubles(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out += (i == 0 ? "" : ",") + format_double(v[i]);
  }
  return out;
}

std::string utc_stamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
  return buf;
}

void fill_manifest_common(RunManifest& manifest, const CommonFlags& flags) {
  manifest.format = flags.format;
  manifest.deterministic = !flags.stamp;
  if (flags.stamp) manifest.stamp = utc_stamp();
}

int emit_and_check(const CommonFlags& flags, const RunManifest& manifest, const Table& table,
                   bool check_ok) {
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!flags.out_path.empty()) {
    file.open(flags.out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file '" + flags.out_path + "'");
    out = &file;
  }
  if (flags.format == "json") {
    write_json(*out, manifest, table);
  } else {
    write_csv(*out, manifest, table);
  }
  if (flags.check && !check_ok) {
    std::cerr << "error: check: engine/oracle columns disagree beyond tolerance\n";
    return 3;
  }
  return 0;
}

// Engine/oracle agreement with infinities compared by identity.
bool within(double engine, double oracle, double tolerance) {
  if (std::isinf(engine) || std::isinf(oracle)) {
    return std::isinf(engine) && std::isinf(oracle) &&
           std::signbit(engine) == std::signbit(oracle);
  }
  return std::abs(engine - oracle) <= tolerance;
}

reference::ClosedFormInputs closed_form_inputs(const ExperimentConfig& cfg) {
  reference::ClosedFormInputs in;
  in.n = cfg.n;
  in.phi = cfg.phi;
  in.zeta0 = cfg.zeta0();
  in.transmissions = cfg.transmissions;
  return in;
}

int run_fringe(const CommonFlags& flags, int n, double phi_min, double phi_max, int points) {
  ExperimentConfig cfg;
  cfg.n = n;
  cfg.xi = to_radians(flags.xi, flags.degrees);
  cfg.gamma = to_radians(flags.gamma, flags.degrees);
  cfg.transmissions = parse_transmissions(flags.transmissions, n);
  cfg.statistics = parse_statistics(flags.stats);
  cfg.validate();
  const double lo = to_radians(phi_min, flags.degrees);
  const double hi = to_radians(phi_max, flags.degrees);

  RunManifest manifest;
  manifest.command = "fringe";
  fill_manifest_common(manifest, flags);
  manifest.set("n", std::to_string(n));
  manifest.set("xi", format_double(cfg.xi));
  manifest.set("gamma", format_double(cfg.gamma));
  manifest.set("t", join_doubles(cfg.transmissions));
  manifest.set("stats", to_string(cfg.statistics));
  manifest.set("phi_min", format_double(lo));
  manifest.set("phi_max", format_double(hi));
  manifest.set("points", std::to_string(points));
  manifest.set("tolerance", format_double(kFringeTolerance));

  const PhaseProfile profile(cfg);
  Table table;
  table.columns = {"phi", "p_c", "p_d", "oracle_p_c", "oracle_p_d", "abs_error"};
  bool check_ok = true;
  for (int j = 0; j < points; ++j) {
    const double phi =
        points == 1 ? lo : lo + (hi - lo) * static_cast<double>(j) / (points - 1);
    const double p_c = profile.detection_probability(OutputPort::C, phi);
    const double p_d = profile.detection_probability(OutputPort::D, phi);
    auto in = closed_form_inputs(cfg.with_phi(phi));
    const double o_c = reference::cf_detection(in, OutputPort::C) + flags.corrupt_oracle;
    const double o_d = reference::cf_detection(in, OutputPort::D) + flags.corrupt_oracle;
    const double err = std::max(std::abs(p_c - o_c), std::abs(p_d - o_d));
    check_ok = check_ok && err <= kFringeTolerance;
    table.rows.push_back({phi, p_c, p_d, o_c, o_d, err});
  }
  return emit_and_check(flags, manifest, table, check_ok);
}

int run_sensitivity(const CommonFlags& flags, int n_max) {
  ExperimentConfig prototype;
  prototype.n = 1;
  prototype.xi = to_radians(flags.xi, flags.degrees);
  prototype.gamma = to_radians(flags.gamma, flags.degrees);
  prototype.statistics = parse_statistics(flags.stats);
  // Either a broadcast value or a full list covering n_max; the sweep
  // validates the per-row configs.
  prototype.transmissions = parse_double_list(flags.transmissions);

  RunManifest manifest;
  manifest.command = "sensitivity";
  fill_manifest_common(manifest, flags);
  manifest.set("n_max", std::to_string(n_max));
  manifest.set("xi", format_double(prototype.xi));
  manifest.set("gamma", format_double(prototype.gamma));
  manifest.set("t", join_doubles(prototype.transmissions));
  manifest.set("stats", to_string(prototype.statistics));
  manifest.set("tolerance", format_double(kDeltaPhiTolerance));

  const SensitivitySweep sweep = sweep_uncertainty_vs_n(n_max, prototype);
  Table table;
  table.columns = {"n",
                   "visibility",
                   "phi_optimal",
                   "delta_phi_min",
                   "oracle_delta_phi_min",
                   "heisenberg_limit",
                   "shot_noise_limit",
                   "feasible",
                   "degenerate",
                   "regime"};
  bool check_ok = true;
  for (const auto& row : sweep) {
    const double oracle =
        row.visibility > 0.0
            ? 1.0 / (row.n * row.visibility) + flags.corrupt_oracle
            : std::numeric_limits<double>::infinity();
    check_ok = check_ok && within(row.delta_phi_min, oracle, kDeltaPhiTolerance);
    table.rows.push_back({static_cast<std::int64_t>(row.n), row.visibility, row.phi_optimal,
                          row.delta_phi_min, oracle, row.heisenberg_limit,
                          row.shot_noise_limit,
                          static_cast<std::int64_t>(row.feasible ? 1 : 0),
                          static_cast<std::int64_t>(row.degenerate ? 1 : 0),
                          std::string(to_string(row.regime))});
  }
  return emit_and_check(flags, manifest, table, check_ok);
}

int run_loss(const CommonFlags& flags, int n, double t_min, double t_max, int points) {
  const double xi = to_radians(flags.xi, flags.degrees);
  const double gamma = to_radians(flags.gamma, flags.degrees);
  const ParticleStatistics stats = parse_statistics(flags.stats);
  if (!(t_min >= 0.0 && t_max <= 1.0 && t_min <= t_max)) {
    throw std::invalid_argument("transmission sweep range must satisfy 0 <= t-min <= t-max <= 1");
  }

  RunManifest manifest;
  manifest.command = "loss";
  fill_manifest_common(manifest, flags);
  manifest.set("n", std::to_string(n));
  manifest.set("xi", format_double(xi));
  manifest.set("gamma", format_double(gamma));
  manifest.set("stats", to_string(stats));
  manifest.set("t_min", format_double(t_min));
  manifest.set("t_max", format_double(t_max));
  manifest.set("points", std::to_string(points));
  manifest.set("tolerance_visibility", format_double(kVisibilityTolerance));
  manifest.set("tolerance_delta_phi", format_double(kDeltaPhiTolerance));
  manifest.set("tolerance_entropy", format_double(kEntropyTolerance));

  Table table;
  table.columns = {"t",
                   "visibility",
                   "oracle_visibility",
                   "delta_phi_min",
                   "oracle_delta_phi_min",
                   "entropy",
                   "oracle_entropy",
                   "regime"};
  bool check_ok = true;
  const std::vector<std::string> cut = {modes::p0(), modes::p0_prime()};
  for (int j = 0; j < points; ++j) {
    const double t =
        points == 1 ? t_min : t_min + (t_max - t_min) * static_cast<double>(j) / (points - 1);
    ExperimentConfig cfg;
    cfg.n = n;
    cfg.xi = xi;
    cfg.gamma = gamma;
    cfg.transmissions.assign(static_cast<std::size_t>(n), t);
    cfg.statistics = stats;
    cfg.validate();

    const VisibilityEstimate vis = visibility(cfg);
    const double oracle_vis = cfg.transmission_product() + flags.corrupt_oracle;

    double delta = std::numeric_limits<double>::infinity();
    double oracle_delta = std::numeric_limits<double>::infinity();
    if (vis.product_form > 0.0) {
      delta = min_phase_uncertainty(cfg).delta_phi_min;
      oracle_delta = 1.0 / (n * vis.product_form) + flags.corrupt_oracle;
    }

    const double entropy = entanglement_entropy(build_state(cfg), cut);
    const double v = vis.product_form;
    double oracle_entropy = 0.0;
    for (double lambda : {(1.0 + v) / 2.0, (1.0 - v) / 2.0}) {
      if (lambda > 1e-12) oracle_entropy -= lambda * std::log(lambda);
    }
    oracle_entropy += flags.corrupt_oracle;

    check_ok = check_ok && within(vis.measured, oracle_vis, kVisibilityTolerance) &&
               within(delta, oracle_delta, kDeltaPhiTolerance) &&
               within(entropy, oracle_entropy, kEntropyTolerance);
    table.rows.push_back({t, vis.measured, oracle_vis, delta, oracle_delta, entropy,
                          oracle_entropy,
                          std::string(to_string(feasibility(n, vis.product_form)))});
  }
  return emit_and_check(flags, manifest, table, check_ok);
}

int run_state(const CommonFlags& flags, int n, double phi_flag) {
  ExperimentConfig cfg;
  cfg.n = n;
  cfg.xi = to_radians(flags.xi, flags.degrees);
  cfg.gamma = to_radians(flags.gamma, flags.degrees);
  cfg.phi = to_radians(phi_flag, flags.degrees);
  cfg.transmissions = parse_transmissions(flags.transmissions, n);
  cfg.statistics = parse_statistics(flags.stats);
  cfg.validate();

  RunManifest manifest;
  manifest.command = "state";
  fill_manifest_common(manifest, flags);
  manifest.set("n", std::to_string(n));
  manifest.set("xi", format_double(cfg.xi));
  manifest.set("gamma", format_double(cfg.gamma));
  manifest.set("phi", format_double(cfg.phi));
  manifest.set("t", join_doubles(cfg.transmissions));
  manifest.set("stats", to_string(cfg.statistics));
  {
    const auto registry = experiment_registry(n);
    std::string labels;
    for (std::size_t i = 0; i < registry->size(); ++i) {
      labels += (i == 0 ? "" : ";") + registry->label(i);
    }
    manifest.set("modes", labels);
  }

  const FockVector psi = build_state(cfg);
  Table table;
  table.columns = {"basis", "re", "im"};
  for (const auto& [basis, amp] : psi.sorted_terms()) {
    std::string key;
    for (std::size_t m = 0; m < basis.mode_count(); ++m) {
      key += (m == 0 ? "" : ";") + std::to_string(basis.occupation(m));
    }
    table.rows.push_back({std::move(key), amp.real(), amp.imag()});
  }
  return emit_and_check(flags, manifest, table, true);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fock-space simulator of a path-identity phase-measurement interferometer"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from an INI file (flags override it)");

  CommonFlags fringe_flags, sens_flags, loss_flags, state_flags;
  int fringe_n = 2, sens_n_max = 10, loss_n = 2, state_n = 2;
  double fringe_phi_min = 0.0, fringe_phi_max = 2.0 * kPi;
  int fringe_points = 101;
  double loss_t_min = 0.0, loss_t_max = 1.0;
  int loss_points = 21;
  double state_phi = 0.0;

  CLI::App* fringe = app.add_subcommand(
      "fringe",
      "Detection probabilities vs phi. "
      "Columns: phi, p_c, p_d, oracle_p_c, oracle_p_d, abs_error");
  fringe->add_option("--n", fringe_n, "Probe particle count")->check(CLI::PositiveNumber);
  fringe->add_option("--phi-min", fringe_phi_min, "Sweep start (radians)");
  fringe->add_option("--phi-max", fringe_phi_max, "Sweep end (radians)");
  fringe->add_option("--points", fringe_points, "Grid points")->check(CLI::PositiveNumber);
  add_common_flags(fringe, &fringe_flags, true);

  CLI::App* sens = app.add_subcommand(
      "sensitivity",
      "Minimum phase uncertainty vs n. "
      "Columns: n, visibility, phi_optimal, delta_phi_min, oracle_delta_phi_min, "
      "heisenberg_limit, shot_noise_limit, feasible, degenerate, regime");
  sens->add_option("--n-max", sens_n_max, "Largest probe count")->check(CLI::PositiveNumber);
  add_common_flags(sens, &sens_flags, true);

  CLI::App* loss = app.add_subcommand(
      "loss",
      "Sweep a uniform transmission. "
      "Columns: t, visibility, oracle_visibility, delta_phi_min, oracle_delta_phi_min, "
      "entropy, oracle_entropy, regime");
  loss->add_option("--n", loss_n, "Probe particle count")->check(CLI::PositiveNumber);
  loss->add_option("--t-min", loss_t_min, "Sweep start transmission");
  loss->add_option("--t-max", loss_t_max, "Sweep end transmission");
  loss->add_option("--points", loss_points, "Grid points")->check(CLI::PositiveNumber);
  add_common_flags(loss, &loss_flags, true);

  CLI::App* state = app.add_subcommand(
      "state",
      "Dump the prepared state's amplitudes. Columns: basis (semicolon-joined "
      "occupations, mode order in the manifest), re, im");
  state->add_option("--n", state_n, "Probe particle count")->check(CLI::PositiveNumber);
  state->add_option("--phi", state_phi, "Probed phase (radians)");
  add_common_flags(state, &state_flags, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (fringe->parsed()) {
      return run_fringe(fringe_flags, fringe_n, fringe_phi_min, fringe_phi_max, fringe_points);
    }
    if (sens->parsed()) return run_sensitivity(sens_flags, sens_n_max);
    if (loss->parsed()) return run_loss(loss_flags, loss_n, loss_t_min, loss_t_max, loss_points);
    if (state->parsed()) return run_state(state_flags, state_n, state_phi);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: domain: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: domain: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
