#include <cmath>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "actk/balance.hpp"
#include "actk/io.hpp"
#include "actk/model.hpp"
#include "actk/ode.hpp"
#include "actk/oracle.hpp"
#include "actk/ssa.hpp"
#include "actk/stationary.hpp"

namespace {

constexpr const char* kToolVersion = "actk 0.1.0";

using actk::Distribution;
using actk::ParamsConfig;
using actk::State;
using nlohmann::json;

void write_manifest(const std::string& command, const ParamsConfig& cfg,
                    const std::vector<std::string>& outputs,
                    const std::string& manifest_path,
                    std::optional<uint64_t> seed = std::nullopt) {
  json j;
  j["command"] = command;
  j["params_echo"] = json::parse(actk::params_to_json(cfg));
  if (seed) j["seed"] = *seed;
  j["outputs"] = outputs;
  j["tool_version"] = kToolVersion;
  actk::write_file_atomic(manifest_path, j.dump(2) + "\n");
}

ParamsConfig load_and_note_relabel(const std::string& path) {
  ParamsConfig cfg = actk::load_params(path);
  if (cfg.params.d == 2 && cfg.params.kappa[0] > cfg.params.kappa[1])
    std::cerr << "note: species relabeled internally so kappa_1 <= kappa_2\n";
  return cfg;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* regime_name(actk::Regime r) {
  switch (r) {
    case actk::Regime::BoundaryBimodal: return "BOUNDARY_BIMODAL";
    case actk::Regime::Flat: return "FLAT";
    case actk::Regime::InteriorUnimodal: return "INTERIOR_UNIMODAL";
  }
  return "?";
}

int cmd_stationary(const std::string& config, const std::string& out,
                   double tail_tol) {
  ParamsConfig cfg = load_and_note_relabel(config);
  Distribution dist = actk::build_distribution(cfg.params, tail_tol);
  actk::write_distribution_csv(dist, out);
  write_manifest("stationary", cfg, {out}, out + ".manifest.json");
  return 0;
}

int cmd_balance(const std::string& config, const std::string& out, int nmax,
                bool ratios) {
  ParamsConfig cfg = load_and_note_relabel(config);
  actk::BalanceEvaluator ev(cfg.params);
  std::ostringstream csv;
  if (ratios) {
    csv << "n,r_shift_minus,r_shift_plus\n";
    for (int n = 0; n <= nmax; ++n) {
      auto [rm, rp] = ev.hyp_ratios(n);
      csv << n << "," << fmt(rm) << "," << fmt(rp) << "\n";
    }
  } else {
    csv << "a1,a2,n,bstar_direct,bstar_closed,abs_diff\n";
    for (int n = 0; n <= nmax; ++n) {
      for (int a1 = 0; a1 <= n; ++a1) {
        State a{a1, n - a1};
        double bd = ev.direct(a).bstar;
        double bc = ev.closed_form(a);
        csv << a1 << "," << (n - a1) << "," << n << "," << fmt(bd) << ","
            << fmt(bc) << "," << fmt(std::abs(bd - bc)) << "\n";
      }
    }
  }
  actk::write_file_atomic(out, csv.str());
  write_manifest("balance", cfg, {out}, out + ".manifest.json");
  return 0;
}

int cmd_simulate(const std::string& config, const std::string& out,
                 double t_max, uint64_t max_events, uint64_t seed,
                 double burn_in) {
  ParamsConfig cfg = load_and_note_relabel(config);
  actk::SimConfig sim;
  sim.t_max = t_max;
  sim.max_events = max_events;
  sim.seed = seed;
  sim.burn_in = burn_in;
  sim.initial.a.assign(static_cast<size_t>(cfg.params.d), 0);
  actk::OccupationMeasure occ = actk::gillespie_run(cfg.params, sim);
  actk::write_occupation_csv(occ, out);

  json meta;
  meta["seed"] = seed;
  meta["events"] = occ.events;
  meta["total_time"] = occ.total_time;
  meta["params_echo"] = json::parse(actk::params_to_json(cfg));
  const std::string meta_path = out + ".meta.json";
  actk::write_file_atomic(meta_path, meta.dump(2) + "\n");
  write_manifest("simulate", cfg, {out, meta_path}, out + ".manifest.json", seed);
  return 0;
}

int cmd_fixed_point(const std::string& config, const std::string& out) {
  ParamsConfig cfg = actk::load_params(config);
  if (!cfg.scaled)
    throw std::invalid_argument("fixed-point requires a 'scaled' config");
  actk::FixedPoint fp = actk::fixed_point(*cfg.scaled);
  auto [r1, r2] = actk::ode_rhs(*cfg.scaled, fp.a1_star, fp.a2_star);
  json j;
  j["a1_star"] = fp.a1_star;
  j["a2_star"] = fp.a2_star;
  j["stable"] = fp.stable;
  j["residual"] = std::max(std::abs(r1), std::abs(r2));
  std::string text = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    actk::write_file_atomic(out, text);
    write_manifest("fixed-point", cfg, {out}, out + ".manifest.json");
  }
  return 0;
}

int cmd_exact(const std::string& config, const std::string& out,
              const std::string& nmax_str, double tail_tol) {
  ParamsConfig cfg = load_and_note_relabel(config);
  actk::TruncationSpec spec;
  if (nmax_str == "auto") {
    spec.n_max = actk::poisson_nmax(cfg.params.poisson_mean(), tail_tol);
  } else {
    spec.n_max = std::stoi(nmax_str);
  }
  spec.use_sparse_lu = true;
  Distribution dist = actk::stationary_truncated(cfg.params, spec);
  actk::write_distribution_csv(dist, out);
  write_manifest("exact", cfg, {out}, out + ".manifest.json");
  return 0;
}

int cmd_compare(const std::string& a_path, const std::string& b_path,
                const std::string& out) {
  Distribution da = actk::read_distribution_csv(a_path);
  Distribution db = actk::read_distribution_csv(b_path);
  const double tv = actk::tv_distance(da, db);
  std::ostringstream report;
  report << "tv_distance," << fmt(tv) << "\n";
  report << "states_a," << da.size() << "\n";
  report << "states_b," << db.size() << "\n";
  auto print_modes = [&report](const char* tag, const Distribution& d) {
    auto modes = actk::distribution_modes(d);
    size_t shown = 0;
    for (const State& m : modes) {
      if (++shown > 10) break;
      report << tag;
      for (int i = 0; i < m.d(); ++i) report << "," << m[i];
      report << "\n";
    }
  };
  print_modes("mode_a", da);
  print_modes("mode_b", db);
  std::cout << report.str();
  if (!out.empty()) {
    std::ostringstream diff;
    diff << "state,p_a,p_b,abs_diff\n";
    for (const State& s : da.sorted_states()) {
      double pa = da.prob(s), pb = db.prob(s);
      diff << s[0];
      for (int i = 1; i < s.d(); ++i) diff << ";" << s[i];
      diff << "," << fmt(pa) << "," << fmt(pb) << "," << fmt(std::abs(pa - pb))
           << "\n";
    }
    actk::write_file_atomic(out, diff.str());
  }
  return 0;
}

int cmd_regimes(const std::string& config, int grid) {
  ParamsConfig cfg = actk::load_params(config);
  if (!cfg.scaled) throw std::invalid_argument("regimes requires a 'scaled' config");
  std::cout << "V,D,DV,d,regime\n";
  auto emit = [](const actk::ScaledParams& sp) {
    actk::RegimeLabel rl = actk::regime_classify(sp);
    std::cout << fmt(sp.V) << "," << fmt(sp.D) << "," << fmt(rl.dv) << ","
              << rl.d << "," << regime_name(rl.value)
              << (rl.near_equal_warning ? " (near-equal)" : "") << "\n";
  };
  if (grid <= 1) {
    emit(*cfg.scaled);
  } else {
    for (int i = 0; i < grid; ++i) {
      for (int j = 0; j < grid; ++j) {
        actk::ScaledParams sp = *cfg.scaled;
        // log-spaced factors in [1/10, 10] around the base point
        sp.V *= std::pow(10.0, -1.0 + 2.0 * i / (grid - 1));
        sp.D *= std::pow(10.0, -1.0 + 2.0 * j / (grid - 1));
        emit(sp);
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stationary-distribution toolkit for open autocatalytic networks"};
  app.require_subcommand(1);

  std::string config, out, a_path, b_path, nmax_str = "auto";
  double tail_tol = 1e-12, t_max = 0.0, burn_in = 0.0;
  uint64_t max_events = 0, seed = 1;
  int nmax = 60, grid = 1;
  bool ratios = false;

  auto* st = app.add_subcommand("stationary", "Emit the analytic stationary law as CSV");
  st->add_option("--config", config)->required();
  st->add_option("--out", out)->required();
  st->add_option("--tail-tol", tail_tol);

  auto* bal = app.add_subcommand("balance", "Emit the balance-error grid (or ratio series)");
  bal->add_option("--config", config)->required();
  bal->add_option("--out", out)->required();
  bal->add_option("--nmax", nmax);
  bal->add_flag("--ratios", ratios);

  auto* sim = app.add_subcommand("simulate", "Gillespie run; emits occupation CSV");
  sim->add_option("--config", config)->required();
  sim->add_option("--out", out)->required();
  sim->add_option("--t-max", t_max);
  sim->add_option("--max-events", max_events);
  sim->add_option("--seed", seed);
  sim->add_option("--burn-in", burn_in);

  auto* fp = app.add_subcommand("fixed-point", "Mean-field fixed point as JSON");
  fp->add_option("--config", config)->required();
  fp->add_option("--out", out);

  auto* ex = app.add_subcommand("exact", "Truncated master-equation solve as CSV");
  ex->add_option("--config", config)->required();
  ex->add_option("--out", out)->required();
  ex->add_option("--nmax", nmax_str);
  ex->add_option("--tail-tol", tail_tol);

  auto* cmp = app.add_subcommand("compare", "TV distance and mode report for two CSVs");
  cmp->add_option("--a", a_path)->required();
  cmp->add_option("--b", b_path)->required();
  cmp->add_option("--out", out);

  auto* reg = app.add_subcommand("regimes", "Classify DV vs d over a (V, D) grid");
  reg->add_option("--config", config)->required();
  reg->add_option("--grid", grid);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (st->parsed()) return cmd_stationary(config, out, tail_tol);
    if (bal->parsed()) return cmd_balance(config, out, nmax, ratios);
    if (sim->parsed()) return cmd_simulate(config, out, t_max, max_events, seed, burn_in);
    if (fp->parsed()) return cmd_fixed_point(config, out);
    if (ex->parsed()) return cmd_exact(config, out, nmax_str, tail_tol);
    if (cmp->parsed()) return cmd_compare(a_path, b_path, out);
    if (reg->parsed()) return cmd_regimes(config, grid);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "numerical validity error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
