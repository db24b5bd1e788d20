#include "jetpinn/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace jetpinn {

std::vector<std::pair<double, double>> observation_points_default() {
  const double d = 0.5 * std::sqrt(0.5);  // 0.5 cos 45 = 0.5 sin 45
  return {{1.5 + d, 1.5 + d}, {1.5 - d, 1.5 + d}, {1.5 - d, 1.5 - d}, {1.5 + d, 1.5 - d},
          {1.5, 1.5}};
}

RunArtifacts run_experiment(const ExperimentConfig& cfg, bool write_outputs) {
  const Geometry geom;
  const LossWeights weights = cfg.resolve_weights();

  const auto start = std::chrono::steady_clock::now();
  RunArtifacts art;
  art.trained = train(cfg.problem, geom, cfg.plan, cfg.hidden, weights, cfg.train);
  art.report = evaluate_error(cfg.problem, geom, art.trained.net1, art.trained.net2, cfg.eval);
  art.report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  art.report.seed = cfg.train.seed;
  if (!art.trained.history.empty()) art.report.final_loss = art.trained.history.back().loss;

  if (write_outputs) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.outdir);
    write_history_csv(art.trained.history, cfg.outdir + "/history.csv");
    save_checkpoint(art.trained.net1, cfg.outdir + "/net1.ckpt");
    save_checkpoint(art.trained.net2, cfg.outdir + "/net2.ckpt");
    std::ofstream rep(cfg.outdir + "/report.txt");
    char buf[128];
    for (const auto& fe : art.report.fields) {
      std::snprintf(buf, sizeof(buf), "rel_l2 %-4s %.6e\n", fe.name.c_str(), fe.rel_l2);
      rep << buf;
    }
    std::snprintf(buf, sizeof(buf), "combined %.6e\n", art.report.combined);
    rep << buf;
    std::snprintf(buf, sizeof(buf), "final_loss %.6e\n", art.report.final_loss.total);
    rep << buf;
    rep << "aborted " << (art.trained.aborted ? art.trained.abort_reason : "no") << "\n";
  }
  return art;
}

namespace {

void fill_row_meta(SweepRowResult& row, const ExperimentConfig& cfg, const SamplingPlan& plan) {
  row.problem = cfg.problem.kind;
  if (cfg.problem.kind == ProblemKind::TwoPhaseFlow) {
    row.rho2_or_rhos = cfg.problem.fluid2.rho;
    row.mu2_or_E = cfg.problem.fluid2.mu;
  } else {
    row.rho2_or_rhos = cfg.problem.solid.rho_s;
    row.mu2_or_E = cfg.problem.solid.E;
  }
  row.M_L = plan.interior_count();
  row.M_B = plan.boundary_count();
  row.M_Gamma = plan.interface_count();
  row.M_I = plan.initial_count();
}

const char* problem_name(ProblemKind k) {
  switch (k) {
    case ProblemKind::TwoPhaseFlow: return "two_phase";
    case ProblemKind::FsiWave: return "fsi_wave";
    case ProblemKind::FsiParabolic: return "fsi_parabolic";
  }
  return "?";
}

ProblemKind problem_from_name(const std::string& s) {
  if (s == "two_phase") return ProblemKind::TwoPhaseFlow;
  if (s == "fsi_wave") return ProblemKind::FsiWave;
  if (s == "fsi_parabolic") return ProblemKind::FsiParabolic;
  throw std::runtime_error("unknown problem name in sweep CSV: " + s);
}

}  // namespace

std::vector<SweepRowResult> run_sweep(const ExperimentConfig& cfg) {
  std::vector<SamplingPlan> rows = cfg.sweep_rows;
  if (rows.empty()) rows.push_back(cfg.plan);
  std::vector<SweepRowResult> out;
  for (const SamplingPlan& plan : rows) {
    for (std::uint64_t seed : cfg.sweep_seeds) {
      ExperimentConfig one = cfg;
      one.plan = plan;
      one.sampling_seed.reset();
      one.net_seed.reset();
      one.apply_run_seed(seed);
      SweepRowResult row;
      fill_row_meta(row, cfg, plan);
      row.seed = seed;
      try {
        RunArtifacts art = run_experiment(one, false);
        if (art.trained.aborted) throw std::runtime_error(art.trained.abort_reason);
        row.approx_error = art.report.combined;
        row.loss_error = art.report.final_loss.total;
        row.wall_seconds = art.report.wall_seconds;
      } catch (const std::exception& e) {
        std::cerr << "jetpinn: sweep row failed (seed " << seed << "): " << e.what() << "\n";
        row.approx_error = std::nan("");
        row.loss_error = std::nan("");
      }
      out.push_back(row);
    }
  }
  return out;
}

void write_sweep_csv(const std::vector<SweepRowResult>& rows, const std::string& path) {
  std::ofstream f(path, std::ios::binary);  // LF line endings everywhere
  if (!f) throw std::runtime_error("write_sweep_csv: cannot open " + path);
  f << "problem,rho2_or_rhos,mu2_or_E,M_L,M_B,M_Gamma,M_I,seed,approx_error,loss_error,"
       "wall_seconds\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,%d,%d,%d,%d,%llu,%.17g,%.17g,%.17g\n",
                  problem_name(r.problem), r.rho2_or_rhos, r.mu2_or_E, r.M_L, r.M_B, r.M_Gamma,
                  r.M_I, static_cast<unsigned long long>(r.seed), r.approx_error, r.loss_error,
                  r.wall_seconds);
    f << buf;
  }
}

std::vector<SweepRowResult> read_sweep_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("read_sweep_csv: cannot open " + path);
  std::string line;
  if (!std::getline(f, line)) throw std::runtime_error("read_sweep_csv: empty file " + path);
  std::vector<SweepRowResult> rows;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream is(line);
    std::string prob;
    SweepRowResult r;
    unsigned long long seed = 0;
    if (!(is >> prob >> r.rho2_or_rhos >> r.mu2_or_E >> r.M_L >> r.M_B >> r.M_Gamma >> r.M_I >>
          seed >> r.approx_error >> r.loss_error >> r.wall_seconds))
      throw std::runtime_error("read_sweep_csv: bad row: " + line);
    r.problem = problem_from_name(prob);
    r.seed = seed;
    rows.push_back(r);
  }
  return rows;
}

void dump_fields_csv(const ProblemSpec& spec, const Geometry& geom, const Network* n1,
                     const Network* n2, const EvalGrid& grid, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("dump_fields_csv: cannot open " + path);
  const auto names = error_field_names(spec.kind);
  f << "x,y,t,subdomain";
  for (const auto& n : names) f << ",exact_" << n;
  if (n1 && n2)
    for (const auto& n : names) f << ",net_" << n;
  f << ",residual_max\n";
  const int w1 = output_layout(spec.kind).first;
  char buf[160];
  for (int it = 0; it < grid.nt; ++it) {
    SpaceTimePoint p;
    p.t = grid.nt == 1 ? 0.0 : geom.t_end * it / (grid.nt - 1);
    for (int ix = 0; ix < grid.nx; ++ix) {
      p.x = geom.box_lo + (geom.box_hi - geom.box_lo) * ix / (grid.nx - 1);
      for (int iy = 0; iy < grid.ny; ++iy) {
        p.y = geom.box_lo + (geom.box_hi - geom.box_lo) * iy / (grid.ny - 1);
        const Classify cls = classify(geom, p);
        if (cls == Classify::OnInterface) continue;
        const int sub = static_cast<int>(cls);
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%d", p.x, p.y, p.t, sub);
        f << buf;
        const std::vector<double> want = exact_values(spec, sub, p);
        for (std::size_t k = 0; k < names.size(); ++k) {
          const bool mine = (sub == 1) ? k < static_cast<std::size_t>(w1)
                                       : k >= static_cast<std::size_t>(w1);
          if (mine) {
            const std::size_t base = (sub == 1) ? 0 : static_cast<std::size_t>(w1);
            std::snprintf(buf, sizeof(buf), ",%.17g", want[k - base]);
            f << buf;
          } else {
            f << ",";
          }
        }
        double res_max = 0.0;
        if (n1 && n2) {
          const Network& net = (sub == 1) ? *n1 : *n2;
          const std::vector<double> got = forward_values(net.spec, net.params, p);
          for (std::size_t k = 0; k < names.size(); ++k) {
            const bool mine = (sub == 1) ? k < static_cast<std::size_t>(w1)
                                         : k >= static_cast<std::size_t>(w1);
            if (mine) {
              const std::size_t base = (sub == 1) ? 0 : static_cast<std::size_t>(w1);
              std::snprintf(buf, sizeof(buf), ",%.17g", got[k - base]);
              f << buf;
            } else {
              f << ",";
            }
          }
          const auto provider = network_provider(spec, *n1, *n2);
          const auto data = synthesize_pde_data(spec, sub, p);
          const auto rv = pde_residual(spec, sub, provider(sub, p), data);
          res_max = rv.max_abs();
        } else {
          const auto data = synthesize_pde_data(spec, sub, p);
          const auto rv = pde_residual(spec, sub, exact_solution(spec, sub, p), data);
          res_max = rv.max_abs();
        }
        std::snprintf(buf, sizeof(buf), ",%.17g\n", res_max);
        f << buf;
      }
    }
  }
}

}  // namespace jetpinn
