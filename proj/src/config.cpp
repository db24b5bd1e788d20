#include "jetpinn/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "jetpinn/experiment.hpp"

namespace jetpinn {

LossWeights ExperimentConfig::resolve_weights() const {
  LossWeights w = weights_auto ? default_weights(problem) : LossWeights{};
  for (int t = 0; t < kTermCount; ++t)
    if (weight_is_set[static_cast<std::size_t>(t)])
      w.w[static_cast<std::size_t>(t)] = weight_overrides.w[static_cast<std::size_t>(t)];
  return w;
}

void ExperimentConfig::apply_run_seed(std::uint64_t seed) {
  plan.seed = sampling_seed.value_or(seed);
  train.seed = net_seed.value_or(seed);
}

namespace {

struct Line {
  std::string section, key, value;
  int number;
};

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
  throw ConfigError(origin + ":" + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_real(const Line& ln, const std::string& origin) {
  try {
    std::size_t used = 0;
    const double v = std::stod(ln.value, &used);
    if (used != ln.value.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    fail(origin, ln.number, "expected a number for '" + ln.key + "', got '" + ln.value + "'");
  }
}

long parse_int(const Line& ln, const std::string& origin) {
  try {
    std::size_t used = 0;
    const long v = std::stol(ln.value, &used);
    if (used != ln.value.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    fail(origin, ln.number, "expected an integer for '" + ln.key + "', got '" + ln.value + "'");
  }
}

bool parse_bool(const Line& ln, const std::string& origin) {
  if (ln.value == "true" || ln.value == "1" || ln.value == "on") return true;
  if (ln.value == "false" || ln.value == "0" || ln.value == "off") return false;
  fail(origin, ln.number, "expected true/false for '" + ln.key + "'");
}

std::vector<long> parse_int_list(const Line& ln, const std::string& origin, std::size_t want = 0) {
  std::istringstream is(ln.value);
  std::vector<long> out;
  long v;
  while (is >> v) out.push_back(v);
  if (!is.eof() || out.empty() || (want && out.size() != want))
    fail(origin, ln.number,
         "expected " + (want ? std::to_string(want) + " " : "") + "integers for '" + ln.key + "'");
  return out;
}

// Sweep row: four count patterns in table notation, e.g.
//   row = 10x10x5 4x4x5 4x5 4x4
std::vector<int> parse_pattern(const std::string& tok, const Line& ln, const std::string& origin) {
  std::vector<int> dims;
  std::string cur;
  for (char c : tok + "x") {
    if (c == 'x') {
      if (cur.empty()) fail(origin, ln.number, "bad count pattern '" + tok + "'");
      dims.push_back(std::stoi(cur));
      cur.clear();
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      cur += c;
    } else {
      fail(origin, ln.number, "bad count pattern '" + tok + "'");
    }
  }
  return dims;
}

SamplingPlan parse_sweep_row(const Line& ln, const std::string& origin,
                             const SamplingPlan& base) {
  std::istringstream is(ln.value);
  std::string t1, t2, t3, t4, extra;
  if (!(is >> t1 >> t2 >> t3 >> t4) || (is >> extra))
    fail(origin, ln.number, "sweep row needs four patterns: interior boundary interface initial");
  SamplingPlan plan = base;
  auto d1 = parse_pattern(t1, ln, origin);
  auto d2 = parse_pattern(t2, ln, origin);
  auto d3 = parse_pattern(t3, ln, origin);
  auto d4 = parse_pattern(t4, ln, origin);
  if (d1.size() != 3 || d2.size() != 3 || d3.size() != 2 || d4.size() != 2)
    fail(origin, ln.number, "sweep row patterns must be nxnxn nx4xn nxn nxn");
  if (d2[1] != 4) fail(origin, ln.number, "boundary pattern middle factor is the 4 box edges");
  plan.interior_nx = d1[0]; plan.interior_ny = d1[1]; plan.interior_nt = d1[2];
  plan.boundary_nedge = d2[0]; plan.boundary_nt = d2[2];
  plan.interface_ntheta = d3[0]; plan.interface_nt = d3[1];
  plan.initial_nx = d4[0]; plan.initial_ny = d4[1];
  return plan;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
  ExperimentConfig cfg;
  bool problem_is_fsi = false;
  std::string obs_mode = "none";
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int lineno = 0;
  std::vector<Line> lines;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string s = trim(raw);
    const auto hash = s.find('#');
    if (hash != std::string::npos) s = trim(s.substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') fail(origin, lineno, "unterminated section header");
      section = s.substr(1, s.size() - 2);
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) fail(origin, lineno, "expected key = value");
    Line ln;
    ln.section = section;
    ln.key = trim(s.substr(0, eq));
    ln.value = trim(s.substr(eq + 1));
    ln.number = lineno;
    if (ln.key.empty() || ln.value.empty()) fail(origin, lineno, "expected key = value");
    lines.push_back(std::move(ln));
  }

  auto term_of = [](const std::string& key) -> std::optional<Term> {
    if (key == "omega_L1") return Term::L1;
    if (key == "omega_L2") return Term::L2;
    if (key == "omega_Gamma") return Term::Gamma;
    if (key == "omega_B1") return Term::B1;
    if (key == "omega_I1") return Term::I1;
    if (key == "omega_I2") return Term::I2;
    if (key == "omega_obs") return Term::Obs;
    return std::nullopt;
  };

  for (const Line& ln : lines) {
    const std::string& sec = ln.section;
    const std::string& key = ln.key;
    if (sec == "problem") {
      if (key == "kind") {
        if (ln.value == "two_phase") cfg.problem.kind = ProblemKind::TwoPhaseFlow;
        else if (ln.value == "fsi_wave") cfg.problem.kind = ProblemKind::FsiWave;
        else if (ln.value == "fsi_parabolic") cfg.problem.kind = ProblemKind::FsiParabolic;
        else fail(origin, ln.number, "kind must be two_phase, fsi_wave, or fsi_parabolic");
        problem_is_fsi = cfg.problem.kind != ProblemKind::TwoPhaseFlow;
      } else if (key == "rho1" || key == "rho_f") cfg.problem.fluid1.rho = parse_real(ln, origin);
      else if (key == "mu1" || key == "mu_f") cfg.problem.fluid1.mu = parse_real(ln, origin);
      else if (key == "rho2") cfg.problem.fluid2.rho = parse_real(ln, origin);
      else if (key == "mu2") cfg.problem.fluid2.mu = parse_real(ln, origin);
      else if (key == "rho_s") cfg.problem.solid.rho_s = parse_real(ln, origin);
      else if (key == "youngs_modulus") cfg.problem.solid.E = parse_real(ln, origin);
      else if (key == "poisson_ratio") cfg.problem.solid.nu = parse_real(ln, origin);
      else if (key == "literal_solution") cfg.problem.literal_solution = parse_bool(ln, origin);
      else if (key == "extra_terms") cfg.problem.extra_terms = parse_bool(ln, origin);
      else fail(origin, ln.number, "unknown key '" + key + "' in [problem]");
    } else if (sec == "sampling") {
      if (key == "interior") {
        auto d = parse_int_list(ln, origin, 3);
        cfg.plan.interior_nx = static_cast<int>(d[0]);
        cfg.plan.interior_ny = static_cast<int>(d[1]);
        cfg.plan.interior_nt = static_cast<int>(d[2]);
      } else if (key == "boundary") {
        auto d = parse_int_list(ln, origin, 3);
        if (d[1] != 4) fail(origin, ln.number, "boundary pattern middle factor is the 4 box edges");
        cfg.plan.boundary_nedge = static_cast<int>(d[0]);
        cfg.plan.boundary_nt = static_cast<int>(d[2]);
      } else if (key == "interface") {
        auto d = parse_int_list(ln, origin, 2);
        cfg.plan.interface_ntheta = static_cast<int>(d[0]);
        cfg.plan.interface_nt = static_cast<int>(d[1]);
      } else if (key == "initial") {
        auto d = parse_int_list(ln, origin, 2);
        cfg.plan.initial_nx = static_cast<int>(d[0]);
        cfg.plan.initial_ny = static_cast<int>(d[1]);
      } else if (key == "mode") {
        if (ln.value == "random") cfg.plan.grid_mode = false;
        else if (ln.value == "grid") cfg.plan.grid_mode = true;
        else fail(origin, ln.number, "mode must be random or grid");
      } else if (key == "seed") {
        cfg.sampling_seed = static_cast<std::uint64_t>(parse_int(ln, origin));
      } else if (key == "observation") {
        if (ln.value != "none" && ln.value != "default")
          fail(origin, ln.number, "observation must be none or default");
        obs_mode = ln.value;
      } else fail(origin, ln.number, "unknown key '" + key + "' in [sampling]");
    } else if (sec == "network") {
      if (key == "hidden") {
        auto d = parse_int_list(ln, origin);
        cfg.hidden.assign(d.begin(), d.end());
      } else if (key == "seed") {
        cfg.net_seed = static_cast<std::uint64_t>(parse_int(ln, origin));
      } else fail(origin, ln.number, "unknown key '" + key + "' in [network]");
    } else if (sec == "training") {
      if (key == "learning_rate") cfg.train.lr = parse_real(ln, origin);
      else if (key == "epochs") cfg.train.epochs = parse_int(ln, origin);
      else if (key == "log_interval") cfg.train.log_interval = parse_int(ln, origin);
      else if (key == "threads") cfg.train.threads = static_cast<int>(parse_int(ln, origin));
      else if (key == "deterministic") cfg.train.deterministic = parse_bool(ln, origin);
      else if (key == "abort_loss") cfg.train.abort_loss = parse_real(ln, origin);
      else fail(origin, ln.number, "unknown key '" + key + "' in [training]");
    } else if (sec == "weights") {
      if (key == "mode") {
        if (ln.value == "auto") cfg.weights_auto = true;
        else if (ln.value == "ones") cfg.weights_auto = false;
        else fail(origin, ln.number, "weights mode must be auto or ones");
      } else if (auto t = term_of(key)) {
        cfg.weight_overrides[*t] = parse_real(ln, origin);
        cfg.weight_is_set[static_cast<std::size_t>(*t)] = true;
      } else fail(origin, ln.number, "unknown key '" + key + "' in [weights]");
    } else if (sec == "evaluation") {
      if (key == "grid") {
        auto d = parse_int_list(ln, origin, 3);
        cfg.eval.nx = static_cast<int>(d[0]);
        cfg.eval.ny = static_cast<int>(d[1]);
        cfg.eval.nt = static_cast<int>(d[2]);
      } else fail(origin, ln.number, "unknown key '" + key + "' in [evaluation]");
    } else if (sec == "output") {
      if (key == "dir") cfg.outdir = ln.value;
      else fail(origin, ln.number, "unknown key '" + key + "' in [output]");
    } else if (sec == "sweep") {
      if (key == "row") cfg.sweep_rows.push_back(parse_sweep_row(ln, origin, cfg.plan));
      else if (key == "seeds") {
        auto d = parse_int_list(ln, origin);
        cfg.sweep_seeds.assign(d.begin(), d.end());
      } else fail(origin, ln.number, "unknown key '" + key + "' in [sweep]");
    } else {
      fail(origin, ln.number, "unknown section '[" + sec + "]'");
    }
  }

  if (problem_is_fsi && obs_mode != "none")
    throw ConfigError(origin + ": observation points apply to the two-phase problem only");
  if (obs_mode == "default") {
    for (auto [x, y] : observation_points_default()) cfg.plan.observation.emplace_back(x, y);
    for (auto& row : cfg.sweep_rows)
      for (auto [x, y] : observation_points_default()) row.observation.emplace_back(x, y);
  }
  try {
    cfg.problem.validate();
  } catch (const std::exception& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  return cfg;
}

ExperimentConfig parse_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str(), path);
}

}  // namespace jetpinn
