// Copyright 2026 The rdmrep Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include "rdmrep/determinants.hpp"
#include "rdmrep/dualbounds.hpp"
#include "rdmrep/functionals.hpp"
#include "rdmrep/integrals.hpp"
#include "rdmrep/manybody.hpp"
#include "rdmrep/nrepcheck.hpp"
#include "rdmrep/textio.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

namespace rdmrep::cli {

namespace {

using Json = nlohmann::ordered_json;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Json to_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json to_json(const Eigen::MatrixXd& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(to_json(Eigen::VectorXd(m.row(r).transpose())));
  return out;
}

std::string text_value(const Json& v) {
  if (v.is_number_float()) return fmt(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + text_value(v[i]);
    return s + "]";
  }
  if (v.is_object()) {
    std::string s;
    for (auto it = v.begin(); it != v.end(); ++it) s += (s.empty() ? "" : "  ") + it.key() + "=" + text_value(it.value());
    return s;
  }
  return v.dump();
}

// Text reports are `key = value` lines; arrays of objects become indented rows.
void emit(std::ostream& out, const Json& report, bool json) {
  if (json) {
    out << report.dump(2) << '\n';
    return;
  }
  for (auto it = report.begin(); it != report.end(); ++it) {
    const Json& v = it.value();
    if (v.is_array() && !v.empty() && v.front().is_object()) {
      out << it.key() << ":\n";
      for (const auto& row : v) out << "  " << text_value(row) << '\n';
    } else {
      out << it.key() << " = " << text_value(v) << '\n';
    }
  }
}

struct SystemFlags {
  std::string model;
  std::string fcidump;
  std::optional<double> t, u, j11, j22, j12, k12;

  void attach(CLI::App* cmd) {
    cmd->add_option("--model", model, "Bundled model: hubbard_dimer or model_a");
    cmd->add_option("--fcidump", fcidump, "FCIDUMP integral file")->excludes("--model");
    cmd->add_option("--t", t, "Hubbard hopping");
    cmd->add_option("--U", u, "Hubbard on-site repulsion");
    cmd->add_option("--J11", j11, "model_a Coulomb (11|11)");
    cmd->add_option("--J22", j22, "model_a Coulomb (22|22)");
    cmd->add_option("--J12", j12, "model_a Coulomb (11|22)");
    cmd->add_option("--K12", k12, "model_a exchange (12|12)");
  }

  SystemSpec load(std::ostream& err) const {
    if (!fcidump.empty()) return read_fcidump(fcidump);
    if (model.empty()) throw InputError("a system is required: --model or --fcidump");
    ModelParams params;
    const std::pair<const char*, const std::optional<double>*> keys[] = {
        {"t", &t}, {"U", &u}, {"J11", &j11}, {"J22", &j22}, {"J12", &j12}, {"K12", &k12}};
    for (const auto& [name, value] : keys)
      if (*value) params[name] = **value;
    std::vector<std::string> warnings;
    SystemSpec spec = builtin_model(model, params, &warnings);
    for (const auto& w : warnings) err << "warning: " << w << '\n';
    return spec;
  }
};

struct GammaFlags {
  std::string file;
  std::vector<double> occupations;

  void attach(CLI::App* cmd) {
    auto* g = cmd->add_option("--gamma", file, "1-RDM file (occupations = [..] or matrix = [[..]])");
    cmd->add_option("--occ", occupations, "Diagonal 1-RDM, comma separated")->delimiter(',')->excludes(g);
  }

  // The result always passes the Coleman conditions.
  OneRDM load(const SystemSpec& spec) const {
    OneRDM gamma;
    if (!file.empty()) {
      gamma = read_gamma_spec(file, spec.m_spatial);
    } else if (!occupations.empty()) {
      if (static_cast<int>(occupations.size()) != spec.m_spatial) {
        throw DimensionError("expected " + std::to_string(spec.m_spatial) + " occupations");
      }
      gamma = OneRDM::diagonal(Eigen::Map<const Eigen::VectorXd>(occupations.data(), spec.m_spatial));
    } else {
      throw InputError("a 1-RDM is required: --gamma or --occ");
    }
    const auto coleman = coleman_check(gamma, spec.n_electrons);
    if (!coleman.pass) throw InputError("1-RDM fails the Coleman conditions: " + coleman.violations.front());
    return gamma;
  }
};

Json bound_report(const BoundResult& r) {
  Json j;
  j["value"] = r.value;
  j["duality_gap"] = r.duality_gap;
  j["residual"] = r.residual;
  j["converged"] = r.converged;
  j["potential"] = to_json(r.optimal_potential.matrix());
  return j;
}

int cmd_exact(const SystemSpec& spec, double lambda, bool json, std::ostream& out) {
  const ModelSpace space(spec);
  const GroundSpace ground = ground_state(space, spec.h, lambda);
  const OneRDM gamma = one_rdm(space.fock(), Ensemble::equal_weight(ground));
  Json r;
  r["lambda"] = lambda;
  r["E"] = ground.energy;
  r["degeneracy"] = ground.degeneracy();
  r["natural_occupations"] = to_json(gamma.natural_occupations());
  emit(out, r, json);
  return kSuccess;
}

int cmd_bounds(const SystemSpec& spec, const OneRDM& gamma, const std::string& dump, bool verify, std::uint64_t seed,
               bool json, std::ostream& out) {
  const ModelSpace space(spec);
  const BoundResult lb = lower_bound(space, gamma);
  const BoundResult ub = upper_bound(space, gamma);
  Json r;
  r["lb"] = lb.value;
  r["ub"] = ub.value;
  r["gap_lb"] = lb.duality_gap;
  r["gap_ub"] = ub.duality_gap;
  r["residual_lb"] = lb.residual;
  r["residual_ub"] = ub.residual;
  r["hf"] = hf_vee(gamma, spec.v);
  if (json) {
    r["lower"] = bound_report(lb);
    r["upper"] = bound_report(ub);
  } else {
    r["potential_lb"] = to_json(lb.optimal_potential.matrix());
    r["potential_ub"] = to_json(ub.optimal_potential.matrix());
  }
  if (verify) {
    const OracleResult olb = primal_oracle(space, gamma, +1.0, 50, seed);
    const OracleResult oub = primal_oracle(space, gamma, -1.0, 50, seed);
    r["oracle_lb"] = olb.value;
    r["oracle_ub"] = -oub.value;
  }
  if (!dump.empty()) {
    std::ofstream file(dump);
    if (!file) throw InputError("cannot write " + dump);
    write_potentials(file, {{+1.0, lb.optimal_potential}, {-1.0, ub.optimal_potential}});
  }
  const bool converged = lb.converged && ub.converged;
  r["converged"] = converged;
  emit(out, r, json);
  return converged ? kSuccess : kNotConverged;
}

struct SweepRow {
  double n = 0.0, lb = 0.0, ub = 0.0, hf = 0.0, gap_lb = 0.0, gap_ub = 0.0;
  bool converged = false;
};

int cmd_sweep(const SystemSpec& spec, int points, const std::string& path, std::ostream& out, std::ostream& err) {
  if (spec.m_spatial != 2) throw DimensionError("sweep needs a 2-orbital system");
  if (points < 2) throw InputError("--points must be at least 2");
  const ModelSpace space(spec);
  std::vector<SweepRow> rows(static_cast<std::size_t>(points));
  std::vector<std::string> failures(rows.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < rows.size(); k = next++) {
      SweepRow& row = rows[k];
      row.n = std::clamp(2.0 * static_cast<double>(k) / (points - 1), 1e-8, 2.0 - 1e-8);
      try {
        const OneRDM gamma = OneRDM::diagonal(Eigen::Vector2d(row.n, 2.0 - row.n));
        const BoundResult lb = lower_bound(space, gamma);
        const BoundResult ub = upper_bound(space, gamma);
        row = {row.n, lb.value, ub.value, hf_vee(gamma, spec.v), lb.duality_gap, ub.duality_gap,
               lb.converged && ub.converged};
      } catch (const std::exception& e) {
        failures[k] = e.what();
      }
    }
  };
  const unsigned n_threads = std::max(1u, std::min(std::thread::hardware_concurrency(), static_cast<unsigned>(points)));
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (const auto& f : failures)
    if (!f.empty()) throw std::runtime_error(f);

  std::ofstream file;
  if (!path.empty()) {
    file.open(path);
    if (!file) throw InputError("cannot write " + path);
  }
  std::ostream& csv = path.empty() ? out : file;
  csv << "n,lb,ub,hf,gap_lb,gap_ub\n";
  bool converged = true;
  for (const auto& row : rows) {
    csv << fmt(row.n) << ',' << fmt(row.lb) << ',' << fmt(row.ub) << ',' << fmt(row.hf) << ',' << fmt(row.gap_lb)
        << ',' << fmt(row.gap_ub) << '\n';
    converged = converged && row.converged;
  }
  if (!converged) err << "error: some bounds did not reach the duality-gap tolerance\n";
  return converged ? kSuccess : kNotConverged;
}

int cmd_check(const SystemSpec& spec, const OneRDM& gamma, std::optional<double> w, const std::string& functional,
              double tol, bool json, std::ostream& out) {
  const ModelSpace space(spec);
  double value = 0.0;
  if (w) {
    value = *w;
  } else if (functional == "hf") {
    value = hartree_fock_functional()(gamma, spec);
  } else if (!functional.empty()) {
    value = tabulated_functional(functional, read_functional_table(functional, spec.m_spatial))(gamma, spec);
  } else {
    throw InputError("a candidate value is required: --w or --functional");
  }
  const Verdict verdict = check_pair(space, {value, gamma}, tol);
  Json r;
  r["w"] = value;
  r["verdict"] = to_string(verdict.status);
  r["lb"] = verdict.lb;
  r["ub"] = verdict.ub;
  r["reason"] = verdict.reason;
  if (verdict.witness) {
    r["witness_lambda"] = verdict.witness->half_space.lambda;
    r["witness_margin"] = verdict.witness->margin;
    r["witness_h"] = to_json(verdict.witness->half_space.h_tilde.matrix());
  }
  emit(out, r, json);
  switch (verdict.status) {
    case Representability::representable:
      return kSuccess;
    case Representability::not_representable:
      return kNotRepresentable;
    case Representability::inconclusive:
      break;
  }
  return kNotConverged;
}

int cmd_maxmin(const SystemSpec& spec, double lambda, const std::string& witness_file, std::optional<int> rounds,
               const std::vector<double>& box_flag, bool json, std::ostream& out) {
  if (lambda != 1.0 && lambda != -1.0) throw InputError("maxmin needs --lambda 1 or -1");
  if (witness_file.empty() == !rounds) throw InputError("maxmin needs exactly one of --witness-file and --auto");
  const ModelSpace space(spec);
  Box box;
  if (box_flag.empty()) {
    box = default_box(space);
  } else if (box_flag.size() == 2) {
    box = {box_flag[0], box_flag[1]};
  } else {
    throw InputError("--box takes two values: lo,hi");
  }
  const double exact = ground_state(space, spec.h, lambda).energy;
  Json r;
  r["lambda"] = lambda;
  r["E_gs"] = exact;
  r["box"] = Json::array({box.w_lo, box.w_hi});
  Json rows = Json::array();
  MaxMinResult last;
  if (rounds) {
    const CuttingPlaneResult cp = cutting_plane(space, lambda, *rounds, box);
    for (const auto& round : cp.rounds) rows.push_back({{"constraints", round.constraints}, {"value", round.value}, {"gap", round.gap}});
    last = cp.last;
  } else {
    std::vector<HalfSpace> constraints;
    auto record = [&] {
      last = max_min(space, lambda, constraints, box);
      rows.push_back({{"constraints", constraints.size()}, {"value", last.value}, {"gap", exact - last.value}});
    };
    record();
    for (const auto& entry : read_potentials(witness_file, spec.m_spatial)) {
      constraints.push_back(make_half_space(space, entry.h, entry.lambda));
      record();
    }
  }
  r["trajectory"] = rows;
  r["value"] = last.value;
  r["gap"] = exact - last.value;
  r["minimizer_w"] = last.minimizer.w;
  r["minimizer_gamma"] = to_json(last.minimizer.gamma.matrix());
  emit(out, r, json);
  return kSuccess;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact bounds and representability tests for 1-RDM interaction functionals", "rdmrep"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  std::uint64_t seed = 0;
  app.add_flag("--json", json, "Structured JSON report");
  app.add_option("--seed", seed, "Seed for every stochastic component");

  SystemFlags sys_exact, sys_bounds, sys_sweep, sys_check, sys_maxmin;
  GammaFlags gam_bounds, gam_check;

  double lambda_exact = 1.0;
  auto* exact = app.add_subcommand("exact", "Ground energy of h + lambda V_ee");
  sys_exact.attach(exact);
  exact->add_option("--lambda", lambda_exact, "Interaction strength");

  std::string dump;
  bool verify = false;
  auto* bounds = app.add_subcommand("bounds", "Certified lower and upper bounds of W at a 1-RDM");
  sys_bounds.attach(bounds);
  gam_bounds.attach(bounds);
  bounds->add_option("--out", dump, "Write the optimal potentials as a witness file");
  bounds->add_flag("--verify", verify, "Cross-check with the randomized primal search");

  int points = 41;
  std::string sweep_out;
  auto* sweep = app.add_subcommand("sweep", "Bounds and Hartree-Fock along diag(n, 2 - n) as CSV");
  sys_sweep.attach(sweep);
  sweep->add_option("--points", points, "Number of occupation points");
  sweep->add_option("--out", sweep_out, "CSV path (default: standard output)");

  std::optional<double> w;
  std::string functional;
  double tol = 1e-6;
  auto* check = app.add_subcommand("check", "Representability of a candidate (W, gamma)");
  sys_check.attach(check);
  gam_check.attach(check);
  auto* w_opt = check->add_option("--w", w, "Candidate interaction energy");
  check->add_option("--functional", functional, "hf or a tabulated functional file")->excludes(w_opt);
  check->add_option("--tol", tol, "Membership tolerance");

  double lambda_maxmin = 1.0;
  std::string witness_file;
  std::optional<int> rounds;
  std::vector<double> box;
  auto* maxmin = app.add_subcommand("maxmin", "Bivariational max-min over half-space constraints");
  sys_maxmin.attach(maxmin);
  maxmin->add_option("--lambda", lambda_maxmin, "Interaction sign, 1 or -1");
  maxmin->add_option("--witness-file", witness_file, "Potentials defining the half-spaces");
  maxmin->add_option("--auto", rounds, "Cutting-plane rounds")->check(CLI::Range(0, 64));
  maxmin->add_option("--box", box, "W box as lo,hi")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    if (*exact) return cmd_exact(sys_exact.load(err), lambda_exact, json, out);
    if (*bounds) {
      const SystemSpec spec = sys_bounds.load(err);
      return cmd_bounds(spec, gam_bounds.load(spec), dump, verify, seed, json, out);
    }
    if (*sweep) return cmd_sweep(sys_sweep.load(err), points, sweep_out, out, err);
    if (*check) {
      const SystemSpec spec = sys_check.load(err);
      return cmd_check(spec, gam_check.load(spec), w, functional, tol, json, out);
    }
    if (*maxmin) return cmd_maxmin(sys_maxmin.load(err), lambda_maxmin, witness_file, rounds, box, json, out);
  } catch (const InfeasibleConstraints& e) {
    err << "error: " << e.what() << '\n';
    return kNotConverged;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const DimensionOverflow& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNotConverged;
  }
  return kInputError;
}

}  // namespace rdmrep::cli
