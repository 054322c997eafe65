// Copyright 2026 The rdmrep Authors
// SPDX-License-Identifier: Apache-2.0

#include "rdmrep/dualbounds.hpp"

#include "rdmrep/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace rdmrep {

namespace {

// Divided difference of exp(-beta (E - E0)) between two eigenvalues whose
// shifted Boltzmann factors are wj and wl.
double boltzmann_divided_difference(double ej, double wj, double el, double wl, double beta) {
  if (ej < el) {
    std::swap(ej, el);
    std::swap(wj, wl);
  }
  const double delta = ej - el;
  if (delta == 0.0) return -beta * wl;
  return wl * std::expm1(-beta * delta) / delta;
}

// Q^T M Q for block-diagonal M whose blocks are given per sector.
template <class BlockFn>
Eigen::MatrixXd project_blocks(const FockSpace& fock, const Eigen::MatrixXd& q, BlockFn&& block) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(q.cols(), q.cols());
  for (std::size_t s = 0; s < fock.n_sectors(); ++s) {
    const auto qs = q.middleRows(fock.offset(s), fock.sector_dim(s));
    out.noalias() += qs.transpose() * block(s) * qs;
  }
  return out;
}

// Euclidean projection onto the probability simplex.
Eigen::VectorXd project_simplex(const Eigen::VectorXd& v) {
  std::vector<double> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cumulative += u[i];
    const double t = (cumulative - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) theta = t;
  }
  return (v.array() - theta).cwiseMax(0.0);
}

// Projection onto {rho symmetric, rho >= 0, tr rho = 1}.
Eigen::MatrixXd project_spectraplex(const Eigen::MatrixXd& x) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (x + x.transpose()));
  const Eigen::VectorXd w = project_simplex(solver.eigenvalues());
  return solver.eigenvectors() * w.asDiagonal() * solver.eigenvectors().transpose();
}

// Limited-memory BFGS with backtracking; returns the final objective.
template <class Objective>
double lbfgs_minimize(Objective&& f, Eigen::VectorXd& x, int max_iter, double grad_tol, int history = 10) {
  Eigen::VectorXd g(x.size());
  double fx = f(x, g);
  std::deque<Eigen::VectorXd> s_hist;
  std::deque<Eigen::VectorXd> y_hist;
  for (int iter = 0; iter < max_iter; ++iter) {
    if (g.lpNorm<Eigen::Infinity>() <= grad_tol) break;
    Eigen::VectorXd d = -g;
    std::vector<double> alpha(s_hist.size());
    for (int i = static_cast<int>(s_hist.size()) - 1; i >= 0; --i) {
      alpha[i] = s_hist[i].dot(d) / y_hist[i].dot(s_hist[i]);
      d -= alpha[i] * y_hist[i];
    }
    if (!s_hist.empty()) d *= s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
    for (std::size_t i = 0; i < s_hist.size(); ++i) {
      const double b = y_hist[i].dot(d) / y_hist[i].dot(s_hist[i]);
      d += s_hist[i] * (alpha[i] - b);
    }
    double slope = g.dot(d);
    if (slope >= 0.0) {
      d = -g;
      slope = -g.squaredNorm();
      s_hist.clear();
      y_hist.clear();
    }
    double step = s_hist.empty() ? std::min(1.0, 1.0 / g.norm()) : 1.0;
    Eigen::VectorXd g_new(x.size());
    Eigen::VectorXd x_new;
    double f_new = fx;
    bool accepted = false;
    for (int ls = 0; ls < 50; ++ls) {
      x_new = x + step * d;
      f_new = f(x_new, g_new);
      if (f_new <= fx + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    Eigen::VectorXd s = x_new - x;
    Eigen::VectorXd y = g_new - g;
    if (s.dot(y) > 1e-16 * s.norm() * y.norm()) {
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      if (static_cast<int>(s_hist.size()) > history) {
        s_hist.pop_front();
        y_hist.pop_front();
      }
    }
    const double decrease = fx - f_new;
    x = std::move(x_new);
    g = g_new;
    fx = f_new;
    if (decrease <= 1e-16 * (1.0 + std::abs(fx))) break;
  }
  return fx;
}

}  // namespace

std::vector<double> default_beta_schedule(int max_exponent) {
  std::vector<double> out;
  for (int k = 0; k <= max_exponent; ++k) out.push_back(std::ldexp(1.0, k));
  return out;
}

Eigen::VectorXd trace_coefficients(const OneRDM& gamma) {
  Eigen::VectorXd c = pack_symmetric(gamma.matrix());
  const int m = gamma.m_spatial();
  int k = 0;
  for (int p = 0; p < m; ++p)
    for (int q = p; q < m; ++q, ++k)
      if (p != q) c(k) *= 2.0;
  return c;
}

DualValue dual_objective(const ModelSpace& space, const OneBodyOperator& g, double lambda, const OneRDM& gamma,
                         double degeneracy_tol) {
  if (gamma.m_spatial() != space.m_spatial()) throw DimensionError("1-RDM has wrong orbital count");
  DualValue out;
  out.ground = ground_state(space, g, lambda, degeneracy_tol);
  out.ground_energy = out.ground.energy;
  out.value = out.ground.energy - (g.matrix().array() * gamma.matrix().array()).sum();
  const OneRDM ground_rdm = one_rdm(space.fock(), Ensemble::equal_weight(out.ground));
  out.supergradient = OneRDM(Eigen::MatrixXd(ground_rdm.matrix() - gamma.matrix()));
  return out;
}

FreeEnergy free_energy(const ModelSpace& space, const Eigen::VectorXd& potential, double lambda, double beta,
                       bool with_hessian, bool with_ensemble) {
  const int m = space.m_spatial();
  const int np = space.n_params();
  const OneBodyOperator g(unpack_symmetric(potential, m));
  const auto spectra = spectrum(space, g, lambda);

  FreeEnergy out;
  double e0 = std::numeric_limits<double>::infinity();
  for (const auto& sp : spectra)
    if (sp.values.size() > 0) e0 = std::min(e0, sp.values(0));
  out.ground_energy = e0;

  std::vector<Eigen::VectorXd> weights;
  double z = 0.0;
  for (const auto& sp : spectra) {
    Eigen::VectorXd w = (-beta * (sp.values.array() - e0)).exp();
    z += w.sum();
    weights.push_back(std::move(w));
  }
  out.value = e0 - std::log(z) / beta;

  out.gradient = Eigen::VectorXd::Zero(np);
  if (with_hessian) out.hessian = Eigen::MatrixXd::Zero(np, np);
  const auto& fock = space.fock();
  for (std::size_t s = 0; s < spectra.size(); ++s) {
    const auto& u = spectra[s].vectors;
    const auto& e = spectra[s].values;
    const auto& w = weights[s];
    const Eigen::Index d = e.size();
    std::vector<Eigen::MatrixXd> rotated;
    for (int k = 0; k < np; ++k) {
      Eigen::MatrixXd b = u.transpose() * space.generator(s, k) * u;
      out.gradient(k) += w.dot(b.diagonal());
      if (with_hessian) rotated.push_back(std::move(b));
    }
    if (with_hessian) {
      Eigen::MatrixXd dd(d, d);
      for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index l = 0; l < d; ++l) dd(j, l) = boltzmann_divided_difference(e(j), w(j), e(l), w(l), beta);
      for (int a = 0; a < np; ++a) {
        const Eigen::MatrixXd weighted = rotated[a].cwiseProduct(dd);
        for (int b = a; b < np; ++b) {
          const double val = weighted.cwiseProduct(rotated[b]).sum();
          out.hessian(a, b) += val;
          if (a != b) out.hessian(b, a) += val;
        }
      }
    }
    if (with_ensemble) {
      for (Eigen::Index k = 0; k < d; ++k) {
        if (w(k) / z < 1e-300) continue;
        Eigen::VectorXd v = Eigen::VectorXd::Zero(fock.dim());
        v.segment(fock.offset(s), fock.sector_dim(s)) = u.col(k);
        out.thermal.weights.push_back(w(k) / z);
        out.thermal.states.push_back(std::move(v));
      }
    }
  }
  out.gradient /= z;
  if (with_hessian) out.hessian = out.hessian / z + beta * out.gradient * out.gradient.transpose();
  if (with_ensemble) {
    const double total = std::accumulate(out.thermal.weights.begin(), out.thermal.weights.end(), 0.0);
    for (auto& wk : out.thermal.weights) wk /= total;
  }
  return out;
}

Certificate primal_certificate(const ModelSpace& space, const OneBodyOperator& g_star, double lambda,
                               const OneRDM& gamma, const DualOptions& opts, double window, double warm_beta) {
  const auto& fock = space.fock();
  const int m = space.m_spatial();
  const auto spectra = spectrum(space, g_star, lambda);
  double e0 = std::numeric_limits<double>::infinity();
  for (const auto& sp : spectra)
    if (sp.values.size() > 0) e0 = std::min(e0, sp.values(0));
  if (window < 0.0) window = kDefaultDegeneracyTol * std::max(1.0, std::abs(e0));

  std::vector<Eigen::VectorXd> columns;
  std::vector<double> start;
  for (std::size_t s = 0; s < spectra.size(); ++s) {
    for (Eigen::Index k = 0; k < spectra[s].values.size() && spectra[s].values(k) <= e0 + window; ++k) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(fock.dim());
      v.segment(fock.offset(s), fock.sector_dim(s)) = spectra[s].vectors.col(k);
      columns.push_back(std::move(v));
      start.push_back(warm_beta > 0.0 ? std::exp(-warm_beta * (spectra[s].values(k) - e0)) : 1.0);
    }
  }
  if (columns.size() > 64) throw DimensionOverflow("ground-space degeneracy above 64");
  const auto d = static_cast<Eigen::Index>(columns.size());
  Eigen::MatrixXd q(fock.dim(), d);
  for (Eigen::Index j = 0; j < d; ++j) q.col(j) = columns[j];

  // gamma(rho)_pq = tr(rho C_k); off-diagonal residual entries count twice.
  const int np = space.n_params();
  std::vector<Eigen::MatrixXd> c(np);
  Eigen::VectorXd target(np);
  Eigen::VectorXd weight(np);
  for (int k = 0; k < np; ++k) {
    const auto [p, r] = space.param_orbitals(k);
    const double scale = p == r ? 1.0 : 0.5;
    c[k] = scale * project_blocks(fock, q, [&](std::size_t s) -> const Eigen::MatrixXd& { return space.generator(s, k); });
    target(k) = gamma(p, r);
    weight(k) = p == r ? 1.0 : 2.0;
  }
  (void)m;
  auto residual_of = [&](const Eigen::MatrixXd& rho, Eigen::VectorXd& diff) {
    diff.resize(np);
    for (int k = 0; k < np; ++k) diff(k) = c[k].cwiseProduct(rho).sum() - target(k);
    return std::sqrt(diff.cwiseAbs2().dot(weight));
  };

  double lipschitz = 0.0;
  for (int k = 0; k < np; ++k) lipschitz += 2.0 * weight(k) * c[k].squaredNorm();
  lipschitz = std::max(lipschitz, 1e-12);

  const double total = std::accumulate(start.begin(), start.end(), 0.0);
  Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) rho(j, j) = start[j] / total;

  // Accelerated projected gradient on ||gamma(rho) - gamma||^2.
  Eigen::MatrixXd y = rho;
  double tk = 1.0;
  Eigen::VectorXd diff;
  double best = residual_of(rho, diff);
  Eigen::MatrixXd best_rho = rho;
  for (int it = 0; it < opts.certificate_iterations && best > 1e-14; ++it) {
    residual_of(y, diff);
    Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(d, d);
    for (int k = 0; k < np; ++k) grad += 2.0 * weight(k) * diff(k) * c[k];
    Eigen::MatrixXd next = project_spectraplex(y - grad / lipschitz);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * tk * tk));
    y = next + ((tk - 1.0) / t_next) * (next - rho);
    rho = std::move(next);
    tk = t_next;
    const double r = residual_of(rho, diff);
    if (r < best) {
      best = r;
      best_rho = rho;
    }
  }

  Certificate cert;
  cert.degeneracy = static_cast<std::size_t>(d);
  cert.residual = best;
  const Eigen::MatrixXd v_q =
      project_blocks(fock, q, [&](std::size_t s) -> const Eigen::MatrixXd& { return space.interaction(s); });
  cert.primal_value = lambda * v_q.cwiseProduct(best_rho).sum();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(best_rho);
  double kept = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    if (solver.eigenvalues()(j) <= 1e-15) continue;
    kept += solver.eigenvalues()(j);
    cert.ensemble.weights.push_back(solver.eigenvalues()(j));
    Eigen::VectorXd state = q * solver.eigenvectors().col(j);
    cert.ensemble.states.push_back(state.normalized());
  }
  for (auto& w : cert.ensemble.weights) w /= kept;
  return cert;
}

OneRDM clamp_to_interior(const OneRDM& gamma, int n_electrons, double eps) {
  const int m = gamma.m_spatial();
  const double center = static_cast<double>(n_electrons) / m;
  if (center <= eps || center >= 2.0 - eps) return gamma;
  const Eigen::VectorXd n = gamma.natural_occupations();
  double t = 0.0;
  for (Eigen::Index i = 0; i < n.size(); ++i) {
    if (n(i) < eps) t = std::max(t, (eps - n(i)) / (center - n(i)));
    if (n(i) > 2.0 - eps) t = std::max(t, (n(i) - (2.0 - eps)) / (n(i) - center));
  }
  if (t == 0.0) return gamma;
  return OneRDM(Eigen::MatrixXd((1.0 - t) * gamma.matrix() + t * center * Eigen::MatrixXd::Identity(m, m)));
}

BoundResult maximize_dual(const ModelSpace& space, double lambda, const OneRDM& gamma, const DualOptions& opts) {
  const int m = space.m_spatial();
  const int n_electrons = space.n_electrons();
  if (gamma.m_spatial() != m) throw DimensionError("1-RDM has wrong orbital count");
  const auto coleman = coleman_check(gamma, n_electrons);
  if (!coleman.pass) throw std::invalid_argument("1-RDM is not ensemble N-representable: " + coleman.violations.front());
  if (opts.beta_schedule.empty()) throw std::invalid_argument("empty beta schedule");

  BoundResult result;
  result.target = clamp_to_interior(gamma, n_electrons, opts.occupation_clamp);
  const Eigen::VectorXd c = trace_coefficients(result.target);
  const int np = space.n_params();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(np);

  int solves = 0;
  auto budget_left = [&] { return solves < opts.max_eigensolves; };
  for (double beta : opts.beta_schedule) {
    for (int it = 0; it < opts.max_newton_per_stage && budget_left(); ++it) {
      const FreeEnergy fe = free_energy(space, x, lambda, beta, true);
      ++solves;
      const Eigen::VectorXd grad = fe.gradient - c;
      const double value = fe.value - c.dot(x);
      if (grad.lpNorm<Eigen::Infinity>() <= opts.gradient_tol) break;

      // Damped Newton ascent on the concave smoothed dual.
      const Eigen::MatrixXd curvature = -fe.hessian;
      double mu = 1e-12 * std::max(1.0, curvature.diagonal().cwiseAbs().maxCoeff());
      bool accepted = false;
      Eigen::VectorXd taken;
      for (int attempt = 0; attempt < 8 && !accepted && budget_left(); ++attempt, mu *= 100.0) {
        const Eigen::MatrixXd system = curvature + mu * Eigen::MatrixXd::Identity(np, np);
        const Eigen::VectorXd step = system.ldlt().solve(grad);
        const double slope = grad.dot(step);
        if (!step.allFinite() || slope <= 0.0) continue;
        double t = 1.0;
        for (int ls = 0; ls < 40 && budget_left(); ++ls, t *= 0.5) {
          const Eigen::VectorXd trial = x + t * step;
          const FreeEnergy ft = free_energy(space, trial, lambda, beta);
          ++solves;
          const double trial_value = ft.value - c.dot(trial);
          if (trial_value >= value + 1e-4 * t * slope - 1e-15 * (1.0 + std::abs(value))) {
            accepted = true;
            taken = t * step;
            break;
          }
        }
      }
      ++result.iterations;
      if (!accepted) break;
      x += taken;
      if (taken.norm() <= 1e-15 * (1.0 + x.norm())) break;
    }
  }

  const double final_beta = opts.beta_schedule.back();
  OneBodyOperator g_star(unpack_symmetric(x, m));
  DualValue dual = dual_objective(space, g_star, lambda, result.target);
  ++solves;
  auto window_for = [&](double e0) { return std::max(kDefaultDegeneracyTol * std::max(1.0, std::abs(e0)), 64.0 / final_beta); };
  Certificate cert = primal_certificate(space, g_star, lambda, result.target, opts, window_for(dual.ground_energy), final_beta);
  ++solves;

  // Polyak polishing with the certificate's primal value as target level.
  bool moved = false;
  for (int k = 0; k < opts.polyak_steps && budget_left(); ++k) {
    const Eigen::VectorXd s = trace_coefficients(dual.supergradient);
    const double s2 = s.squaredNorm();
    const double level = cert.primal_value - dual.value;
    if (s2 <= 1e-30 || level <= 0.0) break;
    const Eigen::VectorXd trial = x + (level / s2) * s;
    const OneBodyOperator g_trial(unpack_symmetric(trial, m));
    DualValue polished = dual_objective(space, g_trial, lambda, result.target);
    ++solves;
    if (polished.value <= dual.value) break;
    x = trial;
    g_star = g_trial;
    dual = std::move(polished);
    moved = true;
  }
  if (moved) {
    cert = primal_certificate(space, g_star, lambda, result.target, opts, window_for(dual.ground_energy), final_beta);
    ++solves;
  }

  result.value = dual.value;
  result.optimal_potential = g_star;
  result.primal_ensemble = std::move(cert.ensemble);
  result.primal_value = cert.primal_value;
  result.residual = cert.residual;
  result.duality_gap = std::abs(cert.primal_value - dual.value);
  result.eigensolves = solves;
  result.converged = result.duality_gap <= opts.gap_tol && result.residual <= opts.residual_tol;
  return result;
}

BoundResult lower_bound(const ModelSpace& space, const OneRDM& gamma, const DualOptions& opts) {
  return maximize_dual(space, +1.0, gamma, opts);
}

BoundResult upper_bound(const ModelSpace& space, const OneRDM& gamma, const DualOptions& opts) {
  BoundResult r = maximize_dual(space, -1.0, gamma, opts);
  r.value = -r.value;
  r.primal_value = -r.primal_value;
  return r;
}

OracleResult primal_oracle(const ModelSpace& space, const OneRDM& gamma, double lambda, int restarts,
                           std::uint64_t seed) {
  const auto dim = space.fock().dim();
  if (dim > 64) throw DimensionOverflow("primal oracle is limited to 64 many-body states");
  if (gamma.m_spatial() != space.m_spatial()) throw DimensionError("1-RDM has wrong orbital count");
  const int np = space.n_params();
  const Eigen::MatrixXd v = space.full_interaction();
  std::vector<Eigen::MatrixXd> a;
  for (int k = 0; k < np; ++k) a.push_back(space.full_generator(k));
  const Eigen::VectorXd target = trace_coefficients(gamma);
  // Residual measured as the Frobenius norm of the 1-RDM difference.
  Eigen::VectorXd weight(np);
  for (int k = 0; k < np; ++k) {
    const auto [p, q] = space.param_orbitals(k);
    weight(k) = p == q ? 1.0 : 0.5;
  }

  auto constraints = [&](const Eigen::MatrixXd& big_gamma) {
    Eigen::VectorXd out(np);
    for (int k = 0; k < np; ++k) out(k) = a[k].cwiseProduct(big_gamma).sum() - target(k);
    return out;
  };
  auto frobenius = [&](const Eigen::VectorXd& cons) { return std::sqrt(cons.cwiseAbs2().dot(weight)); };

  OracleResult best;
  best.value = std::numeric_limits<double>::infinity();
  best.residual = std::numeric_limits<double>::infinity();
  double best_any_residual = std::numeric_limits<double>::infinity();
  double best_any_value = 0.0;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;

  for (int r = 0; r < restarts; ++r) {
    Eigen::VectorXd l(dim * dim);
    for (Eigen::Index i = 0; i < l.size(); ++i) l(i) = normal(rng);
    Eigen::VectorXd y = Eigen::VectorXd::Zero(np);
    double rho = 10.0;
    double previous = std::numeric_limits<double>::infinity();

    auto density = [&](const Eigen::VectorXd& flat) {
      const Eigen::Map<const Eigen::MatrixXd> lm(flat.data(), dim, dim);
      return Eigen::MatrixXd(lm * lm.transpose() / lm.squaredNorm());
    };

    for (int outer = 0; outer < 80; ++outer) {
      auto lagrangian = [&](const Eigen::VectorXd& flat, Eigen::VectorXd& grad) {
        const Eigen::Map<const Eigen::MatrixXd> lm(flat.data(), dim, dim);
        const double t = lm.squaredNorm();
        const Eigen::MatrixXd big_gamma = lm * lm.transpose() / t;
        const Eigen::VectorXd cons = constraints(big_gamma);
        Eigen::MatrixXd gmat = lambda * v;
        for (int k = 0; k < np; ++k) gmat += (y(k) + rho * cons(k)) * a[k];
        const double value =
            lambda * v.cwiseProduct(big_gamma).sum() + y.dot(cons) + 0.5 * rho * cons.squaredNorm();
        const double shift = gmat.cwiseProduct(big_gamma).sum();
        Eigen::Map<Eigen::MatrixXd> gm(grad.data(), dim, dim);
        gm = (2.0 / t) * (gmat * lm - shift * lm);
        return value;
      };
      for (int escape = 0; escape < 20; ++escape) {
        lbfgs_minimize(lagrangian, l, 400, 1e-11);
        // The factorization stalls near rank-deficient saddles. Optimality on
        // the spectraplex needs S >= <S, Gamma> I for the gradient S; if not,
        // take an exact line-search step toward the lowest eigenvector.
        const Eigen::MatrixXd big_gamma = density(l);
        const Eigen::VectorXd cons = constraints(big_gamma);
        Eigen::MatrixXd s_mat = lambda * v;
        for (int k = 0; k < np; ++k) s_mat += (y(k) + rho * cons(k)) * a[k];
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> low(s_mat);
        const double slope = low.eigenvalues()(0) - s_mat.cwiseProduct(big_gamma).sum();
        if (slope > -1e-12) break;
        const Eigen::VectorXd u = low.eigenvectors().col(0);
        const Eigen::MatrixXd step = u * u.transpose() - big_gamma;
        Eigen::VectorXd dcons(np);
        for (int k = 0; k < np; ++k) dcons(k) = a[k].cwiseProduct(step).sum();
        const double curvature = rho * dcons.squaredNorm();
        const double alpha = curvature > 0.0 ? std::min(1.0, -slope / curvature) : 1.0;
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> mixed(big_gamma + alpha * step);
        Eigen::Map<Eigen::MatrixXd> lm(l.data(), dim, dim);
        lm = mixed.eigenvectors() * mixed.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
      }
      // Keep the factor well scaled; Gamma is invariant under rescaling.
      l /= std::sqrt(l.squaredNorm() / static_cast<double>(dim));
      const Eigen::VectorXd cons = constraints(density(l));
      const double violation = cons.lpNorm<Eigen::Infinity>();
      if (violation <= 1e-11) break;
      y += rho * cons;
      if (violation > 0.25 * previous) rho = std::min(rho * 4.0, 1e9);
      previous = violation;
    }
    const Eigen::MatrixXd big_gamma = density(l);
    const double residual = frobenius(constraints(big_gamma));
    const double value = lambda * v.cwiseProduct(big_gamma).sum();
    if (residual <= 1e-7 && value < best.value) {
      best.value = value;
      best.residual = residual;
    }
    if (residual < best_any_residual) {
      best_any_residual = residual;
      best_any_value = value;
    }
  }
  best.restarts = restarts;
  if (!std::isfinite(best.value)) {
    best.value = best_any_value;
    best.residual = best_any_residual;
  }
  best.feasible = best_any_residual <= 1e-5;
  return best;
}

}  // namespace rdmrep
