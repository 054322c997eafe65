// Copyright 2026 The rdmrep Authors
// SPDX-License-Identifier: Apache-2.0

#include "rdmrep/nrepcheck.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>
#include <random>

namespace rdmrep {

namespace {

double trace_product(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) { return a.cwiseProduct(b).sum(); }

double ground_energy(const ModelSpace& space, const OneBodyOperator& h, double lambda) {
  return ground_state(space, h, lambda).energy;
}

std::string describe(const char* what, double value) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s %.10g", what, value);
  return buf;
}

// Traceless symmetric basis: off-diagonal pairs, then e_p e_p^T - e_last e_last^T.
std::vector<Eigen::MatrixXd> traceless_basis(int m) {
  std::vector<Eigen::MatrixXd> basis;
  for (int p = 0; p < m; ++p)
    for (int q = p + 1; q < m; ++q) {
      Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m, m);
      b(p, q) = b(q, p) = 1.0;
      basis.push_back(std::move(b));
    }
  for (int p = 0; p + 1 < m; ++p) {
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m, m);
    b(p, p) = 1.0;
    b(m - 1, m - 1) = -1.0;
    basis.push_back(std::move(b));
  }
  return basis;
}

// Linear objective and linear inequalities a.z + b > 0 over z = (W, y, [t]),
// plus the two matrix inequalities 0 < gamma(y) < 2.
struct BarrierProblem {
  Eigen::VectorXd cost;
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
};

class BarrierSolver {
 public:
  BarrierSolver(const Eigen::MatrixXd& gamma0, std::vector<Eigen::MatrixXd> basis)
      : gamma0_(gamma0), basis_(std::move(basis)) {}

  Eigen::MatrixXd gamma(const Eigen::VectorXd& z) const {
    Eigen::MatrixXd g = gamma0_;
    for (std::size_t j = 0; j < basis_.size(); ++j) g += z(1 + static_cast<Eigen::Index>(j)) * basis_[j];
    return g;
  }

  // Barrier objective; +inf outside the open domain.
  double value(const BarrierProblem& prob, const Eigen::VectorXd& z, double mu) const {
    const Eigen::VectorXd s = prob.a * z + prob.b;
    if ((s.array() <= 0.0).any()) return std::numeric_limits<double>::infinity();
    const Eigen::MatrixXd g = gamma(z);
    const int m = static_cast<int>(g.rows());
    Eigen::LLT<Eigen::MatrixXd> lower(g);
    Eigen::LLT<Eigen::MatrixXd> upper(2.0 * Eigen::MatrixXd::Identity(m, m) - g);
    if (lower.info() != Eigen::Success || upper.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
    const double logdet = 2.0 * (lower.matrixL().toDenseMatrix().diagonal().array().log().sum() +
                                 upper.matrixL().toDenseMatrix().diagonal().array().log().sum());
    if (!std::isfinite(logdet)) return std::numeric_limits<double>::infinity();
    return prob.cost.dot(z) - mu * (logdet + s.array().log().sum());
  }

  void derivatives(const BarrierProblem& prob, const Eigen::VectorXd& z, double mu, Eigen::VectorXd& grad,
                   Eigen::MatrixXd& hess) const {
    const Eigen::Index n = z.size();
    const Eigen::VectorXd s = prob.a * z + prob.b;
    const Eigen::VectorXd inv = s.cwiseInverse();
    grad = prob.cost - mu * prob.a.transpose() * inv;
    hess = mu * prob.a.transpose() * inv.cwiseAbs2().asDiagonal() * prob.a;
    const Eigen::MatrixXd g = gamma(z);
    const int m = static_cast<int>(g.rows());
    const Eigen::MatrixXd gi = g.inverse();
    const Eigen::MatrixXd hi = (2.0 * Eigen::MatrixXd::Identity(m, m) - g).inverse();
    std::vector<Eigen::MatrixXd> gb;
    std::vector<Eigen::MatrixXd> hb;
    for (const auto& bj : basis_) {
      gb.push_back(gi * bj);
      hb.push_back(hi * bj);
    }
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const Eigen::Index zi = 1 + static_cast<Eigen::Index>(i);
      grad(zi) += mu * (-gb[i].trace() + hb[i].trace());
      for (std::size_t j = i; j < basis_.size(); ++j) {
        const Eigen::Index zj = 1 + static_cast<Eigen::Index>(j);
        const double v = mu * (trace_product(gb[i], gb[j].transpose()) + trace_product(hb[i], hb[j].transpose()));
        hess(zi, zj) += v;
        if (i != j) hess(zj, zi) += v;
      }
    }
    (void)n;
  }

  // Newton centering at fixed mu; returns the number of steps taken.
  int center(const BarrierProblem& prob, Eigen::VectorXd& z, double mu) const {
    Eigen::VectorXd grad;
    Eigen::MatrixXd hess;
    double phi = value(prob, z, mu);
    int steps = 0;
    for (; steps < 100; ++steps) {
      derivatives(prob, z, mu, grad, hess);
      const Eigen::VectorXd dz = hess.ldlt().solve(-grad);
      const double decrement = -grad.dot(dz);
      if (!dz.allFinite() || decrement <= 1e-15 * (1.0 + std::abs(phi))) break;
      double t = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls, t *= 0.5) {
        const Eigen::VectorXd trial = z + t * dz;
        const double next = value(prob, trial, mu);
        if (std::isfinite(next) && next <= phi - 0.25 * t * decrement + 1e-15 * (1.0 + std::abs(phi))) {
          z = trial;
          phi = next;
          moved = true;
          break;
        }
      }
      if (!moved) break;
      if (decrement < 1e-20) break;
    }
    return steps;
  }

 private:
  Eigen::MatrixXd gamma0_;
  std::vector<Eigen::MatrixXd> basis_;
};

constexpr double kMuStart = 1.0;
constexpr double kMuFinal = 1e-13;

}  // namespace

HalfSpace make_half_space(const ModelSpace& space, OneBodyOperator h_tilde, double lambda) {
  const double rhs = ground_energy(space, h_tilde, lambda);
  return HalfSpace{std::move(h_tilde), lambda, rhs};
}

void validate(const HalfSpace& half_space, const ModelSpace& space) {
  if (half_space.h_tilde.m_spatial() != space.m_spatial()) throw DimensionError("half-space has wrong orbital count");
  const double e = ground_energy(space, half_space.h_tilde, half_space.lambda);
  if (std::abs(e - half_space.rhs) > 1e-9) throw std::invalid_argument(describe("half-space rhs differs from E_gs:", e));
}

double slack(const HalfSpace& half_space, const FunctionalPoint& point) {
  return trace_product(half_space.h_tilde.matrix(), point.gamma.matrix()) + half_space.lambda * point.w -
         half_space.rhs;
}

std::string to_string(Representability r) {
  switch (r) {
    case Representability::representable:
      return "representable";
    case Representability::not_representable:
      return "not-representable";
    case Representability::inconclusive:
      break;
  }
  return "inconclusive";
}

Verdict check_pair(const ModelSpace& space, const FunctionalPoint& point, double tol, const DualOptions& opts) {
  const int m = space.m_spatial();
  if (point.gamma.m_spatial() != m) throw DimensionError("1-RDM has wrong orbital count");
  Verdict verdict;
  const auto coleman = coleman_check(point.gamma, space.n_electrons());
  if (!coleman.pass) {
    // A lambda = 0 separating potential built from the offending eigenvector.
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      const double n = coleman.occupations(i);
      const Eigen::VectorXd v = coleman.natural_orbitals.col(i);
      if (n < -kColemanTol) {
        h = v * v.transpose();
        break;
      }
      if (n > 2.0 + kColemanTol) {
        h = -v * v.transpose();
        break;
      }
    }
    if (h.isZero()) h = Eigen::MatrixXd::Identity(m, m) * (coleman.trace > space.n_electrons() ? -1.0 : 1.0);
    HalfSpace hs = make_half_space(space, OneBodyOperator(h), 0.0);
    verdict.status = Representability::not_representable;
    verdict.witness = Witness{hs, -slack(hs, point)};
    verdict.reason = coleman.violations.front();
    verdict.lb = std::numeric_limits<double>::quiet_NaN();
    verdict.ub = std::numeric_limits<double>::quiet_NaN();
    return verdict;
  }

  auto lower = std::async(std::launch::async, [&] { return lower_bound(space, point.gamma, opts); });
  const BoundResult ub = upper_bound(space, point.gamma, opts);
  const BoundResult lb = lower.get();
  verdict.lb = lb.value;
  verdict.ub = ub.value;

  auto witness_from = [&](const BoundResult& bound, double lambda) -> std::optional<Witness> {
    HalfSpace hs = make_half_space(space, bound.optimal_potential, lambda);
    const double margin = -slack(hs, point);
    if (margin <= 0.0) return std::nullopt;
    return Witness{std::move(hs), margin};
  };
  if (point.w < lb.value - tol) {
    verdict.witness = witness_from(lb, +1.0);
    verdict.reason = describe("W below the lower bound by", lb.value - point.w);
  } else if (point.w > ub.value + tol) {
    verdict.witness = witness_from(ub, -1.0);
    verdict.reason = describe("W above the upper bound by", point.w - ub.value);
  }
  if (verdict.witness) {
    verdict.status = Representability::not_representable;
  } else if (!lb.converged || !ub.converged) {
    verdict.status = Representability::inconclusive;
    verdict.reason = describe("bound did not converge; duality gap",
                              std::max(lb.converged ? 0.0 : lb.duality_gap, ub.converged ? 0.0 : ub.duality_gap));
  } else if (point.w < lb.value - tol || point.w > ub.value + tol) {
    verdict.status = Representability::inconclusive;
    verdict.reason += "; no separating potential could be confirmed";
  } else {
    verdict.status = Representability::representable;
    verdict.reason = "lb <= W <= ub";
  }
  return verdict;
}

std::pair<OneBodyOperator, double> reduce_lambda(const OneBodyOperator& h, double lambda) {
  if (lambda == 0.0 || !std::isfinite(lambda)) throw std::invalid_argument("lambda must be finite and nonzero");
  const double scale = std::abs(lambda);
  return {OneBodyOperator(Eigen::MatrixXd(h.matrix() / scale)), lambda > 0.0 ? 1.0 : -1.0};
}

bool violates_condition(const ModelSpace& space, const OneBodyOperator& h, double lambda,
                        const FunctionalPoint& point) {
  const double lhs = trace_product(h.matrix(), point.gamma.matrix()) + lambda * point.w;
  return lhs < ground_energy(space, h, lambda);
}

bool sampled_coleman_check(const ModelSpace& space, const OneRDM& gamma, int samples, std::uint64_t seed) {
  const int m = space.m_spatial();
  // Same tolerance as the eigenvalue test, so rounding never decides a verdict.
  auto violated = [&](const Eigen::MatrixXd& h) {
    const double e0 = ground_energy(space, OneBodyOperator(h), 0.0);
    return trace_product(h, gamma.matrix()) < e0 - kColemanTol * (1.0 + std::abs(e0));
  };
  // h = +-I probe the trace, which Gaussian draws reach only rarely.
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(m, m);
  if (violated(id) || violated(-id)) return false;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (int k = 0; k < samples; ++k) {
    Eigen::MatrixXd h(m, m);
    for (int p = 0; p < m; ++p)
      for (int q = p; q < m; ++q) h(p, q) = h(q, p) = normal(rng);
    if (violated(h)) return false;
  }
  return true;
}

Box default_box(const ModelSpace& space, const DualOptions& opts) {
  const int m = space.m_spatial();
  const double fill = static_cast<double>(space.n_electrons()) / m;
  const double ub = upper_bound(space, OneRDM(Eigen::MatrixXd(fill * Eigen::MatrixXd::Identity(m, m))), opts).value;
  return {0.0, 10.0 * std::max(1.0, ub)};
}

MaxMinResult max_min(const ModelSpace& space, double lambda, const std::vector<HalfSpace>& constraints,
                     const Box& box) {
  const int m = space.m_spatial();
  const int n = space.n_electrons();
  if (n == 0 || n == 2 * m) throw InfeasibleConstraints("the 1-RDM set is a single point; no interior");
  if (!(box.w_lo < box.w_hi) || !std::isfinite(box.w_lo) || !std::isfinite(box.w_hi)) {
    throw std::invalid_argument("max_min needs a finite box with w_lo < w_hi");
  }
  for (const auto& hs : constraints) validate(hs, space);

  const Eigen::MatrixXd gamma0 = (static_cast<double>(n) / m) * Eigen::MatrixXd::Identity(m, m);
  auto basis = traceless_basis(m);
  const auto nb = static_cast<Eigen::Index>(basis.size());
  const Eigen::Index nz = 1 + nb;
  const Eigen::MatrixXd& h = space.spec().h.matrix();

  BarrierProblem prob;
  prob.cost = Eigen::VectorXd::Zero(nz);
  prob.cost(0) = lambda;
  for (Eigen::Index j = 0; j < nb; ++j) prob.cost(1 + j) = trace_product(h, basis[j]);
  const double cost0 = trace_product(h, gamma0);

  const auto nc = static_cast<Eigen::Index>(constraints.size());
  prob.a = Eigen::MatrixXd::Zero(nc + 2, nz);
  prob.b = Eigen::VectorXd::Zero(nc + 2);
  for (Eigen::Index k = 0; k < nc; ++k) {
    const auto& hs = constraints[k];
    prob.a(k, 0) = hs.lambda;
    for (Eigen::Index j = 0; j < nb; ++j) prob.a(k, 1 + j) = trace_product(hs.h_tilde.matrix(), basis[j]);
    prob.b(k) = trace_product(hs.h_tilde.matrix(), gamma0) - hs.rhs;
  }
  prob.a(nc, 0) = 1.0;
  prob.b(nc) = -box.w_lo;
  prob.a(nc + 1, 0) = -1.0;
  prob.b(nc + 1) = box.w_hi;

  const BarrierSolver solver(gamma0, basis);
  MaxMinResult result;
  Eigen::VectorXd z = Eigen::VectorXd::Zero(nz);
  z(0) = 0.5 * (box.w_lo + box.w_hi);

  const Eigen::VectorXd s0 = prob.a * z + prob.b;
  if (s0.minCoeff() <= 0.0) {
    // Phase I: minimize t subject to s_k + t > 0 for the half-spaces and t > -1.
    BarrierProblem phase;
    phase.cost = Eigen::VectorXd::Zero(nz + 1);
    phase.cost(nz) = 1.0;
    phase.a = Eigen::MatrixXd::Zero(nc + 3, nz + 1);
    phase.a.topLeftCorner(nc + 2, nz) = prob.a;
    phase.a.col(nz).head(nc).setOnes();
    phase.a(nc + 2, nz) = 1.0;
    phase.b = Eigen::VectorXd::Zero(nc + 3);
    phase.b.head(nc + 2) = prob.b;
    phase.b(nc + 2) = 1.0;
    Eigen::VectorXd zt(nz + 1);
    zt.head(nz) = z;
    zt(nz) = 1.0 - s0.head(nc).minCoeff();
    bool found = false;
    for (double mu = kMuStart; mu >= kMuFinal; mu *= 0.5) {
      result.newton_steps += solver.center(phase, zt, mu);
      if (zt(nz) < -1e-12) {
        found = true;
        break;
      }
    }
    if (!found) throw InfeasibleConstraints(describe("constraint set has empty interior; phase I optimum", zt(nz)));
    z = zt.head(nz);
  }

  for (double mu = kMuStart; mu >= kMuFinal; mu *= 0.5) result.newton_steps += solver.center(prob, z, mu);

  result.value = cost0 + prob.cost.dot(z);
  result.minimizer.w = z(0);
  Eigen::MatrixXd g = solver.gamma(z);
  result.minimizer.gamma = OneRDM(Eigen::MatrixXd(0.5 * (g + g.transpose())));
  return result;
}

CuttingPlaneResult cutting_plane(const ModelSpace& space, double lambda, int rounds, const Box& box,
                                 std::vector<HalfSpace> initial, const DualOptions& opts) {
  const double sign = lambda > 0.0 ? 1.0 : -1.0;
  const Eigen::MatrixXd& h = space.spec().h.matrix();
  const int m = space.m_spatial();
  CuttingPlaneResult out;
  out.exact = ground_energy(space, space.spec().h, sign);
  out.constraints = std::move(initial);
  out.last = max_min(space, sign, out.constraints, box);
  out.rounds.push_back({out.constraints.size(), out.last.value, out.exact - out.last.value});

  // Exact objective Tr[h gamma] + sup_g D(g) at gamma together with its deepest cut.
  struct Probe {
    double value;
    HalfSpace cut;
  };
  auto probe = [&](const OneRDM& gamma) {
    const BoundResult bound = maximize_dual(space, sign, gamma, opts);
    return Probe{trace_product(h, gamma.matrix()) + bound.value,
                 make_half_space(space, bound.optimal_potential, sign)};
  };

  // In-out stabilization: cuts are taken between the best probed 1-RDM and
  // the inner minimizer, falling back to the minimizer itself when the
  // stabilized cut does not separate it.
  OneRDM center(Eigen::MatrixXd(static_cast<double>(space.n_electrons()) / m * Eigen::MatrixXd::Identity(m, m)));
  double best = probe(center).value;
  for (int r = 0; r < rounds && out.constraints.size() < kMaxCuttingPlanes; ++r) {
    if (best - out.last.value < 1e-8) break;
    const OneRDM& inner = out.last.minimizer.gamma;
    const OneRDM query(Eigen::MatrixXd(0.5 * (center.matrix() + inner.matrix())));
    Probe p = probe(query);
    if (p.value < best) {
      best = p.value;
      center = query;
    }
    bool separated = slack(p.cut, out.last.minimizer) < -1e-12;
    out.constraints.push_back(std::move(p.cut));
    if (!separated && out.constraints.size() < kMaxCuttingPlanes) {
      Probe k = probe(inner);
      if (k.value < best) {
        best = k.value;
        center = inner;
      }
      if (slack(k.cut, out.last.minimizer) < -1e-12) out.constraints.push_back(std::move(k.cut));
    }
    out.last = max_min(space, sign, out.constraints, box);
    out.rounds.push_back({out.constraints.size(), out.last.value, out.exact - out.last.value});
  }
  return out;
}

}  // namespace rdmrep
