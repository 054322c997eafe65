// Copyright 2026 The rdmrep Authors
// SPDX-License-Identifier: Apache-2.0

#include "rdmrep/dualbounds.hpp"

#include "rdmrep/functionals.hpp"
#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace rdmrep;
using Catch::Matchers::WithinAbs;

namespace {

OneRDM diag2(double n) { return OneRDM::diagonal(Eigen::Vector2d(n, 2.0 - n)); }

}  // namespace

TEST_CASE("dual objective at g = 0", "[dualbounds]") {
  const ModelSpace hub(hubbard_dimer());
  const DualValue d = dual_objective(hub, OneBodyOperator(2), 1.0, diag2(1.0));
  CHECK_THAT(d.value, WithinAbs(0.0, 1e-12));

  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2, 2);
  g(1, 1) = 10.0;
  CHECK_THAT(dual_objective(hub, OneBodyOperator(g), 0.0, diag2(2.0)).value, WithinAbs(0.0, 1e-12));
}

TEST_CASE("bounds of the bundled models at half filling", "[dualbounds]") {
  const ModelSpace a(model_a());
  const BoundResult lb = lower_bound(a, diag2(1.0));
  const BoundResult ub = upper_bound(a, diag2(1.0));
  CHECK_THAT(lb.value, WithinAbs(0.8, 1e-8));
  CHECK_THAT(ub.value, WithinAbs(1.1, 1e-8));
  CHECK(lb.converged);
  CHECK(ub.converged);
  CHECK(lb.duality_gap <= 1e-6);
  CHECK(ub.duality_gap <= 1e-6);
  CHECK_THAT(lb.primal_value, WithinAbs(0.8, 1e-8));
  CHECK_THAT(ub.primal_value, WithinAbs(1.1, 1e-8));

  const ModelSpace hub(hubbard_dimer());
  CHECK_THAT(lower_bound(hub, diag2(1.0)).value, WithinAbs(0.0, 1e-8));
  CHECK_THAT(upper_bound(hub, diag2(1.0)).value, WithinAbs(4.0, 1e-8));
}

TEST_CASE("certificate ensembles reproduce the target 1-RDM", "[dualbounds]") {
  const ModelSpace a(model_a());
  for (double n : {1.0, 0.4, 1.3}) {
    for (const BoundResult& r : {lower_bound(a, diag2(n)), upper_bound(a, diag2(n))}) {
      const OneRDM got = one_rdm(a.fock(), r.primal_ensemble);
      CHECK((got.matrix() - r.target.matrix()).norm() <= r.residual + 1e-12);
      CHECK(r.residual <= 1e-6);
      CHECK_THAT(vee_expectation(two_rdm(a.fock(), r.primal_ensemble), a.spec().v), WithinAbs(r.primal_value, 1e-10));
    }
  }
  // Half filling: the lower bound is carried by the triplet manifold.
  const BoundResult lb = lower_bound(a, diag2(1.0));
  double triplet_weight = 0.0;
  for (std::size_t i = 0; i < lb.primal_ensemble.states.size(); ++i) {
    const double w = vee_expectation(two_rdm(a.fock(), lb.primal_ensemble.states[i]), a.spec().v);
    if (std::abs(w - 0.8) < 1e-8) triplet_weight += lb.primal_ensemble.weights[i];
  }
  CHECK_THAT(triplet_weight, WithinAbs(1.0, 1e-8));
}

TEST_CASE("idempotent 1-RDMs pin both bounds", "[dualbounds]") {
  for (const SystemSpec& spec : {model_a(), hubbard_dimer()}) {
    const ModelSpace space(spec);
    const double j11 = spec.v(0, 0, 0, 0);
    CHECK_THAT(lower_bound(space, diag2(2.0)).value, WithinAbs(j11, 1e-6));
    CHECK_THAT(upper_bound(space, diag2(2.0)).value, WithinAbs(j11, 1e-6));
    CHECK_THAT(hf_vee(diag2(2.0), spec.v), WithinAbs(j11, 1e-12));
  }
}

TEST_CASE("ground-state 1-RDM recovers the ground-state interaction", "[dualbounds]") {
  const ModelSpace hub(hubbard_dimer());
  const GroundSpace g = ground_state(hub, hub.spec().h, 1.0);
  const OneRDM gamma = one_rdm(hub.fock(), g.vectors[0]);
  const double w = vee_expectation(two_rdm(hub.fock(), g.vectors[0]), hub.spec().v);
  const BoundResult lb = lower_bound(hub, gamma);
  CHECK_THAT(lb.value, WithinAbs(w, 1e-7));
  // The potential is fixed only up to a multiple of the identity.
  Eigen::MatrixXd shift = lb.optimal_potential.matrix() - hub.spec().h.matrix();
  shift -= 0.5 * shift.trace() * Eigen::MatrixXd::Identity(2, 2);
  CHECK(shift.norm() < 1e-3);
}

TEST_CASE("the dual optimum dominates every trial potential", "[dualbounds]") {
  std::mt19937_64 rng(29);
  const ModelSpace a(model_a());
  const OneRDM gamma = diag2(0.6);
  for (double lambda : {1.0, -1.0}) {
    const double best = maximize_dual(a, lambda, gamma).value;
    CHECK(best >= dual_objective(a, OneBodyOperator(2), lambda, gamma).value - 1e-12);
    for (int k = 0; k < 50; ++k) {
      const OneBodyOperator g(testing::random_symmetric(2, rng, 3.0));
      CHECK(best >= dual_objective(a, g, lambda, gamma).value - 1e-9);
    }
  }
}

TEST_CASE("free energy: bounds, monotonicity and derivatives", "[dualbounds]") {
  std::mt19937_64 rng(31);
  const ModelSpace hub(hubbard_dimer());
  const double log_dim = std::log(static_cast<double>(hub.fock().dim()));
  for (int k = 0; k < 20; ++k) {
    const Eigen::VectorXd x = pack_symmetric(testing::random_symmetric(2, rng, 2.0));
    double previous = -std::numeric_limits<double>::infinity();
    for (double beta : default_beta_schedule(16)) {
      const FreeEnergy f = free_energy(hub, x, 1.0, beta);
      CHECK(f.value <= f.ground_energy + 1e-12);
      CHECK(f.ground_energy - f.value <= log_dim / beta + 1e-12);
      CHECK(f.value >= previous - 1e-12);
      previous = f.value;
    }

    const FreeEnergy f = free_energy(hub, x, 1.0, 4.0, true);
    const double step = 1e-5;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      Eigen::VectorXd xp = x, xm = x;
      xp(i) += step;
      xm(i) -= step;
      const FreeEnergy fp = free_energy(hub, xp, 1.0, 4.0, true);
      const FreeEnergy fm = free_energy(hub, xm, 1.0, 4.0, true);
      const double fd = (fp.value - fm.value) / (2.0 * step);
      CHECK(std::abs(fd - f.gradient(i)) <= 1e-6 * std::max(1.0, std::abs(f.gradient(i))));
      const Eigen::VectorXd hcol = (fp.gradient - fm.gradient) / (2.0 * step);
      CHECK((hcol - f.hessian.col(i)).norm() <= 1e-5 * std::max(1.0, f.hessian.norm()));
    }
  }
}

TEST_CASE("thermal ensemble reproduces the free-energy gradient", "[dualbounds]") {
  const ModelSpace a(model_a());
  Eigen::VectorXd x(3);
  x << 0.3, -0.2, 0.1;
  const FreeEnergy f = free_energy(a, x, -1.0, 2.0, false, true);
  const OneRDM thermal = one_rdm(a.fock(), f.thermal);
  CHECK((trace_coefficients(thermal) - Eigen::Vector3d(thermal(0, 0), 2 * thermal(0, 1), thermal(1, 1))).norm() < 1e-14);
  CHECK_THAT(thermal(0, 0), WithinAbs(f.gradient(0), 1e-10));
  CHECK_THAT(2.0 * thermal(0, 1), WithinAbs(f.gradient(1), 1e-10));
  CHECK_THAT(thermal(1, 1), WithinAbs(f.gradient(2), 1e-10));
}

TEST_CASE("weak duality against the primal oracle", "[dualbounds]") {
  std::mt19937_64 rng(13);
  for (const SystemSpec& spec : {model_a(), hubbard_dimer()}) {
    const ModelSpace space(spec);
    for (int k = 0; k < 20; ++k) {
      const OneRDM gamma = testing::random_two_orbital_gamma(rng);
      const OneBodyOperator g(testing::random_symmetric(2, rng, 2.0));
      const OracleResult oracle = primal_oracle(space, gamma, 1.0, 10, k);
      REQUIRE(oracle.feasible);
      CHECK(dual_objective(space, g, 1.0, gamma).value <= oracle.value + 1e-7);
    }
  }
}

TEST_CASE("primal oracle reproduces the half-filling bounds", "[dualbounds]") {
  const ModelSpace a(model_a());
  const OracleResult lo = primal_oracle(a, diag2(1.0), 1.0, 50, 0);
  const OracleResult hi = primal_oracle(a, diag2(1.0), -1.0, 50, 0);
  CHECK_THAT(lo.value, WithinAbs(0.8, 1e-5));
  CHECK_THAT(hi.value, WithinAbs(-1.1, 1e-5));
  CHECK(lo.residual <= 1e-7);
  // At an idempotent 1-RDM the value error scales with the square root of the residual.
  const OracleResult pinned = primal_oracle(a, diag2(2.0), 1.0, 10, 0);
  CHECK_THAT(pinned.value, WithinAbs(1.0, 1e-4));
}

TEST_CASE("bounds are ordered and convex/concave along segments", "[dualbounds]") {
  std::mt19937_64 rng(17);
  const ModelSpace a(model_a());
  for (int k = 0; k < 10; ++k) {
    const OneRDM g1 = testing::random_two_orbital_gamma(rng);
    const OneRDM g2 = testing::random_two_orbital_gamma(rng);
    const OneRDM mid(Eigen::MatrixXd(0.5 * (g1.matrix() + g2.matrix())));
    const double lb1 = lower_bound(a, g1).value, lb2 = lower_bound(a, g2).value, lbm = lower_bound(a, mid).value;
    const double ub1 = upper_bound(a, g1).value, ub2 = upper_bound(a, g2).value, ubm = upper_bound(a, mid).value;
    CHECK(lb1 <= ub1 + 1e-8);
    CHECK(lbm <= 0.5 * (lb1 + lb2) + 1e-6);
    CHECK(ubm >= 0.5 * (ub1 + ub2) - 1e-6);
  }
}

TEST_CASE("invalid 1-RDMs are rejected", "[dualbounds]") {
  const ModelSpace a(model_a());
  CHECK_THROWS_AS(lower_bound(a, diag2(2.5)), std::invalid_argument);
  CHECK_THROWS_AS(lower_bound(a, OneRDM::diagonal(Eigen::Vector3d(1, 1, 0))), DimensionError);
}

TEST_CASE("interior clamp preserves trace and bounds occupations", "[dualbounds]") {
  const OneRDM clamped = clamp_to_interior(diag2(2.0), 2, 1e-6);
  CHECK_THAT(clamped.trace(), WithinAbs(2.0, 1e-14));
  CHECK_THAT(clamped.natural_occupations()(0), WithinAbs(2.0 - 1e-6, 1e-14));
  const OneRDM inside = diag2(1.2);
  CHECK(clamp_to_interior(inside, 2, 1e-6).matrix() == inside.matrix());
}
