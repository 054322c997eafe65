// Copyright 2026 The rdmrep Authors
// SPDX-License-Identifier: Apache-2.0

#include "rdmrep/manybody.hpp"

#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace rdmrep;
using Catch::Matchers::WithinAbs;

namespace {

Eigen::VectorXd basis_state(const FockSpace& fock, Determinant det) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(fock.dim());
  for (std::size_t s = 0; s < fock.n_sectors(); ++s) {
    if (auto i = fock.sectors()[s].index_of(det)) v(fock.offset(s) + static_cast<Eigen::Index>(*i)) = 1.0;
  }
  return v;
}

}  // namespace

TEST_CASE("Hubbard dimer ground energies", "[manybody]") {
  const SystemSpec hub = hubbard_dimer(1.0, 4.0);
  const double root = std::sqrt(32.0);
  CHECK_THAT(ground_state(hub, 1.0).energy, WithinAbs((4.0 - root) / 2.0, 1e-12));
  CHECK_THAT(ground_state(hub, 0.0).energy, WithinAbs(-2.0, 1e-12));
  CHECK_THAT(ground_state(hub, -1.0).energy, WithinAbs((-4.0 - root) / 2.0, 1e-12));

  const ModelSpace space(hub);
  const GroundSpace g = ground_state(space, hub.h, 1.0);
  REQUIRE(g.degeneracy() == 1);
  const Eigen::VectorXd n = one_rdm(space.fock(), g.vectors[0]).natural_occupations();
  CHECK_THAT(n(0), WithinAbs(1.0 + 4.0 / root, 1e-10));
  CHECK_THAT(n(1), WithinAbs(1.0 - 4.0 / root, 1e-10));
}

TEST_CASE("ground space is orthonormal and gathers degenerate sectors", "[manybody]") {
  const SystemSpec a = model_a();
  const ModelSpace space(a);
  // With h = 0 the triplet manifold (three sectors) is the ground space.
  const GroundSpace g = ground_state(space, a.h, 1.0);
  CHECK_THAT(g.energy, WithinAbs(0.8, 1e-12));
  CHECK(g.degeneracy() == 3);
  for (std::size_t i = 0; i < g.degeneracy(); ++i)
    for (std::size_t j = 0; j < g.degeneracy(); ++j)
      CHECK_THAT(g.vectors[i].dot(g.vectors[j]), WithinAbs(i == j ? 1.0 : 0.0, 1e-10));
  const Eigen::MatrixXd h = space.block_diagonal({space.hamiltonian(0, a.h, 1.0), space.hamiltonian(1, a.h, 1.0),
                                                  space.hamiltonian(2, a.h, 1.0)});
  for (const auto& v : g.vectors) CHECK((h * v - g.energy * v).norm() <= 1e-9);
}

TEST_CASE("ground energies match the Jordan-Wigner oracle", "[manybody][oracle]") {
  std::mt19937_64 rng(21);
  for (int m : {2, 3}) {
    const testing::JordanWignerOracle jw(m);
    for (int n = 1; n <= 2 * m - 1; ++n) {
      SystemSpec spec;
      spec.m_spatial = m;
      spec.n_electrons = n;
      spec.h = OneBodyOperator(testing::random_symmetric(m, rng));
      spec.v = testing::random_integrals(m, rng);
      for (double lambda : {1.0, 0.0, -1.0}) {
        const Eigen::VectorXd ref = jw.particle_spectrum(spec.h, spec.v, lambda, n);
        CHECK_THAT(ground_state(spec, lambda).energy, WithinAbs(ref(0), 1e-10));
      }
    }
  }
}

TEST_CASE("one-electron reduced density matrices", "[manybody]") {
  const FockSpace fock(2, 2);
  const Eigen::VectorXd first = basis_state(fock, make_determinant({0, 1}));
  const Eigen::VectorXd second = basis_state(fock, make_determinant({2, 3}));
  CHECK(one_rdm(fock, first).matrix().isApprox(Eigen::Vector2d(2, 0).asDiagonal().toDenseMatrix()));
  const OneRDM mix = one_rdm(fock, Ensemble{{0.5, 0.5}, {first, second}});
  CHECK((mix.matrix() - Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-15);

  CHECK_THROWS_AS(one_rdm(fock, Ensemble{{0.7, 0.7}, {first, second}}), std::invalid_argument);
  CHECK_THROWS_AS(one_rdm(fock, Ensemble{{1.0}, {Eigen::VectorXd::Ones(3)}}), DimensionError);
}

TEST_CASE("two-electron reduced density matrices", "[manybody]") {
  const FockSpace fock(2, 2);
  const TwoRDM closed = two_rdm(fock, basis_state(fock, make_determinant({0, 1})));
  CHECK_THAT(closed(0, 0, 0, 0), WithinAbs(2.0, 1e-15));
  CHECK_THAT(closed(0, 1, 0, 1) + closed(1, 0, 1, 0) + closed(1, 1, 1, 1), WithinAbs(0.0, 1e-15));

  const TwoRDM triplet = two_rdm(fock, basis_state(fock, make_determinant({0, 2})));
  CHECK_THAT(triplet(0, 1, 0, 1), WithinAbs(1.0, 1e-15));
  CHECK_THAT(triplet(1, 0, 1, 0), WithinAbs(1.0, 1e-15));
  CHECK_THAT(triplet(0, 1, 1, 0), WithinAbs(-1.0, 1e-15));
  CHECK_THAT(triplet(1, 0, 0, 1), WithinAbs(-1.0, 1e-15));
  CHECK_THAT(triplet.trace(), WithinAbs(2.0, 1e-15));
}

TEST_CASE("interaction expectations of model_a states", "[manybody]") {
  const SystemSpec a = model_a();
  const FockSpace fock(2, 2);
  CHECK_THAT(vee_expectation(two_rdm(fock, basis_state(fock, make_determinant({0, 1}))), a.v), WithinAbs(1.0, 1e-14));
  CHECK_THAT(vee_expectation(two_rdm(fock, basis_state(fock, make_determinant({0, 2}))), a.v), WithinAbs(0.8, 1e-14));
  // Spin orbitals 0 = 1a, 1 = 1b, 2 = 2a, 3 = 2b.
  const Eigen::VectorXd singlet =
      (basis_state(fock, make_determinant({0, 3})) - basis_state(fock, make_determinant({1, 2}))) / std::sqrt(2.0);
  CHECK_THAT(vee_expectation(two_rdm(fock, singlet), a.v), WithinAbs(1.0, 1e-14));
}

TEST_CASE("random states: RDM identities", "[manybody]") {
  std::mt19937_64 rng(42);
  for (int m : {2, 3}) {
    for (int n : {1, 2, 3}) {
      if (n > 2 * m) continue;
      SystemSpec spec;
      spec.m_spatial = m;
      spec.n_electrons = n;
      spec.h = OneBodyOperator(testing::random_symmetric(m, rng));
      spec.v = testing::random_integrals(m, rng);
      const ModelSpace space(spec);
      const Eigen::MatrixXd v = space.full_interaction();
      const int draws = m == 2 ? 600 : 200;
      for (int k = 0; k < draws; ++k) {
        const Eigen::VectorXd psi = testing::random_state(space.fock().dim(), rng);
        const TwoRDM g2 = two_rdm(space.fock(), psi);
        REQUIRE_THAT(vee_expectation(g2, spec.v), WithinAbs(psi.dot(v * psi), 1e-10));
        REQUIRE_THAT(g2.trace(), WithinAbs(n * (n - 1.0), 1e-10));
        const OneRDM g1 = one_rdm(space.fock(), psi);
        const Eigen::VectorXd occ = g1.natural_occupations();
        REQUIRE(occ.minCoeff() >= -1e-10);
        REQUIRE(occ.maxCoeff() <= 2.0 + 1e-10);
        REQUIRE_THAT(g1.trace(), WithinAbs(n, 1e-10));
      }
    }
  }
}

TEST_CASE("ground energy is concave in h", "[manybody]") {
  std::mt19937_64 rng(8);
  const SystemSpec a = model_a();
  const ModelSpace space(a);
  for (int k = 0; k < 50; ++k) {
    const Eigen::MatrixXd h1 = testing::random_symmetric(2, rng);
    const Eigen::MatrixXd h2 = testing::random_symmetric(2, rng);
    for (double lambda : {1.0, -1.0}) {
      const double mid = ground_state(space, OneBodyOperator(Eigen::MatrixXd(0.5 * (h1 + h2))), lambda).energy;
      const double avg = 0.5 * (ground_state(space, OneBodyOperator(h1), lambda).energy +
                                ground_state(space, OneBodyOperator(h2), lambda).energy);
      CHECK(mid >= avg - 1e-10);
    }
  }
}

TEST_CASE("unitary covariance of energies and RDMs", "[manybody]") {
  std::mt19937_64 rng(77);
  SystemSpec spec;
  spec.m_spatial = 3;
  spec.n_electrons = 2;
  spec.h = OneBodyOperator(testing::random_symmetric(3, rng));
  spec.v = testing::random_integrals(3, rng);
  const Eigen::MatrixXd u = testing::random_orthogonal(3, rng);
  const SystemSpec rotated = rotate(spec, u);
  const ModelSpace a(spec);
  const ModelSpace b(rotated);
  for (double lambda : {1.0, 0.0, -1.0}) {
    const GroundSpace ga = ground_state(a, spec.h, lambda);
    const GroundSpace gb = ground_state(b, rotated.h, lambda);
    CHECK_THAT(ga.energy, WithinAbs(gb.energy, 1e-9));
    const OneRDM ra = one_rdm(a.fock(), Ensemble::equal_weight(ga));
    const OneRDM rb = one_rdm(b.fock(), Ensemble::equal_weight(gb));
    CHECK((u.transpose() * ra.matrix() * u - rb.matrix()).norm() < 1e-8);
    const double wa = vee_expectation(two_rdm(a.fock(), Ensemble::equal_weight(ga)), spec.v);
    const double wb = vee_expectation(two_rdm(b.fock(), Ensemble::equal_weight(gb)), rotated.v);
    CHECK_THAT(wa, WithinAbs(wb, 1e-9));
  }
}

TEST_CASE("symmetric packing round trips", "[manybody]") {
  std::mt19937_64 rng(1);
  const Eigen::MatrixXd g = testing::random_symmetric(4, rng);
  CHECK(pack_symmetric(g).size() == symmetric_param_count(4));
  CHECK(unpack_symmetric(pack_symmetric(g), 4) == g);
}
