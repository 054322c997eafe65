// Copyright 2026 The rdmrep Authors
// SPDX-License-Identifier: Apache-2.0

/// Slater determinants as spin-orbital bit patterns and the second-quantized
/// operator algebra acting on them.
///
/// Spin orbital i = 2p + s, with p the spatial index and s = 0 (alpha) or
/// 1 (beta). Creation and annihilation carry the phase (-1)^k, k being the
/// number of occupied spin orbitals with a smaller index.

#pragma once

#include "rdmrep/integrals.hpp"

#include <Eigen/Dense>

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace rdmrep {

inline constexpr int kMaxSpatialOrbitals = 16;
inline constexpr std::size_t kMaxSectorDimension = 10000;

class DimensionOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr int spin_orbital(int spatial, int spin) { return 2 * spatial + spin; }

struct Determinant {
  std::uint32_t occupation = 0;

  constexpr bool occupied(int i) const { return ((occupation >> i) & 1u) != 0; }
  constexpr int count() const { return std::popcount(occupation); }
  /// Occupied spin orbitals with index strictly below i.
  constexpr int count_below(int i) const { return std::popcount(occupation & ((1u << i) - 1u)); }

  constexpr auto operator<=>(const Determinant&) const = default;
};

Determinant make_determinant(std::initializer_list<int> spin_orbitals);

/// Result of applying an operator string: image determinant and sign.
struct Excitation {
  Determinant det;
  int phase = 1;
};

std::optional<Excitation> annihilate(const Excitation& in, int i);
std::optional<Excitation> create(const Excitation& in, int i);

/// a^dagger_create a_annihilate |det>.
std::optional<Excitation> apply_single(Determinant det, int create_index, int annihilate_index);

/// a^dagger_p a^dagger_q a_s a_r |det>, applied right to left.
std::optional<Excitation> apply_double(Determinant det, int p, int q, int s, int r);

/// Determinants of fixed (n_alpha, n_beta) in ascending bit-pattern order.
class Sector {
 public:
  Sector(int m_spatial, int n_alpha, int n_beta, std::vector<Determinant> basis);

  int m_spatial() const { return m_spatial_; }
  int n_alpha() const { return n_alpha_; }
  int n_beta() const { return n_beta_; }
  int n_electrons() const { return n_alpha_ + n_beta_; }
  std::size_t size() const { return basis_.size(); }
  const std::vector<Determinant>& basis() const { return basis_; }
  const Determinant& operator[](std::size_t i) const { return basis_[i]; }

  std::optional<std::size_t> index_of(Determinant det) const;

 private:
  int m_spatial_;
  int n_alpha_;
  int n_beta_;
  std::vector<Determinant> basis_;
};

/// Throws DimensionOverflow if the sector exceeds kMaxSectorDimension.
Sector enumerate_sector(int m_spatial, int n_alpha, int n_beta);

/// Sum over spins of h_pq a^dagger_{p s} a_{q s} in the sector basis.
Eigen::MatrixXd build_one_body(const OneBodyOperator& h, const Sector& sector);

/// 1/2 sum (pr|qs) a^dagger_{p sigma} a^dagger_{q tau} a_{s tau} a_{r sigma}.
Eigen::MatrixXd build_two_body(const TwoBodyIntegrals& v, const Sector& sector);

/// E_pq = sum_s a^dagger_{p s} a_{q s}; the building block of both one-body
/// matrices and 1-RDMs.
Eigen::MatrixXd build_excitation(int p, int q, const Sector& sector);

}  // namespace rdmrep
