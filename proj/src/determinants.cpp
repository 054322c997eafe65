// Copyright 2026 The rdmrep Authors
// SPDX-License-Identifier: Apache-2.0

#include "rdmrep/determinants.hpp"

#include <algorithm>
#include <string>

namespace rdmrep {

namespace {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) result = result * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return result;
}

// All m-bit masks with exactly k bits set, ascending.
std::vector<std::uint32_t> combinations(int m, int k) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    if (std::popcount(mask) == k) out.push_back(mask);
  }
  return out;
}

// Spread spatial bits of a single spin onto the interleaved spin-orbital layout.
std::uint32_t interleave(std::uint32_t spatial_mask, int spin) {
  std::uint32_t out = 0;
  for (int p = 0; spatial_mask != 0; ++p, spatial_mask >>= 1) {
    if (spatial_mask & 1u) out |= 1u << spin_orbital(p, spin);
  }
  return out;
}

void check_indices(const Sector& sector, int m) {
  if (m != sector.m_spatial()) throw DimensionError("operator and sector disagree on orbital count");
}

}  // namespace

Determinant make_determinant(std::initializer_list<int> spin_orbitals) {
  Determinant det;
  for (int i : spin_orbitals) det.occupation |= 1u << i;
  return det;
}

std::optional<Excitation> annihilate(const Excitation& in, int i) {
  if (!in.det.occupied(i)) return std::nullopt;
  Excitation out = in;
  if (in.det.count_below(i) % 2 != 0) out.phase = -out.phase;
  out.det.occupation &= ~(1u << i);
  return out;
}

std::optional<Excitation> create(const Excitation& in, int i) {
  if (in.det.occupied(i)) return std::nullopt;
  Excitation out = in;
  if (in.det.count_below(i) % 2 != 0) out.phase = -out.phase;
  out.det.occupation |= 1u << i;
  return out;
}

std::optional<Excitation> apply_single(Determinant det, int create_index, int annihilate_index) {
  auto step = annihilate(Excitation{det, 1}, annihilate_index);
  if (!step) return std::nullopt;
  return create(*step, create_index);
}

std::optional<Excitation> apply_double(Determinant det, int p, int q, int s, int r) {
  auto step = annihilate(Excitation{det, 1}, r);
  if (step) step = annihilate(*step, s);
  if (step) step = create(*step, q);
  if (step) step = create(*step, p);
  return step;
}

Sector::Sector(int m_spatial, int n_alpha, int n_beta, std::vector<Determinant> basis)
    : m_spatial_(m_spatial), n_alpha_(n_alpha), n_beta_(n_beta), basis_(std::move(basis)) {}

std::optional<std::size_t> Sector::index_of(Determinant det) const {
  auto it = std::lower_bound(basis_.begin(), basis_.end(), det);
  if (it == basis_.end() || *it != det) return std::nullopt;
  return static_cast<std::size_t>(it - basis_.begin());
}

Sector enumerate_sector(int m_spatial, int n_alpha, int n_beta) {
  if (m_spatial < 0 || m_spatial > kMaxSpatialOrbitals) {
    throw std::invalid_argument("spatial orbital count must lie in [0, 16]");
  }
  if (n_alpha < 0 || n_beta < 0 || n_alpha > m_spatial || n_beta > m_spatial) {
    throw std::invalid_argument("spin occupation exceeds orbital count");
  }
  const std::uint64_t dim = binomial(m_spatial, n_alpha) * binomial(m_spatial, n_beta);
  if (dim > kMaxSectorDimension) {
    throw DimensionOverflow("sector (" + std::to_string(n_alpha) + "," + std::to_string(n_beta) + ") of " +
                            std::to_string(m_spatial) + " orbitals has dimension " + std::to_string(dim));
  }
  std::vector<Determinant> basis;
  basis.reserve(dim);
  const auto alphas = combinations(m_spatial, n_alpha);
  const auto betas = combinations(m_spatial, n_beta);
  for (auto a : alphas)
    for (auto b : betas) basis.push_back(Determinant{interleave(a, 0) | interleave(b, 1)});
  std::sort(basis.begin(), basis.end());
  return Sector(m_spatial, n_alpha, n_beta, std::move(basis));
}

Eigen::MatrixXd build_excitation(int p, int q, const Sector& sector) {
  const auto dim = static_cast<Eigen::Index>(sector.size());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (int s = 0; s < 2; ++s) {
      auto image = apply_single(sector[j], spin_orbital(p, s), spin_orbital(q, s));
      if (!image) continue;
      auto i = sector.index_of(image->det);
      if (i) out(static_cast<Eigen::Index>(*i), j) += image->phase;
    }
  }
  return out;
}

Eigen::MatrixXd build_one_body(const OneBodyOperator& h, const Sector& sector) {
  const int m = sector.m_spatial();
  check_indices(sector, h.m_spatial());
  const auto dim = static_cast<Eigen::Index>(sector.size());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Determinant det = sector[j];
    for (int a = 0; a < 2 * m; ++a) {
      if (!det.occupied(a)) continue;
      for (int c = a % 2; c < 2 * m; c += 2) {
        const double hpq = h(c / 2, a / 2);
        if (hpq == 0.0) continue;
        auto image = apply_single(det, c, a);
        if (!image) continue;
        out(static_cast<Eigen::Index>(*sector.index_of(image->det)), j) += hpq * image->phase;
      }
    }
  }
  return out;
}

Eigen::MatrixXd build_two_body(const TwoBodyIntegrals& v, const Sector& sector) {
  const int m = sector.m_spatial();
  check_indices(sector, v.m_spatial());
  const auto dim = static_cast<Eigen::Index>(sector.size());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
  const int n = 2 * m;
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Determinant det = sector[j];
    for (int r = 0; r < n; ++r) {
      auto after_r = annihilate(Excitation{det, 1}, r);
      if (!after_r) continue;
      for (int s = 0; s < n; ++s) {
        auto after_s = annihilate(*after_r, s);
        if (!after_s) continue;
        // Spin is conserved on each electron: p shares r's spin, q shares s's.
        for (int q = s % 2; q < n; q += 2) {
          auto after_q = create(*after_s, q);
          if (!after_q) continue;
          for (int p = r % 2; p < n; p += 2) {
            const double integral = v(p / 2, r / 2, q / 2, s / 2);
            if (integral == 0.0) continue;
            auto image = create(*after_q, p);
            if (!image) continue;
            out(static_cast<Eigen::Index>(*sector.index_of(image->det)), j) += 0.5 * integral * image->phase;
          }
        }
      }
    }
  }
  return out;
}

}  // namespace rdmrep
