// Copyright 2026 The rdmrep Authors
// SPDX-License-Identifier: Apache-2.0

#include "rdmrep/oraclebench.hpp"

#include "rdmrep/determinants.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rdmrep {

namespace {

// Minimizes f on [a, b]; returns the argmin.
template <class F>
double golden_section(F&& f, double a, double b, int iterations = 80) {
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - ratio * (b - a);
  double x2 = a + ratio * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int i = 0; i < iterations && b - a > 1e-15; ++i) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - ratio * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + ratio * (b - a);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? x1 : x2;
}

struct Candidate {
  double n = 0.0;
  double w = 0.0;
  ExtremeState state;
};

class SingletFamily {
 public:
  explicit SingletFamily(const SystemSpec& spec) {
    const Sector open = enumerate_sector(2, 1, 1);
    const Eigen::MatrixXd v = build_two_body(spec.v, open);
    const auto dim = static_cast<Eigen::Index>(open.size());
    Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(dim, 3);
    basis(static_cast<Eigen::Index>(*open.index_of(make_determinant({0, 1}))), 0) = 1.0;
    basis(static_cast<Eigen::Index>(*open.index_of(make_determinant({2, 3}))), 1) = 1.0;
    basis.col(2) = (build_excitation(1, 0, open) * basis.col(0)).normalized();
    v_ = basis.transpose() * v * basis;
    const Sector polarized = enumerate_sector(2, 2, 0);
    triplet_w_ = build_two_body(spec.v, polarized)(0, 0);
  }

  double triplet_w() const { return triplet_w_; }

  // c1 = sqrt(u), c2 = sign sqrt(1 - n + u), c3 = sqrt(n - 2u).
  static Eigen::Vector3d coefficients(double n, double u, double sign) {
    return {std::sqrt(std::max(0.0, u)), sign * std::sqrt(std::max(0.0, 1.0 - n + u)),
            std::sqrt(std::max(0.0, n - 2.0 * u))};
  }

  // <V> of the equal mixture of c and its reflection c3 -> -c3.
  double mixture_w(const Eigen::Vector3d& c) const {
    const Eigen::Vector2d ionic = c.head<2>();
    return ionic.dot(v_.topLeftCorner<2, 2>() * ionic) + c(2) * c(2) * v_(2, 2);
  }

  // Extreme mixture value at occupation exactly n; sense = +1 for min, -1 for max.
  Candidate extreme(double n, double sense, int grid) const {
    const double lo = std::max(0.0, n - 1.0);
    const double hi = 0.5 * n;
    Candidate best;
    best.n = n;
    double best_score = std::numeric_limits<double>::infinity();
    for (double sign : {1.0, -1.0}) {
      auto score = [&](double u) { return sense * mixture_w(coefficients(n, u, sign)); };
      int arg = 0;
      double arg_score = std::numeric_limits<double>::infinity();
      for (int i = 0; i <= grid; ++i) {
        const double s = score(lo + (hi - lo) * i / grid);
        if (s < arg_score) {
          arg_score = s;
          arg = i;
        }
      }
      const double a = lo + (hi - lo) * std::max(0, arg - 1) / grid;
      const double b = lo + (hi - lo) * std::min(grid, arg + 1) / grid;
      double u = golden_section(score, a, b);
      if (score(u) > arg_score) u = lo + (hi - lo) * arg / grid;
      if (score(u) < best_score) {
        best_score = score(u);
        best.state.coefficients = coefficients(n, u, sign);
      }
    }
    best.w = mixture_w(best.state.coefficients);
    const Eigen::Vector3d& c = best.state.coefficients;
    best.state.family = std::abs(c(2)) < 1e-12 ? "ionic"
                        : c.head<2>().norm() < 1e-12 ? "open-shell-singlet"
                                                     : "singlet-pair";
    best.state.occupation = n;
    best.state.w = best.w;
    return best;
  }

 private:
  Eigen::Matrix3d v_;
  double triplet_w_ = 0.0;
};

double cross(const Candidate& o, const Candidate& a, const Candidate& b) {
  return (a.n - o.n) * (b.w - o.w) - (a.w - o.w) * (b.n - o.n);
}

// Lower convex hull of points sorted by (n, w).
std::vector<Candidate> lower_hull(std::vector<Candidate> pts) {
  std::sort(pts.begin(), pts.end(), [](const Candidate& a, const Candidate& b) {
    return a.n < b.n || (a.n == b.n && a.w < b.w);
  });
  std::vector<Candidate> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0.0) hull.pop_back();
    if (!hull.empty() && hull.back().n == p.n) continue;
    hull.push_back(p);
  }
  return hull;
}

struct Envelope {
  double value = 0.0;
  std::vector<ExtremeState> attainers;
};

// Lower envelope (sense = +1) or upper envelope (sense = -1) at n.
Envelope envelope_at(double n, double sense, const SingletFamily& family, int grid) {
  std::vector<Candidate> pts;
  auto flip = [sense](Candidate c) {
    c.w *= sense;
    return c;
  };
  for (int k = 0; k <= grid; ++k) pts.push_back(flip(family.extreme(2.0 * k / grid, sense, grid)));
  pts.push_back(flip(family.extreme(n, sense, grid)));
  Candidate triplet;
  triplet.n = 1.0;
  triplet.w = family.triplet_w();
  triplet.state.family = "triplet";
  triplet.state.occupation = 1.0;
  triplet.state.w = triplet.w;
  pts.push_back(flip(triplet));

  const auto hull = lower_hull(std::move(pts));
  Envelope out;
  for (const auto& p : hull) {
    if (p.n == n) {
      out.value = sense * p.w;
      out.attainers.push_back(p.state);
      out.attainers.back().weight = 1.0;
      return out;
    }
  }
  std::size_t j = 1;
  while (j < hull.size() && hull[j].n < n) ++j;
  Candidate a = hull[j - 1];
  Candidate b = hull[j];

  // Polish chord endpoints along the exact-occupation families.
  const double h = 2.0 / grid;
  auto chord = [&](const Candidate& x, const Candidate& y) { return x.w + (n - x.n) * (y.w - x.w) / (y.n - x.n); };
  auto movable = [](const Candidate& c) { return c.state.family != "triplet"; };
  for (int cycle = 0; cycle < 4; ++cycle) {
    if (movable(a)) {
      auto score = [&](double na) { return chord(flip(family.extreme(na, sense, grid)), b); };
      const double na = golden_section(score, std::max(0.0, a.n - h), std::min(n - 1e-12, a.n + h), 40);
      Candidate trial = flip(family.extreme(na, sense, grid));
      if (chord(trial, b) < chord(a, b)) a = trial;
    }
    if (movable(b)) {
      auto score = [&](double nb) { return chord(a, flip(family.extreme(nb, sense, grid))); };
      const double nb = golden_section(score, std::max(n + 1e-12, b.n - h), std::min(2.0, b.n + h), 40);
      Candidate trial = flip(family.extreme(nb, sense, grid));
      if (chord(a, trial) < chord(a, b)) b = trial;
    }
  }
  out.value = sense * chord(a, b);
  const double t = (n - a.n) / (b.n - a.n);
  out.attainers = {a.state, b.state};
  out.attainers[0].weight = 1.0 - t;
  out.attainers[1].weight = t;
  return out;
}

}  // namespace

ExtremeSearchResult enumerate_extremes(double occupation, const SystemSpec& spec, int grid) {
  if (spec.m_spatial != 2 || spec.n_electrons != 2) {
    throw DimensionError("enumerate_extremes requires 2 electrons in 2 spatial orbitals");
  }
  if (grid < kMinOracleGrid) throw std::invalid_argument("enumeration grid must be at least 100");
  if (!(occupation >= 0.0 && occupation <= 2.0)) throw std::invalid_argument("occupation must lie in [0, 2]");
  const SingletFamily family(spec);
  Envelope lo = envelope_at(occupation, +1.0, family, grid);
  Envelope hi = envelope_at(occupation, -1.0, family, grid);
  return {lo.value, hi.value, std::move(lo.attainers), std::move(hi.attainers)};
}

}  // namespace rdmrep
