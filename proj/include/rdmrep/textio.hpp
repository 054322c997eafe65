// Copyright 2026 The rdmrep Authors
// SPDX-License-Identifier: Apache-2.0

/// Structured-text inputs: one `key = value` per line, values in JSON
/// syntax (numbers and nested arrays, which may span lines), `#` comments.
///
///   1-RDM:       occupations = [1, 1]        or  matrix = [[1, 0], [0, 1]]
///   potentials:  lambda = -1  then  h = [[..], [..]]   (repeatable)
///   functional:  w = 0.9  then  occupations = [..] | matrix = [[..]]   (repeatable)

#pragma once

#include "rdmrep/functionals.hpp"
#include "rdmrep/integrals.hpp"
#include "rdmrep/manybody.hpp"

#include <filesystem>
#include <iosfwd>
#include <vector>

namespace rdmrep {

/// Throws ParseError on malformed text and DimensionError on a size mismatch.
OneRDM parse_gamma_spec(std::istream& in, int m_spatial);
OneRDM read_gamma_spec(const std::filesystem::path& path, int m_spatial);

struct PotentialEntry {
  double lambda = 1.0;
  OneBodyOperator h;
};

/// `lambda` applies to every following `h` until changed; it defaults to 1.
std::vector<PotentialEntry> parse_potentials(std::istream& in, int m_spatial);
std::vector<PotentialEntry> read_potentials(const std::filesystem::path& path, int m_spatial);
void write_potentials(std::ostream& out, const std::vector<PotentialEntry>& entries);

/// Each `w` must be followed by one 1-RDM before the next `w`.
std::vector<FunctionalPoint> parse_functional_table(std::istream& in, int m_spatial);
std::vector<FunctionalPoint> read_functional_table(const std::filesystem::path& path, int m_spatial);

}  // namespace rdmrep
