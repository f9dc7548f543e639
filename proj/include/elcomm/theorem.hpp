#pragma once

// Replays the induction over a bracket tree of ideals: every inner node
// [L, R] is reduced to generator-level commutators, each certified and
// checked.

#include "elcomm/certificate.hpp"
#include "elcomm/group.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace elcomm {

struct Theorem1Options {
  std::size_t leaf_cap = 6;
  /// Longest conjugator (in transvections) an emitted atom may carry.
  std::size_t conjugator_cap = 128;
  unsigned jobs = 1;
};

struct Theorem1Instance {
  std::string name;
  Certificate certificate;
  CheckResult result;
};

struct Theorem1Step {
  /// The subtree this step reduces, e.g. "[[A,B],C]".
  std::string subtree;
  /// "triple", "triple-mirrored" or "quadruple".
  std::string construction;
  /// "[E(n,AoB),E(n,C)]"
  std::string target;
  std::vector<Theorem1Instance> instances;

  bool ok() const;
};

struct Theorem1Report {
  std::string tree;
  int n = 0;
  /// Root first, then the children's steps.
  std::vector<Theorem1Step> steps;

  bool ok() const;
  /// One PASS/FAIL line per step.
  std::string summary() const;
};

/// Leaves beyond the cap raise CapExceeded; a quadruple step at n = 3
/// raises NotSupported.
Theorem1Report theorem1_reduce(const BracketTree& tree, int n, const Theorem1Options& options = {});

}  // namespace elcomm
