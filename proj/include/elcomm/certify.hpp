#pragma once

// Builders for congruences between elementary commutators, each returned
// as a certificate that check() verifies from scratch.

#include "elcomm/certificate.hpp"
#include "elcomm/group.hpp"
#include "elcomm/ideal.hpp"

#include <string>
#include <vector>

namespace elcomm {

/// y_ij(a, b) together with ideals A and B containing a and b.
struct ElementaryCommutator {
  int i;
  int j;
  Polynomial a;
  Polynomial b;
  IdealExpr A;
  IdealExpr B;

  /// The identity when a or b is zero.
  GroupWord word() const;
  IdealExpr level() const { return IdealExpr::symprod(A, B); }
};

/// The smallest index in 1..n outside {i, j}; NotSupported if n < 3.
int third_index(int i, int j, int n);

/// ^x y = y * atoms modulo E(n, R, A o B).
Certificate certify_lemma9(const GroupWord& x, const ElementaryCommutator& y, int n);

enum class AdditiveSide {
  /// y(a + e, b) = y(e, b) y(a, b) * atoms
  First,
  /// y(a, b + e) = y(a, b) y(a, e) * atoms
  Second,
  /// y(a, b)^-1 = y(-a, b) * atoms
  Inverse,
  /// y(a, b)^-1 = y(a, -b) * atoms
  InverseSecond,
};

/// `extra` is the second summand for First and Second and ignored otherwise.
Certificate certify_additivity(const ElementaryCommutator& y, const Polynomial& extra, AdditiveSide side, int n);

/// One elementary move of a y-symbol.
struct TransportMove {
  /// Second: (p, q) -> (p, h), may carry c from the first argument into the
  /// second. First: (p, q) -> (h, q), only without c.
  enum class Kind { Second, First };
  Kind kind;
  int from_i, from_j, to_i, to_j;
  bool carries;
};

/// Shortest move sequence from (i, j) to (k, l). With carry, exactly one
/// Second move carries c.
std::vector<TransportMove> plan_transport(int i, int j, int k, int l, bool carry, int n);

/// y_ij(a c, b) = y_kl(a, c b) * atoms modulo E(n, R, A o B).
Certificate certify_transport(const ElementaryCommutator& y, const Polynomial& c, int k, int l, int n);

enum class CollapseSide {
  /// y(a f, b) = atoms, with f in A
  First,
  /// y(a, f b) = atoms, with f in B
  Second,
};

Certificate certify_collapse(const ElementaryCommutator& y, const Polynomial& f, CollapseSide side, int n);

/// y_ij(a a' + a b', b) = atoms with a' in A and b' in B: the comaximal case
/// a' + b' = 1 with the relation left symbolic.
Certificate certify_comaximal(const ElementaryCommutator& y, const Polynomial& a_prime, const Polynomial& b_prime,
                              int n);

/// [y_ij(a, b), t_hk(c)] = atoms modulo [E(n, R, A o B), E(n, R, C)].
Certificate certify_triple(const ElementaryCommutator& y, int h, int k, const Polynomial& c, const IdealExpr& C,
                           int n);

/// [y_ij(a, b), y_hk(c, d)] = atoms modulo [E(n, R, A o B), E(n, R, C o D)].
/// Needs n >= 4; n = 3 raises NotSupported.
Certificate certify_quadruple(const ElementaryCommutator& y1, const ElementaryCommutator& y2, int n);

/// z_ij(a b, c) (or z_ij(b a, c) when `reversed`) = atoms modulo
/// [E(n, R, A), E(n, R, B)], using commutator atoms only.
Certificate certify_z_in_mixed(int i, int j, const Polynomial& a, const Polynomial& b, const Polynomial& c,
                               const IdealExpr& A, const IdealExpr& B, bool reversed, int n);

/// Why the quadruple construction has no n = 3 version: every position is
/// reported with the index it shares with (i, j).
std::string quadruple_n3_report(int i, int j);

}  // namespace elcomm
