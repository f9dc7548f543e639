#pragma once

// Congruence certificates: lhs = rhs * atom_1 * ... * atom_k as matrices,
// where each atom is a generator of the target subgroup whose ideal claims
// are re-checked by the verifier.

#include "elcomm/group.hpp"
#include "elcomm/ideal.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace elcomm {

/// ^conj t_ij(arg) with arg claimed to lie in `claim`.
struct ConjTransvection {
  GroupWord conj;
  int i;
  int j;
  Polynomial arg;
  IdealExpr claim;

  GroupWord word() const;
  friend bool operator==(const ConjTransvection&, const ConjTransvection&) = default;
};

/// [left, right]
struct CommAtom {
  ConjTransvection left;
  ConjTransvection right;

  GroupWord word() const;
  friend bool operator==(const CommAtom&, const CommAtom&) = default;
};

using WitnessAtom = std::variant<ConjTransvection, CommAtom>;

GroupWord atom_word(const WitnessAtom& atom);
WitnessAtom invert(const WitnessAtom& atom);
/// ^x atom
WitnessAtom conjugate(const GroupWord& x, const WitnessAtom& atom);

/// Target subgroup: E(n, R, I) or [E(n, R, I), E(n, R, J)].
struct Modulus {
  enum class Kind { Elem, Mixed };
  Kind kind;
  IdealExpr first;
  std::optional<IdealExpr> second;

  static Modulus elem(IdealExpr i) { return Modulus{Kind::Elem, std::move(i), std::nullopt}; }
  static Modulus mixed(IdealExpr i, IdealExpr j) { return Modulus{Kind::Mixed, std::move(i), std::move(j)}; }
  /// "ELEM(AoB)" or "MIXED(AoB;C)"
  std::string to_string() const;
  friend bool operator==(const Modulus&, const Modulus&) = default;
};

struct Certificate {
  int n;
  RingPtr ring;
  Modulus modulus;
  GroupWord lhs;
  GroupWord rhs;
  std::vector<WitnessAtom> atoms;
};

struct CheckResult {
  bool ok = false;
  /// Empty on success; otherwise the first failing claim or matrix entry.
  std::string message;
};

/// Verifies every ideal claim, that each atom lies in the modulus, and the
/// matrix identity over the certificate's ring. Never throws for a
/// malformed-but-parsed certificate; failures come back as messages.
CheckResult check(const Certificate& c);

std::string serialize(const Certificate& c);
Certificate parse_certificate(std::string_view text);

/// Rewrites a word as an explicit product of transvections.
GroupWord as_transvections(const GroupWord& w);

/// Working form of a certificate while it is being built:
/// lhs = rhs * atoms.
struct Congruence {
  GroupWord lhs;
  GroupWord rhs;
  std::vector<WitnessAtom> atoms;

  static Congruence reflexive(const GroupWord& w) { return Congruence{w, w, {}}; }
  /// rhs = lhs * inverted atoms in reverse order.
  Congruence reversed() const;
  /// ^x lhs = ^x rhs * ^x atoms
  Congruence conjugated(const GroupWord& x) const;
  /// From lhs = mid * A and mid = rhs * B, lhs = rhs * B * A.
  Congruence then(const Congruence& next) const;
  /// lhs1 lhs2 = rhs1 rhs2 * ^{rhs2^-1}A1 * A2
  Congruence times(const Congruence& other) const;

  Certificate certificate(int n, RingPtr ring, Modulus modulus) const;
};

/// Collects a product of main words interleaved with atoms and moves all
/// atoms to the right: M1 a1 M2 a2 M3 = M1 M2 M3 * ^{(M2 M3)^-1}a1 * ^{M3^-1}a2.
class FactorChain {
 public:
  void word(const GroupWord& w) { items_.push_back(w); }
  void atom(const WitnessAtom& a) { items_.push_back(a); }
  void atoms(const std::vector<WitnessAtom>& as) { items_.insert(items_.end(), as.begin(), as.end()); }
  /// Splices a congruence in as its rhs followed by its atoms.
  void congruence(const Congruence& c) {
    word(c.rhs);
    atoms(c.atoms);
  }
  /// lhs = (product of the main words) * (moved atoms).
  Congruence finish(const GroupWord& lhs) const;

 private:
  std::vector<std::variant<GroupWord, WitnessAtom>> items_;
};

}  // namespace elcomm
