#pragma once

// Two-sided ideals generated by tagged letters, and membership of monomials
// and polynomials in sums, products and symmetrised products of them.

#include "elcomm/ring.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace elcomm {

class IdealExpr {
 public:
  enum class Kind { Atom, FullRing, Sum, Prod, SymProd };

  static IdealExpr atom(char tag);
  static IdealExpr full_ring();
  static IdealExpr sum(IdealExpr a, IdealExpr b);
  static IdealExpr prod(IdealExpr a, IdealExpr b);
  /// A o B = AB + BA. Not associative, so bracketing is kept as built.
  static IdealExpr symprod(IdealExpr a, IdealExpr b);

  Kind kind() const { return node_->kind; }
  char tag() const { return node_->tag; }
  const IdealExpr& left() const { return node_->children->first; }
  const IdealExpr& right() const { return node_->children->second; }

  /// Compact form without spaces, e.g. "(AoB)oC", "A.B+B.A".
  std::string to_string() const;
  /// All atom tags occurring in the expression.
  std::vector<char> tags() const;

  friend bool operator==(const IdealExpr& a, const IdealExpr& b);

 private:
  struct Node {
    Kind kind;
    char tag = 0;
    std::shared_ptr<const std::pair<IdealExpr, IdealExpr>> children;
  };
  explicit IdealExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Grammar: atoms A..Z, R for the full ring, '+' (lowest), '.' and 'o'
/// (left-associative, equal precedence), parentheses.
IdealExpr parse_ideal(std::string_view text);

/// Replayable derivation of a monomial's membership. Subword [from, to) is
/// the part of the monomial this node certifies.
struct MembershipWitness {
  IdealExpr::Kind kind;
  std::size_t from = 0;
  std::size_t to = 0;
  /// Atom: position of the tagged letter. Prod/SymProd: split point.
  std::size_t position = 0;
  /// Sum: 0 left, 1 right. SymProd: 0 for I.J, 1 for J.I.
  int branch = 0;
  std::vector<MembershipWitness> children;
};

struct MembershipResult {
  bool member = false;
  std::optional<MembershipWitness> witness;
};

/// Dynamic programming over (subexpression, subword); O(|I| * deg^3) worst case.
/// Returns the leftmost witness when the monomial is a member.
MembershipResult monomial_member(const RingSpec& ring, const Monomial& m, const IdealExpr& ideal);

/// Re-derives membership from a witness without any search.
bool replay_witness(const RingSpec& ring, const Monomial& m, const IdealExpr& ideal,
                    const MembershipWitness& witness);

/// Human-readable rendering of a witness, e.g. "(a:A | c*b:B)".
std::string describe_witness(const RingSpec& ring, const Monomial& m,
                             const MembershipWitness& witness);

/// Naive exhaustive recursion with no memoization; test oracle only.
bool brute_member(const RingSpec& ring, const Monomial& m, const IdealExpr& ideal,
                  std::size_t degree_bound = 8);

/// True iff every monomial of p lies in the ideal (all ideals here are monomial).
bool poly_member(const Polynomial& p, const IdealExpr& ideal);

}  // namespace elcomm
