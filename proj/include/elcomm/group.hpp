#pragma once

// Words in elementary generators of GL(n, R) and their exact evaluation.
// Conventions: ^x y = x y x^-1 and [x, y] = x y x^-1 y^-1; longer
// commutators are left-normed, [x, y, z] = [[x, y], z].

#include "elcomm/ideal.hpp"
#include "elcomm/matrix.hpp"
#include "elcomm/ring.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace elcomm {

/// t_ij(c) = e + c e_ij, z_ij(a, c) = t_ij(c) t_ji(a) t_ij(-c),
/// y_ij(a, b) = [t_ij(a), t_ji(b)]. Indices are 1-based.
struct GenSymbol {
  enum class Kind { T, Z, Y };

  static GenSymbol t(int i, int j, Polynomial c);
  static GenSymbol z(int i, int j, Polynomial a, Polynomial c);
  static GenSymbol y(int i, int j, Polynomial a, Polynomial b);

  Kind kind;
  int i;
  int j;
  Polynomial first;
  /// Present for Z and Y only.
  std::optional<Polynomial> second;

  std::string to_string() const;
  friend bool operator==(const GenSymbol&, const GenSymbol&) = default;
};

class GroupWord {
 public:
  enum class Kind { Gen, Product, Inverse, Conjugate, Commutator };

  /// The empty product.
  GroupWord();
  static GroupWord identity() { return GroupWord(); }
  static GroupWord gen(GenSymbol s);
  static GroupWord t(int i, int j, Polynomial c) { return gen(GenSymbol::t(i, j, std::move(c))); }
  static GroupWord z(int i, int j, Polynomial a, Polynomial c) {
    return gen(GenSymbol::z(i, j, std::move(a), std::move(c)));
  }
  static GroupWord y(int i, int j, Polynomial a, Polynomial b) {
    return gen(GenSymbol::y(i, j, std::move(a), std::move(b)));
  }
  /// Nested products are spliced in and identity factors dropped.
  static GroupWord product(const std::vector<GroupWord>& factors);
  static GroupWord inverse(const GroupWord& w);
  /// ^x w
  static GroupWord conjugate(const GroupWord& x, const GroupWord& w);
  static GroupWord commutator(const GroupWord& x, const GroupWord& y);

  Kind kind() const { return node_->kind; }
  bool is_identity() const { return kind() == Kind::Product && node_->children.empty(); }
  const GenSymbol& symbol() const { return *node_->symbol; }
  /// Product factors, or the operands: (w) for Inverse, (x, w) for
  /// Conjugate, (x, y) for Commutator.
  const std::vector<GroupWord>& children() const { return node_->children; }

  /// Compact text form without spaces; "e" for the identity.
  std::string to_string() const;

  friend bool operator==(const GroupWord& a, const GroupWord& b);
  friend GroupWord operator*(const GroupWord& a, const GroupWord& b) { return product({a, b}); }

 private:
  struct Node {
    Kind kind;
    std::optional<GenSymbol> symbol;
    std::vector<GroupWord> children;
  };
  explicit GroupWord(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Grammar: t[i,j](p), z[i,j](p;q), y[i,j](p;q), e, juxtaposition for
/// products, ~w, ^{x}w, [w1,w2,...] (left-normed), parentheses.
GroupWord parse_word(const RingPtr& ring, std::string_view text);

struct Transvection {
  int i;
  int j;
  Polynomial arg;
};

/// The word as a product of transvections. Inverses reverse and negate;
/// adjacent factors at the same position are merged and zeros dropped.
std::vector<Transvection> flatten(const GroupWord& w);

/// Exact value in GL(n, ring).
SquareMatrix eval(const GroupWord& w, const RingPtr& ring, int n);

/// The same word with every generator argument sent through the ring
/// homomorphism given by the assignment.
GroupWord substitute(const GroupWord& w, const Assignment& images, const RingPtr& target);

/// Largest index used by any generator of w (0 for the identity).
int max_index(const GroupWord& w);

/// True iff every entry of g - e lies in I. Free backends only.
bool congruence_level(const SquareMatrix& g, const IdealExpr& ideal);

/// ^s t for transvections s, t as a product of generators.
GroupWord steinberg_conjugate(const GenSymbol& t, const GenSymbol& s);

/// One level of [xy, z] = ^x[y, z][x, z] and [x, yz] = [x, y] ^y[x, z]
/// applied across a product operand; other commutators come back unchanged.
GroupWord expand_commutator_bimultiplicative(const GroupWord& w);

/// Placement of brackets in a multiple commutator of ideals.
class BracketTree {
 public:
  static BracketTree leaf(char tag);
  static BracketTree node(BracketTree left, BracketTree right);

  bool is_leaf() const { return !children_; }
  char tag() const { return tag_; }
  const BracketTree& left() const { return children_->first; }
  const BracketTree& right() const { return children_->second; }

  std::size_t leaf_count() const;
  /// Number of leaves in the left child of the root.
  std::size_t cut_point() const;
  std::vector<char> leaves() const;
  /// The symmetrised product with the same bracketing.
  IdealExpr ideal() const;
  /// "[[A,B],C]"
  std::string to_string() const;

 private:
  char tag_ = 0;
  std::shared_ptr<const std::pair<BracketTree, BracketTree>> children_;
};

/// Parses "[[A,B],[C,D]]"; a bare tag is a one-leaf tree.
BracketTree parse_bracket_tree(std::string_view text);

}  // namespace elcomm
