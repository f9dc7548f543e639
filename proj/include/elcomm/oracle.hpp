#pragma once

// Brute-force checks over finite rings: subgroup closures by enumeration,
// membership and centrality, and random numeric instances of symbolic
// identities and certificates.

#include "elcomm/certificate.hpp"
#include "elcomm/group.hpp"
#include "elcomm/ideal.hpp"
#include "elcomm/matrix.hpp"
#include "elcomm/ring.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

namespace elcomm {

/// Z/m or a truncated free algebra over F_p, with elements stored as
/// coefficient vectors over a monomial basis.
class FiniteRing {
 public:
  /// UnsupportedBackend for infinite rings.
  explicit FiniteRing(RingPtr spec);

  const RingPtr& spec() const { return spec_; }
  std::uint64_t modulus() const { return modulus_; }
  /// Number of basis monomials (1 for Z/m).
  std::size_t dimension() const { return basis_.size(); }
  /// modulus ^ dimension
  Integer element_count() const;

  using Element = std::vector<std::uint32_t>;
  Element encode(const Polynomial& p) const;
  Polynomial decode(const Element& e) const;
  Element zero() const { return Element(dimension(), 0); }
  Element one() const;
  void add_product(Element& acc, const Element& x, const Element& y) const;
  /// Bytes per coefficient in the canonical encoding.
  std::size_t coefficient_width() const { return width_; }

 private:
  RingPtr spec_;
  std::uint64_t modulus_;
  std::size_t width_;
  std::vector<Monomial> basis_;
  std::map<Monomial, std::size_t> index_;
  // product_[u * dim + v]: index of basis_[u] * basis_[v], or -1 if truncated away
  std::vector<std::int32_t> product_;
};

/// An ideal of a finite ring: dZ/m for Z/m, or the span of the monomials in
/// a tag expression for truncated algebras.
struct IdealDescriptor {
  std::variant<std::uint64_t, IdealExpr> value;

  static IdealDescriptor divisor(std::uint64_t d) { return IdealDescriptor{d}; }
  static IdealDescriptor expr(IdealExpr e) { return IdealDescriptor{std::move(e)}; }
  static IdealDescriptor whole() { return IdealDescriptor{std::uint64_t{1}}; }
};

bool in_ideal(const FiniteRing& ring, const Polynomial& p, const IdealDescriptor& ideal);
/// Uniform over the ideal's elements.
Polynomial random_element(const FiniteRing& ring, const IdealDescriptor& ideal, std::mt19937_64& rng);
/// Every element of the ideal; only sensible for small rings.
std::vector<Polynomial> ideal_elements(const FiniteRing& ring, const IdealDescriptor& ideal);

/// A generator together with its inverse when one is known structurally.
struct OracleGenerator {
  SquareMatrix matrix;
  std::optional<SquareMatrix> inverse;
};

/// Evaluates w and ~w over the ring.
OracleGenerator word_generator(const GroupWord& w, const FiniteRing& ring, int n);

struct CentralityResult {
  bool ok = true;
  /// A failing generator pair when ok is false.
  std::string witness;
};

class SubgroupHandle {
 public:
  int n() const { return n_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<OracleGenerator>& generators() const { return generators_; }
  bool contains(const SquareMatrix& g) const;
  std::vector<SquareMatrix> elements() const;

 private:
  friend SubgroupHandle closure(const FiniteRing& ring, int n, std::vector<OracleGenerator> gens, std::size_t cap);
  friend std::vector<OracleGenerator> mixed_commutator_generators(const SubgroupHandle& h1, const SubgroupHandle& h2);
  friend CentralityResult centrality_check(const SubgroupHandle& H, const std::vector<OracleGenerator>& ambient,
                                          const SubgroupHandle& N);

  std::shared_ptr<const FiniteRing> ring_;
  int n_ = 0;
  std::vector<OracleGenerator> generators_;
  std::vector<FiniteRing::Element> matrices_;
  std::unordered_set<std::string> elements_;
};

inline constexpr std::size_t default_closure_cap = std::size_t{1} << 22;

/// Breadth-first closure under left multiplication by the generators and
/// their known inverses. CapExceeded once more than `cap` elements appear.
SubgroupHandle closure(const FiniteRing& ring, int n, std::vector<OracleGenerator> gens,
                       std::size_t cap = default_closure_cap);

/// E(n, I): transvections t_ij(x) for every x in the ideal.
std::vector<OracleGenerator> elementary_generators(const FiniteRing& ring, int n, const IdealDescriptor& ideal);
/// E(n, R, I): z_ij(x, c) for x in the ideal and c in the ring.
std::vector<OracleGenerator> relative_generators(const FiniteRing& ring, int n, const IdealDescriptor& ideal);
/// [x, y] for every x in h1 and y in h2, which generate [H1, H2].
std::vector<OracleGenerator> mixed_commutator_generators(const SubgroupHandle& h1, const SubgroupHandle& h2);

/// Whether [h, g] lies in N for every generator h of H and every g in ambient.
CentralityResult centrality_check(const SubgroupHandle& H, const std::vector<OracleGenerator>& ambient,
                                  const SubgroupHandle& N);

/// Tag images used when substituting random elements; unlisted tags and
/// plain letters range over the whole ring.
using TagIdeals = std::map<char, IdealDescriptor>;

struct ShadowResult {
  bool ok = true;
  std::size_t trials = 0;
  /// The first failing substitution.
  std::string failure;
};

/// Substitutes random tag-respecting elements for the letters of the
/// certificate's ring and compares lhs with rhs * atoms exactly. Letters in
/// `fixed` keep the given image. Over Z/m the atom claims are checked too.
ShadowResult shadow_certificate(const Certificate& cert, const FiniteRing& ring, const TagIdeals& ideals,
                                std::size_t trials, std::uint64_t seed, const Assignment& fixed = {});

/// Names accepted by numeric_shadow.
std::vector<std::string> shadow_identity_names();

/// Random instances of a built-in identity: "y-explicit", "y-inverse",
/// "table-t-y", "table-y-t", "steinberg". ParseError for unknown names.
ShadowResult numeric_shadow(const std::string& identity, std::size_t trials, const FiniteRing& ring,
                            const TagIdeals& ideals, std::uint64_t seed);

/// a' in (da) and b' in (db) with a' + b' = 1 in Z/m, if the ideals are
/// comaximal.
std::optional<std::pair<std::uint64_t, std::uint64_t>> bezout_pair(std::uint64_t m, std::uint64_t da,
                                                                   std::uint64_t db);

}  // namespace elcomm
