#pragma once

// Exact arithmetic backends: free associative algebras over tagged letters,
// their truncations over prime fields, Z/m, and commutative Z[x..] / Q[x..].

#include <boost/container/small_vector.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace elcomm {

using Integer = boost::multiprecision::cpp_int;

/// Ideal class of a letter: one of the uppercase tags (R excluded) or Plain.
class Tag {
 public:
  constexpr Tag() = default;
  static Tag ideal(char symbol);
  static constexpr Tag plain() { return Tag{}; }

  bool is_plain() const { return symbol_ == 0; }
  /// The uppercase tag character; 'R' for Plain letters.
  char symbol() const { return symbol_ == 0 ? 'R' : symbol_; }

  friend constexpr auto operator<=>(Tag, Tag) = default;

 private:
  char symbol_ = 0;
};

struct Letter {
  std::string name;
  Tag tag;

  friend bool operator==(const Letter&, const Letter&) = default;
};

enum class RingKind { FreeZ, Truncated, ModularInt, CommPolyZ, CommPolyQ };

class RingSpec;
using RingPtr = std::shared_ptr<const RingSpec>;

class RingSpec {
 public:
  static RingPtr free_z(std::vector<Letter> letters);
  /// Free algebra over F_p modulo all monomials of degree > max_degree.
  static RingPtr truncated(std::uint64_t prime, std::size_t max_degree,
                           std::vector<Letter> letters);
  static RingPtr modular(std::uint64_t modulus);
  static RingPtr commutative(bool rational, std::vector<std::string> names);

  RingKind kind() const { return kind_; }
  /// p for truncated algebras, m for Z/m, 0 otherwise.
  std::uint64_t modulus() const { return modulus_; }
  std::size_t max_degree() const { return max_degree_; }
  const std::vector<Letter>& letters() const { return letters_; }
  const Letter& letter(std::uint16_t index) const { return letters_.at(index); }

  std::optional<std::uint16_t> find(std::string_view name) const;
  std::uint16_t index_of(std::string_view name) const;

  bool is_free() const { return kind_ == RingKind::FreeZ || kind_ == RingKind::Truncated; }
  bool is_commutative() const {
    return kind_ == RingKind::CommPolyZ || kind_ == RingKind::CommPolyQ;
  }
  bool is_rational() const { return kind_ == RingKind::CommPolyQ; }
  bool has_tag(Tag tag) const;

  /// Canonical text form, re-parseable by parse_ring.
  std::string to_string() const;

  friend bool operator==(const RingSpec& a, const RingSpec& b) {
    return a.kind_ == b.kind_ && a.modulus_ == b.modulus_ &&
           a.max_degree_ == b.max_degree_ && a.letters_ == b.letters_;
  }

 private:
  RingSpec(RingKind kind, std::uint64_t modulus, std::size_t max_degree,
           std::vector<Letter> letters);

  RingKind kind_;
  std::uint64_t modulus_;
  std::size_t max_degree_;
  std::vector<Letter> letters_;
};

/// Parses "free(Z; a:A, b:B, c:R)", "trunc(F2; a:A, b:B; 3)", "Z/6",
/// "poly(Z; x, y)" or "poly(Q; x, y)".
RingPtr parse_ring(std::string_view text);

bool same_ring(const RingSpec& a, const RingSpec& b);

/// A word in the letters of a ring; the empty word is the unit.
class Monomial {
 public:
  using Storage = boost::container::small_vector<std::uint16_t, 8>;

  Monomial() = default;
  explicit Monomial(Storage letters) : letters_(std::move(letters)) {}
  Monomial(std::initializer_list<std::uint16_t> letters) : letters_(letters) {}

  std::size_t degree() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  std::uint16_t operator[](std::size_t k) const { return letters_[k]; }
  const Storage& letters() const { return letters_; }

  Monomial operator*(const Monomial& other) const;
  /// Subword [from, to).
  Monomial slice(std::size_t from, std::size_t to) const;

  // degree first, then lexicographic on letter indices
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.letters_ == b.letters_;
  }

 private:
  Storage letters_;
};

/// Exact ring element. Coefficients are integers over one common positive
/// denominator, which differs from 1 only in poly(Q; ...) rings.
class Polynomial {
 public:
  struct Term {
    Monomial monomial;
    Integer coeff;
  };

  explicit Polynomial(RingPtr ring);
  static Polynomial constant(RingPtr ring, const Integer& value);
  static Polynomial fraction(RingPtr ring, const Integer& num, const Integer& den);
  static Polynomial letter(RingPtr ring, std::string_view name);
  static Polynomial letter(RingPtr ring, std::uint16_t index);
  static Polynomial monomial(RingPtr ring, Monomial m, const Integer& coeff = 1);

  const RingSpec& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }
  std::span<const Term> terms() const { return terms_; }
  const Integer& denominator() const { return den_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  std::size_t degree() const;
  std::size_t size() const { return terms_.size(); }
  /// Coefficient of m (numerator; divide by denominator() for Q rings).
  Integer coeff(const Monomial& m) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial pow(unsigned exponent) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

  /// Compact text form without spaces, e.g. "1+a*b-2*a*b*a"; re-parseable.
  std::string to_string() const;

 private:
  Polynomial(RingPtr ring, std::vector<Term> terms, Integer den);
  void normalize();
  void check_ring(const Polynomial& other) const;

  RingPtr ring_;
  std::vector<Term> terms_;
  Integer den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

/// Images of letters, keyed by letter name.
using Assignment = std::map<std::string, Polynomial, std::less<>>;

/// Image of p under the ring homomorphism extending the assignment; integer
/// coefficients map through the target's canonical integer image.
Polynomial evaluate_hom(const Polynomial& p, const Assignment& assignment,
                        const RingPtr& target);

/// Parses "1 + a b + a*b*a*b", "x^2 - 3", "(1 - a)(1 + a)"; "3/2" only in Q rings.
/// An undeclared identifier that splits into declared letter names is read
/// as their product, so "abab" means a*b*a*b when a and b are letters.
Polynomial parse_polynomial(const RingPtr& ring, std::string_view text);

}  // namespace elcomm
