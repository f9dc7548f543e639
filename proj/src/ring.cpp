#include "elcomm/ring.hpp"

#include "elcomm/detail/scanner.hpp"
#include "elcomm/error.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <sstream>

namespace elcomm {

namespace {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Integer gcd_abs(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(abs(a), abs(b));
}

}  // namespace

Tag Tag::ideal(char symbol) {
  if (symbol == 'R') return plain();
  if (symbol < 'A' || symbol > 'Z') throw ParseError(std::string("invalid ideal tag '") + symbol + "'");
  Tag t;
  t.symbol_ = symbol;
  return t;
}

RingSpec::RingSpec(RingKind kind, std::uint64_t modulus, std::size_t max_degree,
                   std::vector<Letter> letters)
    : kind_(kind), modulus_(modulus), max_degree_(max_degree), letters_(std::move(letters)) {
  std::set<std::string> seen;
  for (const auto& l : letters_) {
    if (l.name.empty()) throw ParseError("empty letter name");
    if (!seen.insert(l.name).second) throw ParseError("duplicate letter '" + l.name + "'");
  }
  if (letters_.size() > 0xFFFF) throw Error("too many letters");
}

RingPtr RingSpec::free_z(std::vector<Letter> letters) {
  return RingPtr(new RingSpec(RingKind::FreeZ, 0, 0, std::move(letters)));
}

RingPtr RingSpec::truncated(std::uint64_t prime, std::size_t max_degree,
                            std::vector<Letter> letters) {
  if (!is_prime(prime)) throw ParseError("truncated algebra needs a prime field, got " + std::to_string(prime));
  return RingPtr(new RingSpec(RingKind::Truncated, prime, max_degree, std::move(letters)));
}

RingPtr RingSpec::modular(std::uint64_t modulus) {
  if (modulus < 2) throw ParseError("Z/m needs m >= 2");
  return RingPtr(new RingSpec(RingKind::ModularInt, modulus, 0, {}));
}

RingPtr RingSpec::commutative(bool rational, std::vector<std::string> names) {
  std::vector<Letter> letters;
  for (auto& n : names) letters.push_back({std::move(n), Tag::plain()});
  return RingPtr(new RingSpec(rational ? RingKind::CommPolyQ : RingKind::CommPolyZ, 0, 0,
                              std::move(letters)));
}

std::optional<std::uint16_t> RingSpec::find(std::string_view name) const {
  for (std::size_t k = 0; k < letters_.size(); ++k)
    if (letters_[k].name == name) return static_cast<std::uint16_t>(k);
  return std::nullopt;
}

std::uint16_t RingSpec::index_of(std::string_view name) const {
  if (auto k = find(name)) return *k;
  throw ParseError("unknown letter '" + std::string(name) + "' in ring " + to_string());
}

bool RingSpec::has_tag(Tag tag) const {
  return std::any_of(letters_.begin(), letters_.end(), [&](const Letter& l) { return l.tag == tag; });
}

std::string RingSpec::to_string() const {
  std::ostringstream os;
  auto tagged = [&] {
    for (std::size_t k = 0; k < letters_.size(); ++k)
      os << (k ? ", " : "") << letters_[k].name << ':' << letters_[k].tag.symbol();
  };
  switch (kind_) {
    case RingKind::FreeZ:
      os << "free(Z; ";
      tagged();
      os << ')';
      break;
    case RingKind::Truncated:
      os << "trunc(F" << modulus_ << "; ";
      tagged();
      os << "; " << max_degree_ << ')';
      break;
    case RingKind::ModularInt:
      os << "Z/" << modulus_;
      break;
    case RingKind::CommPolyZ:
    case RingKind::CommPolyQ:
      os << "poly(" << (kind_ == RingKind::CommPolyQ ? 'Q' : 'Z') << "; ";
      for (std::size_t k = 0; k < letters_.size(); ++k) os << (k ? ", " : "") << letters_[k].name;
      os << ')';
      break;
  }
  return os.str();
}

bool same_ring(const RingSpec& a, const RingSpec& b) { return &a == &b || a == b; }

namespace {

std::vector<Letter> parse_letter_list(detail::Scanner& s, bool allow_tags) {
  std::vector<Letter> letters;
  if (s.peek() == ')' || s.peek() == ';') return letters;
  do {
    Letter l{s.ident(), Tag::plain()};
    if (s.consume(':')) {
      if (!allow_tags) s.fail("tags are not allowed in commutative rings");
      auto t = s.ident();
      if (t.size() != 1) s.fail("tag must be a single uppercase letter");
      l.tag = Tag::ideal(t[0]);
    }
    letters.push_back(std::move(l));
  } while (s.consume(','));
  return letters;
}

}  // namespace

RingPtr parse_ring(std::string_view text) {
  detail::Scanner s(text);
  if (s.consume("free")) {
    s.expect('(');
    if (!s.consume('Z')) s.fail("free algebras are over Z");
    std::vector<Letter> letters;
    if (s.consume(';')) letters = parse_letter_list(s, true);
    s.expect(')');
    s.expect_end();
    return RingSpec::free_z(std::move(letters));
  }
  if (s.consume("trunc")) {
    s.expect('(');
    s.expect('F');
    auto p = std::stoull(s.digits());
    s.expect(';');
    auto letters = parse_letter_list(s, true);
    s.expect(';');
    auto d = std::stoull(s.digits());
    s.expect(')');
    s.expect_end();
    return RingSpec::truncated(p, d, std::move(letters));
  }
  if (s.consume("poly")) {
    s.expect('(');
    bool rational = false;
    if (s.consume('Q'))
      rational = true;
    else if (!s.consume('Z'))
      s.fail("expected Z or Q");
    std::vector<Letter> letters;
    if (s.consume(';')) letters = parse_letter_list(s, false);
    s.expect(')');
    s.expect_end();
    std::vector<std::string> names;
    for (auto& l : letters) names.push_back(l.name);
    return RingSpec::commutative(rational, std::move(names));
  }
  if (s.consume("Z/")) {
    auto m = std::stoull(s.digits());
    s.expect_end();
    return RingSpec::modular(m);
  }
  s.fail("unknown ring kind");
}

// ---------------------------------------------------------------------------

Monomial Monomial::operator*(const Monomial& other) const {
  Storage out;
  out.reserve(letters_.size() + other.letters_.size());
  out.insert(out.end(), letters_.begin(), letters_.end());
  out.insert(out.end(), other.letters_.begin(), other.letters_.end());
  return Monomial(std::move(out));
}

Monomial Monomial::slice(std::size_t from, std::size_t to) const {
  return Monomial(Storage(letters_.begin() + from, letters_.begin() + to));
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.letters_.begin(), a.letters_.end(),
                                                b.letters_.begin(), b.letters_.end());
}

// ---------------------------------------------------------------------------

Polynomial::Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

Polynomial::Polynomial(RingPtr ring, std::vector<Term> terms, Integer den)
    : ring_(std::move(ring)), terms_(std::move(terms)), den_(std::move(den)) {
  normalize();
}

Polynomial Polynomial::constant(RingPtr ring, const Integer& value) {
  std::vector<Term> t;
  t.push_back({Monomial{}, value});
  return Polynomial(std::move(ring), std::move(t), 1);
}

Polynomial Polynomial::fraction(RingPtr ring, const Integer& num, const Integer& den) {
  if (den == 0) throw Error("zero denominator");
  if (den != 1 && den != -1 && !ring->is_rational())
    throw UnsupportedBackend("fractions need a poly(Q; ...) ring, got " + ring->to_string());
  std::vector<Term> t;
  t.push_back({Monomial{}, den < 0 ? Integer(-num) : num});
  return Polynomial(std::move(ring), std::move(t), abs(den));
}

Polynomial Polynomial::letter(RingPtr ring, std::string_view name) {
  auto k = ring->index_of(name);
  return letter(std::move(ring), k);
}

Polynomial Polynomial::letter(RingPtr ring, std::uint16_t index) {
  if (index >= ring->letters().size()) throw IndexOutOfRange("letter index out of range");
  return monomial(std::move(ring), Monomial{index});
}

Polynomial Polynomial::monomial(RingPtr ring, Monomial m, const Integer& coeff) {
  std::vector<Term> t;
  t.push_back({std::move(m), coeff});
  return Polynomial(std::move(ring), std::move(t), 1);
}

bool Polynomial::is_one() const {
  return terms_.size() == 1 && terms_[0].monomial.empty() && terms_[0].coeff == den_;
}

std::size_t Polynomial::degree() const { return terms_.empty() ? 0 : terms_.back().monomial.degree(); }

Integer Polynomial::coeff(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& k) { return t.monomial < k; });
  if (it != terms_.end() && it->monomial == m) return it->coeff;
  return 0;
}

void Polynomial::check_ring(const Polynomial& other) const {
  if (!same_ring(*ring_, *other.ring_)) throw RingMismatch();
}

void Polynomial::normalize() {
  const auto kind = ring_->kind();
  if (kind == RingKind::ModularInt) {
    for (const auto& t : terms_)
      if (!t.monomial.empty()) throw Error("Z/m has no letters");
  }
  if (ring_->is_commutative()) {
    for (auto& t : terms_) {
      auto letters = t.monomial.letters();
      std::sort(letters.begin(), letters.end());
      t.monomial = Monomial(std::move(letters));
    }
  }
  if (kind == RingKind::Truncated) {
    std::erase_if(terms_, [&](const Term& t) { return t.monomial.degree() > ring_->max_degree(); });
  }
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.monomial < b.monomial; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().monomial == t.monomial)
      out.back().coeff += t.coeff;
    else
      out.push_back(std::move(t));
  }
  if (kind == RingKind::Truncated || kind == RingKind::ModularInt) {
    const Integer m = ring_->modulus();
    for (auto& t : out) {
      t.coeff %= m;
      if (t.coeff < 0) t.coeff += m;
    }
  }
  std::erase_if(out, [](const Term& t) { return t.coeff == 0; });
  terms_ = std::move(out);
  if (den_ != 1) {
    if (terms_.empty()) {
      den_ = 1;
    } else {
      Integer g = den_;
      for (const auto& t : terms_) {
        g = gcd_abs(g, t.coeff);
        if (g == 1) break;
      }
      if (g != 1) {
        den_ /= g;
        for (auto& t : terms_) t.coeff /= g;
      }
    }
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r(ring_);
  r.terms_ = terms_;
  r.den_ = den_;
  const bool modular = ring_->kind() == RingKind::Truncated || ring_->kind() == RingKind::ModularInt;
  for (auto& t : r.terms_) t.coeff = modular ? Integer(ring_->modulus() - t.coeff) : Integer(-t.coeff);
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  check_ring(other);
  if (other.terms_.empty()) return *this;
  if (den_ != 1 || other.den_ != 1) {
    std::vector<Term> all;
    all.reserve(terms_.size() + other.terms_.size());
    for (auto& t : terms_) all.push_back({t.monomial, t.coeff * other.den_});
    for (auto& t : other.terms_) all.push_back({t.monomial, t.coeff * den_});
    *this = Polynomial(ring_, std::move(all), den_ * other.den_);
    return *this;
  }
  const bool modular = ring_->kind() == RingKind::Truncated || ring_->kind() == RingKind::ModularInt;
  std::vector<Term> out;
  out.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && a->monomial < b->monomial)) {
      out.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->monomial < a->monomial) {
      out.push_back(*b++);
    } else {
      Integer c = a->coeff + b->coeff;
      if (modular && c >= ring_->modulus()) c -= ring_->modulus();
      if (c != 0) out.push_back({std::move(a->monomial), std::move(c)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) { return *this += -other; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_ring(b);
  if (a.terms_.empty() || b.terms_.empty()) return Polynomial(a.ring_);
  const bool truncated = a.ring_->kind() == RingKind::Truncated;
  const std::size_t bound = a.ring_->max_degree();
  std::vector<Polynomial::Term> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      if (truncated && s.monomial.degree() + t.monomial.degree() > bound) continue;
      out.push_back({s.monomial * t.monomial, s.coeff * t.coeff});
    }
  }
  return Polynomial(a.ring_, std::move(out), a.den_ * b.den_);
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result = constant(ring_, 1);
  Polynomial base = *this;
  while (exponent) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1u;
    if (exponent) base = base * base;
  }
  return result;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (!same_ring(*a.ring_, *b.ring_)) return false;
  if (a.den_ != b.den_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t k = 0; k < a.terms_.size(); ++k)
    if (a.terms_[k].monomial != b.terms_[k].monomial || a.terms_[k].coeff != b.terms_[k].coeff)
      return false;
  return true;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Integer num = t.coeff;
    Integer den = den_;
    if (den != 1) {
      Integer g = gcd_abs(num, den);
      num /= g;
      den /= g;
    }
    if (num < 0) {
      os << '-';
      num = -num;
    } else if (!first) {
      os << '+';
    }
    first = false;
    const bool unit = num == 1 && den == 1;
    if (!unit || t.monomial.empty()) {
      os << num;
      if (den != 1) os << '/' << den;
      if (!t.monomial.empty()) os << '*';
    }
    for (std::size_t k = 0; k < t.monomial.degree(); ++k)
      os << (k ? "*" : "") << ring_->letter(t.monomial[k]).name;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

Polynomial evaluate_hom(const Polynomial& p, const Assignment& assignment, const RingPtr& target) {
  const auto& letters = p.ring().letters();
  std::vector<const Polynomial*> images(letters.size(), nullptr);
  auto image = [&](std::uint16_t k) -> const Polynomial& {
    if (!images[k]) {
      auto it = assignment.find(letters[k].name);
      if (it == assignment.end()) throw UnassignedLetter(letters[k].name);
      if (!same_ring(it->second.ring(), *target)) throw RingMismatch();
      images[k] = &it->second;
    }
    return *images[k];
  };
  Polynomial result(target);
  for (const auto& t : p.terms()) {
    Polynomial term = Polynomial::constant(target, t.coeff);
    for (std::size_t k = 0; k < t.monomial.degree() && !term.is_zero(); ++k)
      term = term * image(t.monomial[k]);
    result += term;
  }
  if (p.denominator() != 1) result = result * Polynomial::fraction(target, 1, p.denominator());
  return result;
}

// ---------------------------------------------------------------------------

namespace {

class PolyParser {
 public:
  PolyParser(const RingPtr& ring, std::string_view text) : ring_(ring), s_(text) {}

  Polynomial parse() {
    auto p = expr();
    s_.expect_end();
    return p;
  }

 private:
  Polynomial expr() {
    Polynomial acc(ring_);
    bool neg = false;
    if (s_.consume('-'))
      neg = true;
    else
      s_.consume('+');
    auto t = term();
    acc = neg ? -t : t;
    for (;;) {
      if (s_.consume('+'))
        acc += term();
      else if (s_.consume('-'))
        acc -= term();
      else
        break;
    }
    return acc;
  }

  bool factor_starts() {
    char c = s_.peek();
    return c == '(' || std::isdigit(static_cast<unsigned char>(c)) ||
           std::isalpha(static_cast<unsigned char>(c));
  }

  Polynomial term() {
    Polynomial acc = power();
    for (;;) {
      if (s_.consume('*'))
        acc = acc * power();
      else if (factor_starts())
        acc = acc * power();
      else
        break;
    }
    return acc;
  }

  Polynomial power() {
    Polynomial base = factor();
    if (s_.consume('^')) {
      auto e = s_.digits();
      if (e.size() > 4) s_.fail("exponent too large");
      base = base.pow(static_cast<unsigned>(std::stoul(e)));
    }
    return base;
  }

  Polynomial factor() {
    if (s_.consume('(')) {
      auto p = expr();
      s_.expect(')');
      return p;
    }
    if (s_.peek_digit()) {
      Integer num(s_.digits());
      if (s_.consume('/')) {
        Integer den(s_.digits());
        if (!ring_->is_rational()) s_.fail("fractions need a poly(Q; ...) ring");
        if (den == 0) s_.fail("zero denominator");
        return Polynomial::fraction(ring_, num, den);
      }
      return Polynomial::constant(ring_, num);
    }
    auto start = s_.pos();
    auto name = s_.ident();
    if (auto k = ring_->find(name)) return Polynomial::letter(ring_, *k);
    auto split = split_letters(name);
    if (!split) {
      s_.set_pos(start);
      s_.fail("unknown letter '" + name + "'");
    }
    return Polynomial::monomial(ring_, Monomial(std::move(*split)));
  }

  // Segments an undeclared identifier into declared names, preferring long names first.
  std::optional<Monomial::Storage> split_letters(const std::string& name) const {
    const std::size_t n = name.size();
    std::vector<std::optional<Monomial::Storage>> best(n + 1);
    best[n] = Monomial::Storage{};
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t len = n - i; len >= 1; --len) {
        if (!best[i + len]) continue;
        if (auto k = ring_->find(std::string_view(name).substr(i, len))) {
          Monomial::Storage w{*k};
          w.insert(w.end(), best[i + len]->begin(), best[i + len]->end());
          best[i] = std::move(w);
          break;
        }
      }
    }
    return best[0];
  }

  const RingPtr& ring_;
  detail::Scanner s_;
};

}  // namespace

Polynomial parse_polynomial(const RingPtr& ring, std::string_view text) {
  return PolyParser(ring, text).parse();
}

}  // namespace elcomm
