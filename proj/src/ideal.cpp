#include "elcomm/ideal.hpp"

#include "elcomm/detail/scanner.hpp"
#include "elcomm/error.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace elcomm {

IdealExpr IdealExpr::atom(char tag) {
  if (tag < 'A' || tag > 'Z' || tag == 'R') throw ParseError(std::string("invalid ideal atom '") + tag + "'");
  return IdealExpr(std::make_shared<const Node>(Node{Kind::Atom, tag, nullptr}));
}

IdealExpr IdealExpr::full_ring() {
  return IdealExpr(std::make_shared<const Node>(Node{Kind::FullRing, 0, nullptr}));
}

IdealExpr IdealExpr::sum(IdealExpr a, IdealExpr b) {
  return IdealExpr(std::make_shared<const Node>(
      Node{Kind::Sum, 0, std::make_shared<const std::pair<IdealExpr, IdealExpr>>(std::move(a), std::move(b))}));
}

IdealExpr IdealExpr::prod(IdealExpr a, IdealExpr b) {
  return IdealExpr(std::make_shared<const Node>(
      Node{Kind::Prod, 0, std::make_shared<const std::pair<IdealExpr, IdealExpr>>(std::move(a), std::move(b))}));
}

IdealExpr IdealExpr::symprod(IdealExpr a, IdealExpr b) {
  return IdealExpr(std::make_shared<const Node>(
      Node{Kind::SymProd, 0, std::make_shared<const std::pair<IdealExpr, IdealExpr>>(std::move(a), std::move(b))}));
}

namespace {

int precedence(IdealExpr::Kind k) {
  switch (k) {
    case IdealExpr::Kind::Sum: return 1;
    case IdealExpr::Kind::Prod:
    case IdealExpr::Kind::SymProd: return 2;
    default: return 3;
  }
}

void print(std::ostringstream& os, const IdealExpr& e) {
  switch (e.kind()) {
    case IdealExpr::Kind::Atom: os << e.tag(); return;
    case IdealExpr::Kind::FullRing: os << 'R'; return;
    default: break;
  }
  const bool product = e.kind() != IdealExpr::Kind::Sum;
  // products always bracket compound factors; sums only bracket a right-nested sum
  auto child = [&](const IdealExpr& c, bool right) {
    const bool atomic = precedence(c.kind()) == 3;
    const bool paren = product ? !atomic : (right && c.kind() == IdealExpr::Kind::Sum);
    if (paren) os << '(';
    print(os, c);
    if (paren) os << ')';
  };
  child(e.left(), false);
  os << (e.kind() == IdealExpr::Kind::Sum ? '+' : e.kind() == IdealExpr::Kind::Prod ? '.' : 'o');
  child(e.right(), true);
}

}  // namespace

std::string IdealExpr::to_string() const {
  std::ostringstream os;
  print(os, *this);
  return os.str();
}

std::vector<char> IdealExpr::tags() const {
  std::vector<char> out;
  std::function<void(const IdealExpr&)> walk = [&](const IdealExpr& e) {
    if (e.kind() == Kind::Atom) {
      if (std::find(out.begin(), out.end(), e.tag()) == out.end()) out.push_back(e.tag());
    } else if (e.kind() != Kind::FullRing) {
      walk(e.left());
      walk(e.right());
    }
  };
  walk(*this);
  return out;
}

bool operator==(const IdealExpr& a, const IdealExpr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case IdealExpr::Kind::Atom: return a.tag() == b.tag();
    case IdealExpr::Kind::FullRing: return true;
    default: return a.left() == b.left() && a.right() == b.right();
  }
}

// ---------------------------------------------------------------------------

namespace {

class IdealParser {
 public:
  explicit IdealParser(std::string_view text) : s_(text) {}

  IdealExpr parse() {
    auto e = sum();
    s_.expect_end();
    return e;
  }

 private:
  IdealExpr sum() {
    auto e = product();
    while (s_.consume('+')) e = IdealExpr::sum(e, product());
    return e;
  }
  IdealExpr product() {
    auto e = primary();
    for (;;) {
      if (s_.consume('.'))
        e = IdealExpr::prod(e, primary());
      else if (s_.consume('o'))
        e = IdealExpr::symprod(e, primary());
      else
        return e;
    }
  }
  IdealExpr primary() {
    if (s_.consume('(')) {
      auto e = sum();
      s_.expect(')');
      return e;
    }
    char c = s_.peek();
    if (c >= 'A' && c <= 'Z') {
      s_.consume(c);
      return c == 'R' ? IdealExpr::full_ring() : IdealExpr::atom(c);
    }
    s_.fail("expected ideal atom or '('");
  }

  detail::Scanner s_;
};

void validate(const RingSpec& ring, const IdealExpr& ideal) {
  if (!ring.is_free())
    throw UnsupportedBackend("ideal membership is decided only over free algebras, got " +
                             ring.to_string());
  for (char t : ideal.tags())
    if (!ring.has_tag(Tag::ideal(t))) throw UnknownTag(t);
}

bool letter_has_tag(const RingSpec& ring, std::uint16_t letter, char tag) {
  auto t = ring.letter(letter).tag;
  return !t.is_plain() && t.symbol() == tag;
}

// Memo table over (node, from, to); nodes are numbered on first visit.
class MembershipDP {
 public:
  MembershipDP(const RingSpec& ring, const Monomial& m) : ring_(ring), m_(m), len_(m.degree() + 1) {}

  bool member(const IdealExpr& e, std::size_t from, std::size_t to) {
    auto& slot = cell(e, from, to);
    if (slot >= 0) return slot != 0;
    bool r = compute(e, from, to);
    cell(e, from, to) = r ? 1 : 0;
    return r;
  }

  MembershipWitness witness(const IdealExpr& e, std::size_t from, std::size_t to) {
    MembershipWitness w{e.kind(), from, to, 0, 0, {}};
    switch (e.kind()) {
      case IdealExpr::Kind::Atom:
        for (std::size_t k = from; k < to; ++k)
          if (letter_has_tag(ring_, m_[k], e.tag())) {
            w.position = k;
            break;
          }
        break;
      case IdealExpr::Kind::FullRing:
        break;
      case IdealExpr::Kind::Sum:
        if (member(e.left(), from, to)) {
          w.children.push_back(witness(e.left(), from, to));
        } else {
          w.branch = 1;
          w.children.push_back(witness(e.right(), from, to));
        }
        break;
      case IdealExpr::Kind::Prod:
      case IdealExpr::Kind::SymProd: {
        const bool sym = e.kind() == IdealExpr::Kind::SymProd;
        for (int branch = 0; branch < (sym ? 2 : 1); ++branch) {
          const IdealExpr& first = branch == 0 ? e.left() : e.right();
          const IdealExpr& second = branch == 0 ? e.right() : e.left();
          for (std::size_t k = from; k <= to; ++k) {
            if (member(first, from, k) && member(second, k, to)) {
              w.branch = branch;
              w.position = k;
              w.children.push_back(witness(first, from, k));
              w.children.push_back(witness(second, k, to));
              return w;
            }
          }
        }
        break;
      }
    }
    return w;
  }

 private:
  bool compute(const IdealExpr& e, std::size_t from, std::size_t to) {
    switch (e.kind()) {
      case IdealExpr::Kind::Atom:
        for (std::size_t k = from; k < to; ++k)
          if (letter_has_tag(ring_, m_[k], e.tag())) return true;
        return false;
      case IdealExpr::Kind::FullRing:
        return true;
      case IdealExpr::Kind::Sum:
        return member(e.left(), from, to) || member(e.right(), from, to);
      case IdealExpr::Kind::Prod:
        return split(e.left(), e.right(), from, to);
      case IdealExpr::Kind::SymProd:
        return split(e.left(), e.right(), from, to) || split(e.right(), e.left(), from, to);
    }
    return false;
  }

  bool split(const IdealExpr& first, const IdealExpr& second, std::size_t from, std::size_t to) {
    for (std::size_t k = from; k <= to; ++k)
      if (member(first, from, k) && member(second, k, to)) return true;
    return false;
  }

  signed char& cell(const IdealExpr& e, std::size_t from, std::size_t to) {
    std::size_t id = node_id(e);
    return table_[(id * len_ + from) * len_ + to];
  }

  std::size_t node_id(const IdealExpr& e) {
    // identity of the expression object, stable for the DP's lifetime
    auto key = static_cast<const void*>(&e);
    for (std::size_t k = 0; k < keys_.size(); ++k)
      if (keys_[k] == key) return k;
    keys_.push_back(key);
    table_.resize(keys_.size() * len_ * len_, -1);
    return keys_.size() - 1;
  }

  const RingSpec& ring_;
  const Monomial& m_;
  std::size_t len_;
  std::vector<const void*> keys_;
  std::vector<signed char> table_;
};

}  // namespace

IdealExpr parse_ideal(std::string_view text) { return IdealParser(text).parse(); }

MembershipResult monomial_member(const RingSpec& ring, const Monomial& m, const IdealExpr& ideal) {
  validate(ring, ideal);
  MembershipDP dp(ring, m);
  MembershipResult r;
  r.member = dp.member(ideal, 0, m.degree());
  if (r.member) r.witness = dp.witness(ideal, 0, m.degree());
  return r;
}

bool replay_witness(const RingSpec& ring, const Monomial& m, const IdealExpr& ideal,
                    const MembershipWitness& w) {
  if (w.kind != ideal.kind() || w.from > w.to || w.to > m.degree()) return false;
  switch (ideal.kind()) {
    case IdealExpr::Kind::Atom:
      return w.position >= w.from && w.position < w.to && letter_has_tag(ring, m[w.position], ideal.tag());
    case IdealExpr::Kind::FullRing:
      return true;
    case IdealExpr::Kind::Sum: {
      if (w.children.size() != 1 || w.branch < 0 || w.branch > 1) return false;
      const auto& c = w.children[0];
      if (c.from != w.from || c.to != w.to) return false;
      return replay_witness(ring, m, w.branch == 0 ? ideal.left() : ideal.right(), c);
    }
    case IdealExpr::Kind::Prod:
    case IdealExpr::Kind::SymProd: {
      if (w.children.size() != 2) return false;
      if (w.branch != 0 && !(w.branch == 1 && ideal.kind() == IdealExpr::Kind::SymProd)) return false;
      const auto& a = w.children[0];
      const auto& b = w.children[1];
      if (a.from != w.from || a.to != w.position || b.from != w.position || b.to != w.to) return false;
      const IdealExpr& first = w.branch == 0 ? ideal.left() : ideal.right();
      const IdealExpr& second = w.branch == 0 ? ideal.right() : ideal.left();
      return replay_witness(ring, m, first, a) && replay_witness(ring, m, second, b);
    }
  }
  return false;
}

std::string describe_witness(const RingSpec& ring, const Monomial& m, const MembershipWitness& w) {
  auto word = [&](std::size_t from, std::size_t to) {
    if (from == to) return std::string("1");
    std::string s;
    for (std::size_t k = from; k < to; ++k) s += (k > from ? "*" : "") + ring.letter(m[k]).name;
    return s;
  };
  switch (w.kind) {
    case IdealExpr::Kind::Atom:
      return word(w.from, w.to) + " ∋ " + ring.letter(m[w.position]).name + ":" +
             ring.letter(m[w.position]).tag.symbol();
    case IdealExpr::Kind::FullRing:
      return word(w.from, w.to) + ":R";
    case IdealExpr::Kind::Sum:
      return describe_witness(ring, m, w.children[0]);
    default:
      return "(" + describe_witness(ring, m, w.children[0]) + " | " +
             describe_witness(ring, m, w.children[1]) + ")";
  }
}

namespace {

bool brute(const RingSpec& ring, const Monomial& m, const IdealExpr& e, std::size_t from, std::size_t to) {
  switch (e.kind()) {
    case IdealExpr::Kind::Atom: {
      bool found = false;
      for (std::size_t k = from; k < to; ++k) found = found || letter_has_tag(ring, m[k], e.tag());
      return found;
    }
    case IdealExpr::Kind::FullRing:
      return true;
    case IdealExpr::Kind::Sum:
      return brute(ring, m, e.left(), from, to) || brute(ring, m, e.right(), from, to);
    case IdealExpr::Kind::Prod:
    case IdealExpr::Kind::SymProd: {
      bool found = false;
      for (std::size_t k = from; k <= to; ++k) {
        found = found || (brute(ring, m, e.left(), from, k) && brute(ring, m, e.right(), k, to));
        if (e.kind() == IdealExpr::Kind::SymProd)
          found = found || (brute(ring, m, e.right(), from, k) && brute(ring, m, e.left(), k, to));
      }
      return found;
    }
  }
  return false;
}

}  // namespace

bool brute_member(const RingSpec& ring, const Monomial& m, const IdealExpr& ideal, std::size_t degree_bound) {
  validate(ring, ideal);
  if (m.degree() > degree_bound) throw DegreeBoundExceeded(m.degree(), degree_bound);
  return brute(ring, m, ideal, 0, m.degree());
}

bool poly_member(const Polynomial& p, const IdealExpr& ideal) {
  validate(p.ring(), ideal);
  for (const auto& t : p.terms()) {
    MembershipDP dp(p.ring(), t.monomial);
    if (!dp.member(ideal, 0, t.monomial.degree())) return false;
  }
  return true;
}

}  // namespace elcomm
