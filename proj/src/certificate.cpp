#include "elcomm/certificate.hpp"

#include "elcomm/error.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace elcomm {

GroupWord ConjTransvection::word() const { return GroupWord::conjugate(conj, GroupWord::t(i, j, arg)); }

GroupWord CommAtom::word() const { return GroupWord::commutator(left.word(), right.word()); }

GroupWord atom_word(const WitnessAtom& atom) {
  return std::visit([](const auto& a) { return a.word(); }, atom);
}

WitnessAtom invert(const WitnessAtom& atom) {
  if (const auto* t = std::get_if<ConjTransvection>(&atom)) {
    auto out = *t;
    out.arg = -out.arg;
    return out;
  }
  const auto& c = std::get<CommAtom>(atom);
  return CommAtom{c.right, c.left};
}

WitnessAtom conjugate(const GroupWord& x, const WitnessAtom& atom) {
  auto move = [&](ConjTransvection t) {
    t.conj = x * t.conj;
    return t;
  };
  if (const auto* t = std::get_if<ConjTransvection>(&atom)) return move(*t);
  const auto& c = std::get<CommAtom>(atom);
  return CommAtom{move(c.left), move(c.right)};
}

std::string Modulus::to_string() const {
  if (kind == Kind::Elem) return "ELEM(" + first.to_string() + ")";
  return "MIXED(" + first.to_string() + ";" + second->to_string() + ")";
}

GroupWord as_transvections(const GroupWord& w) {
  std::vector<GroupWord> ts;
  for (auto& t : flatten(w)) ts.push_back(GroupWord::t(t.i, t.j, std::move(t.arg)));
  return GroupWord::product(ts);
}

namespace {

std::string clip(const std::string& s, std::size_t limit = 200) {
  return s.size() <= limit ? s : s.substr(0, limit) + "...";
}

std::string describe(const ConjTransvection& t) {
  return "t[" + std::to_string(t.i) + "," + std::to_string(t.j) + "](" + clip(t.arg.to_string(), 80) + ")";
}

// Empty if the claim holds, else the reason.
std::string claim_failure(const ConjTransvection& t) {
  if (!poly_member(t.arg, t.claim)) return describe(t) + " argument is not in claimed ideal " + t.claim.to_string();
  return {};
}

std::string atom_failure(const WitnessAtom& atom, const Modulus& m) {
  if (const auto* t = std::get_if<ConjTransvection>(&atom)) {
    if (auto f = claim_failure(*t); !f.empty()) return f;
    auto target = m.kind == Modulus::Kind::Elem ? m.first : IdealExpr::symprod(m.first, *m.second);
    if (!poly_member(t->arg, target))
      return describe(*t) + " argument is not in " + target.to_string() + " required by " + m.to_string();
    return {};
  }
  const auto& c = std::get<CommAtom>(atom);
  for (const auto* side : {&c.left, &c.right})
    if (auto f = claim_failure(*side); !f.empty()) return f;
  auto in = [](const ConjTransvection& t, const IdealExpr& i) { return poly_member(t.arg, i); };
  if (m.kind == Modulus::Kind::Elem) {
    if (in(c.left, m.first) || in(c.right, m.first)) return {};
    return "commutator [" + describe(c.left) + "," + describe(c.right) + "] has no side in " + m.first.to_string();
  }
  const auto& I = m.first;
  const auto& J = *m.second;
  auto IJ = IdealExpr::symprod(I, J);
  if ((in(c.left, I) && in(c.right, J)) || (in(c.left, J) && in(c.right, I)) || in(c.left, IJ) || in(c.right, IJ))
    return {};
  return "commutator [" + describe(c.left) + "," + describe(c.right) + "] is not a generator of " + m.to_string();
}

// Right multiplication by conjugated transvections, reusing X and X^-1 per
// conjugator.
class AtomEvaluator {
 public:
  AtomEvaluator(RingPtr ring, int n) : ring_(std::move(ring)), n_(n) {}

  void apply(SquareMatrix& m, const ConjTransvection& t, const Polynomial& arg) {
    if (t.i > n_ || t.j > n_) throw IndexOutOfRange("atom index exceeds degree");
    if (!same_ring(arg.ring(), *ring_)) throw RingMismatch();
    if (t.conj.is_identity()) {
      m.multiply_right_transvection(t.i - 1, t.j - 1, arg);
      return;
    }
    const auto& [x, xinv] = conj(t.conj);
    auto u = x.column(t.i - 1);
    auto v = xinv.row(t.j - 1);
    m.multiply_right_rank_one(u, arg, v);
  }

  void apply(SquareMatrix& m, const WitnessAtom& atom) {
    if (const auto* t = std::get_if<ConjTransvection>(&atom)) {
      apply(m, *t, t->arg);
      return;
    }
    const auto& c = std::get<CommAtom>(atom);
    apply(m, c.left, c.left.arg);
    apply(m, c.right, c.right.arg);
    apply(m, c.left, -c.left.arg);
    apply(m, c.right, -c.right.arg);
  }

 private:
  const std::pair<SquareMatrix, SquareMatrix>& conj(const GroupWord& w) {
    auto key = w.to_string();
    auto it = cache_.find(key);
    if (it == cache_.end())
      it = cache_.emplace(key, std::make_pair(eval(w, ring_, n_), eval(GroupWord::inverse(w), ring_, n_))).first;
    return it->second;
  }

  RingPtr ring_;
  int n_;
  std::map<std::string, std::pair<SquareMatrix, SquareMatrix>> cache_;
};

}  // namespace

CheckResult check(const Certificate& c) {
  try {
    if (!c.ring->is_free()) return {false, "certificates are checked over free-algebra rings only"};
    if (c.n < 2) return {false, "degree must be at least 2"};
    if ((c.modulus.kind == Modulus::Kind::Mixed) != c.modulus.second.has_value())
      return {false, "malformed modulus"};
    for (std::size_t k = 0; k < c.atoms.size(); ++k)
      if (auto f = atom_failure(c.atoms[k], c.modulus); !f.empty())
        return {false, "atom " + std::to_string(k + 1) + ": " + f};

    auto lhs = eval(c.lhs, c.ring, c.n);
    auto rhs = eval(c.rhs, c.ring, c.n);
    AtomEvaluator atoms(c.ring, c.n);
    for (const auto& a : c.atoms) atoms.apply(rhs, a);
    for (int r = 0; r < c.n; ++r)
      for (int k = 0; k < c.n; ++k)
        if (lhs(r, k) != rhs(r, k))
          return {false, "matrix entry (" + std::to_string(r + 1) + "," + std::to_string(k + 1) +
                             ") differs: lhs has " + clip(lhs(r, k).to_string()) + ", rhs*atoms has " +
                             clip(rhs(r, k).to_string())};
    return {true, {}};
  } catch (const Error& e) {
    return {false, e.what()};
  }
}

namespace {

std::string gen_text(const ConjTransvection& t) {
  return GroupWord::t(t.i, t.j, t.arg).to_string();
}

}  // namespace

std::string serialize(const Certificate& c) {
  std::ostringstream os;
  os << "certificate v1 n=" << c.n << " ring=" << c.ring->to_string() << '\n';
  os << "modulus " << c.modulus.to_string() << '\n';
  os << "lhs " << c.lhs.to_string() << '\n';
  os << "rhs " << c.rhs.to_string() << '\n';
  for (const auto& atom : c.atoms) {
    if (const auto* t = std::get_if<ConjTransvection>(&atom)) {
      os << "atom conj=" << t->conj.to_string() << " gen=" << gen_text(*t) << " claim=" << t->claim.to_string()
         << '\n';
    } else {
      const auto& m = std::get<CommAtom>(atom);
      os << "atom comm conj1=" << m.left.conj.to_string() << " gen1=" << gen_text(m.left)
         << " claim1=" << m.left.claim.to_string() << " conj2=" << m.right.conj.to_string()
         << " gen2=" << gen_text(m.right) << " claim2=" << m.right.claim.to_string() << '\n';
    }
  }
  return os.str();
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Values of "k1=v1 k2=v2 ..." with the keys in the given order; a value runs
// up to the next " key=".
std::vector<std::string_view> keyed_fields(std::string_view line, const std::vector<std::string>& keys) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  for (std::size_t k = 0; k < keys.size(); ++k) {
    auto key = keys[k] + "=";
    auto at = k == 0 ? line.find(key, pos) : line.find(" " + key, pos);
    if (at == std::string_view::npos) throw ParseError("missing field '" + keys[k] + "'", line, pos);
    auto start = at + (k == 0 ? 0 : 1) + key.size();
    std::size_t end = line.size();
    if (k + 1 < keys.size()) {
      auto next = line.find(" " + keys[k + 1] + "=", start);
      if (next == std::string_view::npos) throw ParseError("missing field '" + keys[k + 1] + "'", line, start);
      end = next;
    }
    out.push_back(trim(line.substr(start, end - start)));
    pos = end;
  }
  return out;
}

ConjTransvection parse_conj_transvection(const RingPtr& ring, std::string_view conj, std::string_view gen,
                                         std::string_view claim) {
  auto g = parse_word(ring, gen);
  if (g.kind() != GroupWord::Kind::Gen || g.symbol().kind != GenSymbol::Kind::T)
    throw ParseError("atom generator must be a single t[i,j](...)", gen, 0);
  const auto& s = g.symbol();
  return ConjTransvection{parse_word(ring, conj), s.i, s.j, s.first, parse_ideal(claim)};
}

Modulus parse_modulus(std::string_view text) {
  auto open = text.find('('), close = text.rfind(')');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open || close + 1 != text.size())
    throw ParseError("malformed modulus", text, 0);
  auto head = text.substr(0, open);
  auto body = text.substr(open + 1, close - open - 1);
  if (head == "ELEM") return Modulus::elem(parse_ideal(body));
  if (head == "MIXED") {
    auto semi = body.find(';');
    if (semi == std::string_view::npos) throw ParseError("MIXED needs two ideals", text, open);
    return Modulus::mixed(parse_ideal(body.substr(0, semi)), parse_ideal(body.substr(semi + 1)));
  }
  throw ParseError("unknown modulus kind", text, 0);
}

}  // namespace

Certificate parse_certificate(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    auto nl = text.find('\n');
    auto line = trim(text.substr(0, nl));
    if (!line.empty()) lines.push_back(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  if (lines.size() < 4) throw ParseError("certificate needs header, modulus, lhs and rhs lines");
  auto header = lines[0];
  if (header.substr(0, 12) != "certificate ") throw ParseError("missing certificate header", header, 0);
  if (header.substr(12, 3) != "v1 ") throw ParseError("unsupported certificate version", header, 12);
  auto fields = keyed_fields(header.substr(15), {"n", "ring"});
  int n = 0;
  try {
    n = std::stoi(std::string(fields[0]));
  } catch (const std::exception&) {
    throw ParseError("bad degree", header, 15);
  }
  auto ring = parse_ring(fields[1]);

  auto expect_prefix = [](std::string_view line, std::string_view prefix) {
    if (line.substr(0, prefix.size()) != prefix) throw ParseError("expected '" + std::string(prefix) + "'", line, 0);
    return trim(line.substr(prefix.size()));
  };
  Certificate c{n, ring, parse_modulus(expect_prefix(lines[1], "modulus ")), parse_word(ring, expect_prefix(lines[2], "lhs ")),
                parse_word(ring, expect_prefix(lines[3], "rhs ")), {}};
  for (std::size_t k = 4; k < lines.size(); ++k) {
    auto body = expect_prefix(lines[k], "atom ");
    if (body.substr(0, 5) == "comm ") {
      auto f = keyed_fields(body.substr(5), {"conj1", "gen1", "claim1", "conj2", "gen2", "claim2"});
      c.atoms.push_back(CommAtom{parse_conj_transvection(ring, f[0], f[1], f[2]),
                                 parse_conj_transvection(ring, f[3], f[4], f[5])});
    } else {
      auto f = keyed_fields(body, {"conj", "gen", "claim"});
      c.atoms.push_back(parse_conj_transvection(ring, f[0], f[1], f[2]));
    }
  }
  return c;
}

Congruence Congruence::reversed() const {
  Congruence out{rhs, lhs, {}};
  for (auto it = atoms.rbegin(); it != atoms.rend(); ++it) out.atoms.push_back(invert(*it));
  return out;
}

Congruence Congruence::conjugated(const GroupWord& x) const {
  Congruence out{GroupWord::conjugate(x, lhs), GroupWord::conjugate(x, rhs), {}};
  for (const auto& a : atoms) out.atoms.push_back(conjugate(x, a));
  return out;
}

Congruence Congruence::then(const Congruence& next) const {
  Congruence out{lhs, next.rhs, next.atoms};
  out.atoms.insert(out.atoms.end(), atoms.begin(), atoms.end());
  return out;
}

Congruence Congruence::times(const Congruence& other) const {
  FactorChain chain;
  chain.congruence(*this);
  chain.congruence(other);
  return chain.finish(lhs * other.lhs);
}

Certificate Congruence::certificate(int n, RingPtr ring, Modulus modulus) const {
  Certificate c{n, std::move(ring), std::move(modulus), lhs, rhs, {}};
  auto tidy = [](ConjTransvection t) {
    t.conj = as_transvections(t.conj);
    return t;
  };
  for (const auto& a : atoms) {
    if (const auto* t = std::get_if<ConjTransvection>(&a)) {
      if (!t->arg.is_zero()) c.atoms.push_back(tidy(*t));
    } else {
      const auto& m = std::get<CommAtom>(a);
      if (!m.left.arg.is_zero() && !m.right.arg.is_zero()) c.atoms.push_back(CommAtom{tidy(m.left), tidy(m.right)});
    }
  }
  return c;
}

Congruence FactorChain::finish(const GroupWord& lhs) const {
  std::vector<GroupWord> main;
  std::vector<WitnessAtom> moved;
  GroupWord suffix;
  for (auto it = items_.rbegin(); it != items_.rend(); ++it) {
    if (const auto* w = std::get_if<GroupWord>(&*it)) {
      suffix = *w * suffix;
      main.push_back(*w);
    } else {
      moved.push_back(conjugate(GroupWord::inverse(suffix), std::get<WitnessAtom>(*it)));
    }
  }
  std::reverse(main.begin(), main.end());
  std::reverse(moved.begin(), moved.end());
  return Congruence{lhs, GroupWord::product(main), std::move(moved)};
}

}  // namespace elcomm
