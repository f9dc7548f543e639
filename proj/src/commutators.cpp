#include "congruences.hpp"
#include "elcomm/error.hpp"
#include "elcomm/tables.hpp"

#include <sstream>

namespace elcomm {

namespace detail {

namespace {

Role role_of(int index, int i, int j) { return index == i ? Role::I : index == j ? Role::J : Role::H; }

std::vector<IdealExpr> triple_claims(const ElementaryCommutator& y, const IdealExpr& C) {
  auto ab = IdealExpr::prod(y.A, y.B), ba = IdealExpr::prod(y.B, y.A);
  return {IdealExpr::prod(ab, C), IdealExpr::prod(ba, C), IdealExpr::prod(C, ab), IdealExpr::prod(C, ba),
          IdealExpr::symprod(y.level(), C)};
}

ConjTransvection plain(const Transvection& t, IdealExpr claim) {
  return ConjTransvection{GroupWord(), t.i, t.j, t.arg, std::move(claim)};
}

ConjTransvection conj_by(const GroupWord& x, ConjTransvection t) {
  t.conj = x * t.conj;
  return t;
}

}  // namespace

Congruence triple(const ElementaryCommutator& y, int h, int k, const Polynomial& c, const IdealExpr& C, int n) {
  const int i = y.i, j = y.j;
  auto Y = y.word();
  auto T = c.is_zero() ? GroupWord() : GroupWord::t(h, k, c);
  Congruence out{GroupWord::commutator(Y, T), GroupWord(), {}};
  bool h_in = h == i || h == j, k_in = k == i || k == j;
  if (Y.is_identity() || T.is_identity() || (!h_in && !k_in)) return out;

  if (!(h_in && k_in)) {
    // one shared index: [y, t] is a product of two transvections
    int g = h_in ? k : h;
    const auto& entry = table_entry(role_of(h, i, j), role_of(k, i, j), true);
    auto claims = triple_claims(y, C);
    for (auto& f : instantiate(entry, i, j, g, y.a, y.b, c)) out.atoms.push_back(plain(f, first_claim(f.arg, claims)));
    return out;
  }

  // t_hk(c) = [X, W0] with X = t_hg(c), W0 = t_gk(1). Then ^y X = u X and
  // ^y W0 = v W0 where u = [y, X] lies in E(n, ABC) and v = [y, W0] in E(n, BA),
  // so [y, t] = u X v W0 X^-1 u^-1 W0^-1 v^-1 t(-c). Moving u out leaves
  // [X, v W0] t(-c) = [X, v] [v, t].
  int g = third_index(i, j, n);
  auto one = Polynomial::constant(c.ring_ptr(), 1);
  auto X = GroupWord::t(h, g, c);
  auto W0 = GroupWord::t(g, k, one);
  auto u = instantiate(table_entry(role_of(h, i, j), Role::H, true), i, j, g, y.a, y.b, c);
  auto v = instantiate(table_entry(Role::H, role_of(k, i, j), true), i, j, g, y.a, y.b, one);
  auto claims = triple_claims(y, C);
  std::vector<ConjTransvection> us;
  for (const auto& f : u) us.push_back(plain(f, first_claim(f.arg, claims)));

  FactorChain chain;
  for (const auto& a : us) chain.atom(a);
  chain.word(X);
  std::vector<GroupWord> vs;
  for (const auto& f : v) vs.push_back(GroupWord::t(f.i, f.j, f.arg));
  auto vw = GroupWord::product(vs);
  chain.word(vw);
  chain.word(W0);
  chain.word(GroupWord::inverse(X));
  for (auto it = us.rbegin(); it != us.rend(); ++it) chain.atom(invert(*it));
  chain.word(GroupWord::inverse(W0));
  chain.word(GroupWord::inverse(vw));
  chain.word(GroupWord::t(h, k, -c));
  auto moved = chain.finish(out.lhs);

  // [X, v1 v2] = [X, v1] ^{v1}[X, v2] and [v1 v2, t] = ^{v1}[v2, t] [v1, t]
  auto v_claims = std::vector<IdealExpr>{IdealExpr::prod(y.B, y.A), IdealExpr::prod(y.A, y.B), y.level()};
  ConjTransvection x_atom{GroupWord(), h, g, c, C};
  ConjTransvection t_atom{GroupWord(), h, k, c, C};
  std::vector<ConjTransvection> v_atoms;
  for (const auto& f : v) v_atoms.push_back(plain(f, first_claim(f.arg, v_claims)));
  Congruence rest{moved.rhs, GroupWord(), {}};
  GroupWord prefix;
  for (const auto& va : v_atoms) {
    rest.atoms.push_back(CommAtom{conj_by(prefix, x_atom), conj_by(prefix, va)});
    prefix = prefix * va.word();
  }
  std::vector<WitnessAtom> second;
  prefix = GroupWord();
  for (const auto& va : v_atoms) {
    second.insert(second.begin(), CommAtom{conj_by(prefix, va), conj_by(prefix, t_atom)});
    prefix = prefix * va.word();
  }
  rest.atoms.insert(rest.atoms.end(), second.begin(), second.end());
  return moved.then(rest);
}

Congruence quadruple(const ElementaryCommutator& y1, const ElementaryCommutator& y2, int n) {
  if (n < 4)
    throw NotSupported(
        "the quadruple commutator construction needs n >= 4; whether the result holds for n = 3 is open");
  auto lhs = GroupWord::commutator(y1.word(), y2.word());
  if (y1.word().is_identity() || y2.word().is_identity()) return Congruence{lhs, GroupWord(), {}};
  // a position disjoint from (i, j)
  int p = y2.i, q = y2.j;
  auto disjoint = [&](int r, int s) { return r != y1.i && r != y1.j && s != y1.i && s != y1.j; };
  if (!disjoint(p, q)) {
    p = 0;
    for (int r = 1; r <= n && !p; ++r)
      for (int s = 1; s <= n && !p; ++s)
        if (r != s && disjoint(r, s)) p = r, q = s;
  }
  // y2 = W * beta_1 ... beta_m with W at (p, q)
  auto moved = transport(y2, Polynomial::constant(y2.a.ring_ptr(), 1), p, q, n);
  const auto& W = moved.rhs;
  auto level2 = y2.level();

  // [y1, ^x t(g)] = ^x[^{x^-1}y1, t(g)] with ^{x^-1}y1 = y1 * Gamma, and
  // [y1 Gamma, t] = ^{y1}[Gamma, t] [y1, t].
  auto comm_with = [&](const ConjTransvection& beta) {
    auto gamma = lemma9(GroupWord::inverse(beta.conj), y1, n).atoms;
    ConjTransvection t{GroupWord(), beta.i, beta.j, beta.arg, beta.claim};
    std::vector<WitnessAtom> atoms;
    // [g_1 ... g_r, t] = ^{g_1...g_(r-1)}[g_r, t] ... [g_1, t]
    GroupWord prefix;
    std::vector<WitnessAtom> gt;
    for (const auto& g : gamma) {
      const auto& gc = std::get<ConjTransvection>(g);
      gt.insert(gt.begin(), CommAtom{conj_by(prefix, gc), conj_by(prefix, t)});
      prefix = prefix * gc.word();
    }
    for (const auto& a : gt) atoms.push_back(conjugate(y1.word(), a));
    auto tail = triple(y1, beta.i, beta.j, beta.arg, level2, n).atoms;
    atoms.insert(atoms.end(), tail.begin(), tail.end());
    std::vector<WitnessAtom> out;
    for (const auto& a : atoms) out.push_back(conjugate(beta.conj, a));
    return out;
  };

  // [y1, W B] = [y1, W] ^W[y1, B] with [y1, W] = e, and
  // [y1, b_1 ... b_m] = [y1, b_1] ^{b_1}[y1, b_2] ...
  Congruence out{lhs, GroupWord(), {}};
  GroupWord prefix = W;
  for (const auto& beta : moved.atoms) {
    const auto& b = std::get<ConjTransvection>(beta);
    for (const auto& a : comm_with(b)) out.atoms.push_back(conjugate(prefix, a));
    prefix = prefix * b.word();
  }
  return out;
}

}  // namespace detail

Certificate certify_triple(const ElementaryCommutator& y, int h, int k, const Polynomial& c, const IdealExpr& C,
                           int n) {
  return detail::triple(y, h, k, c, C, n).certificate(n, y.a.ring_ptr(), Modulus::mixed(y.level(), C));
}

Certificate certify_quadruple(const ElementaryCommutator& y1, const ElementaryCommutator& y2, int n) {
  return detail::quadruple(y1, y2, n).certificate(n, y1.a.ring_ptr(), Modulus::mixed(y1.level(), y2.level()));
}

std::string quadruple_n3_report(int i, int j) {
  std::ostringstream os;
  os << "n=3: no position is disjoint from (" << i << "," << j << "), so y_hk(c,d) cannot be moved to commute with y_"
     << i << j << "(a,b):";
  for (int r = 1; r <= 3; ++r)
    for (int s = 1; s <= 3; ++s) {
      if (r == s) continue;
      os << " (" << r << "," << s << ") shares";
      if (r == i || r == j) os << " " << r;
      if (s == i || s == j) os << " " << s;
      os << ";";
    }
  os << " the n >= 4 argument does not apply";
  return os.str();
}

}  // namespace elcomm
