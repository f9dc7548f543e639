#include "congruences.hpp"
#include "elcomm/error.hpp"
#include "elcomm/tables.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <tuple>

namespace elcomm {

using detail::first_claim;
using detail::with_args;

GroupWord ElementaryCommutator::word() const {
  if (a.is_zero() || b.is_zero()) return GroupWord();
  return GroupWord::y(i, j, a, b);
}

int third_index(int i, int j, int n) {
  for (int h = 1; h <= n; ++h)
    if (h != i && h != j) return h;
  throw NotSupported("this construction needs a third index, so n >= 3");
}

namespace detail {

ElementaryCommutator with_args(const ElementaryCommutator& y, int i, int j, Polynomial a, Polynomial b) {
  return ElementaryCommutator{i, j, std::move(a), std::move(b), y.A, y.B};
}

IdealExpr first_claim(const Polynomial& p, const std::vector<IdealExpr>& candidates) {
  for (const auto& c : candidates)
    if (poly_member(p, c)) return c;
  return candidates.back();
}

namespace {

Role role_of(int index, int i, int j) { return index == i ? Role::I : index == j ? Role::J : Role::H; }

Polynomial one(const Polynomial& like) { return Polynomial::constant(like.ring_ptr(), 1); }

// ^tau y = y * atoms for a transvection sharing exactly one index with y.
std::vector<WitnessAtom> lemma9_step(const Transvection& tau, const ElementaryCommutator& y, const GroupWord& yinv) {
  bool k_in = tau.i == y.i || tau.i == y.j;
  bool l_in = tau.j == y.i || tau.j == y.j;
  if (!k_in && !l_in) return {};
  int h = k_in ? tau.j : tau.i;
  const auto& entry = table_entry(role_of(tau.i, y.i, y.j), role_of(tau.j, y.i, y.j), false);
  // ^tau y = [tau, y] y = y ^{y^-1}[tau, y]
  std::vector<WitnessAtom> out;
  auto claim = y.level();
  for (auto& f : instantiate(entry, y.i, y.j, h, y.a, y.b, tau.arg))
    out.push_back(ConjTransvection{yinv, f.i, f.j, std::move(f.arg), claim});
  return out;
}

}  // namespace

Congruence lemma9(const GroupWord& x, const ElementaryCommutator& y, int n) {
  auto Y = y.word();
  Congruence out{GroupWord::conjugate(x, Y), Y, {}};
  if (Y.is_identity()) return out;
  // t_ij(c) = [t_ih(c), t_hj(1)] and t_ji(c) = [t_jh(c), t_hi(1)]
  std::vector<Transvection> word;
  for (auto& t : flatten(x)) {
    bool hook = (t.i == y.i && t.j == y.j) || (t.i == y.j && t.j == y.i);
    if (!hook) {
      word.push_back(std::move(t));
      continue;
    }
    int h = third_index(y.i, y.j, n);
    auto u = one(t.arg);
    word.push_back({t.i, h, t.arg});
    word.push_back({h, t.j, u});
    word.push_back({t.i, h, -t.arg});
    word.push_back({h, t.j, -u});
  }
  auto yinv = GroupWord::inverse(Y);
  std::vector<WitnessAtom> atoms;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    auto tau = GroupWord::t(it->i, it->j, it->arg);
    auto next = lemma9_step(*it, y, yinv);
    for (const auto& a : atoms) next.push_back(conjugate(tau, a));
    atoms = std::move(next);
  }
  out.atoms = std::move(atoms);
  return out;
}

Congruence additivity(const ElementaryCommutator& y, const Polynomial& extra, AdditiveSide side, int n) {
  const int i = y.i, j = y.j;
  FactorChain chain;
  switch (side) {
    case AdditiveSide::First: {
      // [t(a1) t(a2), t_ji(b)] = ^{t(a1)}y(a2, b) y(a1, b)
      auto y1 = y, y2 = with_args(y, i, j, extra, y.b);
      chain.congruence(lemma9(GroupWord::t(i, j, y.a), y2, n));
      chain.word(y1.word());
      return chain.finish(with_args(y, i, j, y.a + extra, y.b).word());
    }
    case AdditiveSide::Second: {
      // [t(a), t_ji(b1) t_ji(b2)] = y(a, b1) ^{t_ji(b1)}y(a, b2)
      auto y2 = with_args(y, i, j, y.a, extra);
      chain.word(y.word());
      chain.congruence(lemma9(GroupWord::t(j, i, y.b), y2, n));
      return chain.finish(with_args(y, i, j, y.a, y.b + extra).word());
    }
    case AdditiveSide::Inverse: {
      auto c = lemma9(GroupWord::t(i, j, y.a), with_args(y, i, j, -y.a, y.b), n);
      return Congruence{GroupWord::inverse(y.word()), c.rhs, c.atoms};
    }
    case AdditiveSide::InverseSecond: {
      auto c = lemma9(GroupWord::t(j, i, y.b), with_args(y, i, j, y.a, -y.b), n);
      return Congruence{GroupWord::inverse(y.word()), c.rhs, c.atoms};
    }
  }
  throw Error("unknown additivity side");
}

namespace {

// y_ij(v, b) = t_ij(v) ^{t_ji(b)}t_ij(-v) for v already in the level ideal.
Congruence split(const ElementaryCommutator& y) {
  Congruence out{y.word(), GroupWord(), {}};
  if (out.lhs.is_identity()) return out;
  auto claim = first_claim(y.a, {IdealExpr::prod(y.A, y.B), IdealExpr::prod(y.B, y.A), y.level()});
  out.atoms = {ConjTransvection{GroupWord(), y.i, y.j, y.a, claim},
               ConjTransvection{GroupWord::t(y.j, y.i, y.b), y.i, y.j, -y.a, claim}};
  return out;
}

// y_ij(a c, b) = y_ih(a, c b) * atoms
Congruence second_index_move(const ElementaryCommutator& y, const Polynomial& c, int h, int n) {
  const int i = y.i, j = y.j;
  const auto& a = y.a;
  const auto& b = y.b;
  auto lhs = with_args(y, i, j, a * c, b).word();
  auto target = with_args(y, i, h, a, c * b);
  if (lhs.is_identity() || target.word().is_identity()) return Congruence{lhs, target.word(), {}};
  // y_ij(ac, b) = t_ij(ac) [u X, W] with u = t_jh(ba), X = t_ih(a),
  // W = t_hj(-c) t_hi(cb); then [uX, W] = u [X, W] ^W u^-1 and
  // [X, W] = t_ij(-ac) ^{t_hj(-c)}y_ih(a, cb).
  auto ba = b * a;
  auto ba_claim = first_claim(ba, {IdealExpr::prod(y.B, y.A), y.level()});
  auto w2 = GroupWord::t(h, j, -c);
  auto w = w2 * GroupWord::t(h, i, c * b);
  FactorChain chain;
  chain.word(GroupWord::t(i, j, a * c));
  chain.atom(ConjTransvection{GroupWord(), j, h, ba, ba_claim});
  chain.word(GroupWord::t(i, j, -(a * c)));
  chain.congruence(lemma9(w2, target, n));
  chain.atom(ConjTransvection{w, j, h, -ba, ba_claim});
  auto out = chain.finish(lhs);
  out.rhs = target.word();
  return out;
}

// y_ij(a, b) = y_hj(a, b) * atoms, from y_ij(a, b) = y_ji(b, a)^-1
Congruence first_index_move(const ElementaryCommutator& y, int h, int n) {
  ElementaryCommutator swapped{y.j, y.i, y.b, y.a, y.B, y.A};
  auto moved = second_index_move(swapped, one(y.a), h, n);  // y_ji(b, a) = y_jh(b, a) * atoms
  FactorChain chain;
  for (auto it = moved.atoms.rbegin(); it != moved.atoms.rend(); ++it) chain.atom(invert(*it));
  auto target = with_args(y, h, y.j, y.a, y.b).word();  // = y_jh(b, a)^-1
  chain.word(target);
  auto out = chain.finish(y.word());
  out.rhs = target;
  return out;
}

}  // namespace

Congruence transport(const ElementaryCommutator& y, const Polynomial& c, int k, int l, int n) {
  const bool carry = !c.is_one();
  auto moves = plan_transport(y.i, y.j, k, l, carry, n);
  auto state = with_args(y, y.i, y.j, y.a * c, y.b);
  auto total = Congruence::reflexive(state.word());
  bool carried = false;
  for (const auto& m : moves) {
    Congruence step;
    if (m.kind == TransportMove::Kind::Second && m.carries) {
      step = second_index_move(with_args(y, state.i, state.j, y.a, y.b), c, m.to_j, n);
      state = with_args(y, m.to_i, m.to_j, y.a, c * y.b);
      carried = true;
    } else if (m.kind == TransportMove::Kind::Second) {
      step = second_index_move(state, one(y.a), m.to_j, n);
      state = with_args(state, m.to_i, m.to_j, state.a, state.b);
    } else {
      step = first_index_move(state, m.to_i, n);
      state = with_args(state, m.to_i, m.to_j, state.a, state.b);
    }
    total = total.then(step);
  }
  if (carry && !carried) throw Error("transport plan did not carry the middle factor");
  return total;
}

Congruence collapse(const ElementaryCommutator& y, const Polynomial& f, CollapseSide side, int n) {
  const int i = y.i, j = y.j;
  if (side == CollapseSide::First) {
    // y_ij(a f, b) = y_ih(a, f b) * atoms, then y_ih(a, w) = ^{t_ih(a)}t_hi(w) t_hi(-w)
    int h = third_index(i, j, n);
    auto moved = second_index_move(y, f, h, n);
    auto w = f * y.b;
    auto claim = first_claim(w, {IdealExpr::prod(y.A, y.B), y.level()});
    Congruence last{moved.rhs, GroupWord(), {}};
    if (!moved.rhs.is_identity())
      last.atoms = {ConjTransvection{GroupWord::t(i, h, y.a), h, i, w, claim},
                    ConjTransvection{GroupWord(), h, i, -w, claim}};
    return moved.then(last);
  }
  // y_ih(a f, b) = y_ij(a, f b) * atoms, reversed; then y_ih(a f, b) splits directly
  int h = third_index(i, j, n);
  auto source = with_args(y, i, h, y.a, y.b);
  auto moved = second_index_move(source, f, j, n).reversed();
  auto out = moved.then(split(with_args(y, i, h, y.a * f, y.b)));
  out.lhs = with_args(y, i, j, y.a, f * y.b).word();
  return out;
}

Congruence comaximal(const ElementaryCommutator& y, const Polynomial& a_prime, const Polynomial& b_prime, int n) {
  // y(a a' + a b', b) = ^{t(a a')}y(a b', b) y(a a', b); a b' is already in AB
  // and y(a a', b) collapses
  const int i = y.i, j = y.j;
  auto a1 = y.a * a_prime, a2 = y.a * b_prime;
  FactorChain chain;
  chain.congruence(split(with_args(y, i, j, a2, y.b)));
  chain.atoms(lemma9(GroupWord::t(i, j, a1), with_args(y, i, j, a2, y.b), n).atoms);
  chain.congruence(collapse(y, a_prime, CollapseSide::First, n));
  return chain.finish(with_args(y, i, j, a1 + a2, y.b).word());
}

}  // namespace detail

std::vector<TransportMove> plan_transport(int i, int j, int k, int l, bool carry, int n) {
  if (i == j || k == l || std::max({i, j, k, l}) > n || std::min({i, j, k, l}) < 1)
    throw IndexOutOfRange("invalid transport positions");
  if (n < 3) throw NotSupported("moving a y-symbol needs n >= 3");
  using State = std::tuple<int, int, bool>;
  std::map<State, std::pair<State, TransportMove>> parent;
  State start{i, j, false}, goal{k, l, carry};
  std::queue<State> todo;
  todo.push(start);
  parent.emplace(start, std::make_pair(start, TransportMove{}));
  while (!todo.empty()) {
    auto s = todo.front();
    todo.pop();
    if (s == goal) break;
    auto [p, q, carried] = s;
    auto visit = [&](State next, TransportMove m) {
      if (parent.count(next)) return;
      parent.emplace(next, std::make_pair(s, m));
      todo.push(next);
    };
    for (int h = 1; h <= n; ++h) {
      if (h == p || h == q) continue;
      visit({p, h, carried}, {TransportMove::Kind::Second, p, q, p, h, false});
      if (carry && !carried) visit({p, h, true}, {TransportMove::Kind::Second, p, q, p, h, true});
      visit({h, q, carried}, {TransportMove::Kind::First, p, q, h, q, false});
    }
  }
  std::vector<TransportMove> moves;
  for (auto s = goal; s != start;) {
    auto it = parent.find(s);
    if (it == parent.end()) throw Error("position is unreachable");
    moves.push_back(it->second.second);
    s = it->second.first;
  }
  std::reverse(moves.begin(), moves.end());
  return moves;
}

namespace {

RingPtr ring_of(const ElementaryCommutator& y) { return y.a.ring_ptr(); }

}  // namespace

Certificate certify_lemma9(const GroupWord& x, const ElementaryCommutator& y, int n) {
  return detail::lemma9(x, y, n).certificate(n, ring_of(y), Modulus::elem(y.level()));
}

Certificate certify_additivity(const ElementaryCommutator& y, const Polynomial& extra, AdditiveSide side, int n) {
  return detail::additivity(y, extra, side, n).certificate(n, ring_of(y), Modulus::elem(y.level()));
}

Certificate certify_transport(const ElementaryCommutator& y, const Polynomial& c, int k, int l, int n) {
  return detail::transport(y, c, k, l, n).certificate(n, ring_of(y), Modulus::elem(y.level()));
}

Certificate certify_collapse(const ElementaryCommutator& y, const Polynomial& f, CollapseSide side, int n) {
  return detail::collapse(y, f, side, n).certificate(n, ring_of(y), Modulus::elem(y.level()));
}

Certificate certify_comaximal(const ElementaryCommutator& y, const Polynomial& a_prime, const Polynomial& b_prime,
                              int n) {
  return detail::comaximal(y, a_prime, b_prime, n).certificate(n, ring_of(y), Modulus::elem(y.level()));
}

Certificate certify_z_in_mixed(int i, int j, const Polynomial& a, const Polynomial& b, const Polynomial& c,
                               const IdealExpr& A, const IdealExpr& B, bool reversed, int n) {
  int h = third_index(i, j, n);
  auto first = reversed ? b * a : a * b;
  Congruence out{GroupWord::z(i, j, first, c), GroupWord(), {}};
  if (!first.is_zero()) {
    // z_ij(p q, c) = ^{t_ij(c)}t_ji(p q) = ^{t_ij(c)}[t_jh(p), t_hi(q)]
    auto conj = c.is_zero() ? GroupWord() : GroupWord::t(i, j, c);
    ConjTransvection left{conj, j, h, reversed ? b : a, reversed ? B : A};
    ConjTransvection right{conj, h, i, reversed ? a : b, reversed ? A : B};
    out.atoms.push_back(CommAtom{left, right});
  }
  return out.certificate(n, a.ring_ptr(), Modulus::mixed(A, B));
}

}  // namespace elcomm
