#include "elcomm/group.hpp"

#include "elcomm/detail/scanner.hpp"
#include "elcomm/error.hpp"

#include <algorithm>
#include <sstream>

namespace elcomm {

namespace {

void check_indices(int i, int j) {
  if (i < 1 || j < 1) throw IndexOutOfRange("generator indices are 1-based");
  if (i == j) throw IndexOutOfRange("generator needs distinct indices, got " + std::to_string(i) + "," + std::to_string(i));
}

}  // namespace

GenSymbol GenSymbol::t(int i, int j, Polynomial c) {
  check_indices(i, j);
  return GenSymbol{Kind::T, i, j, std::move(c), std::nullopt};
}

GenSymbol GenSymbol::z(int i, int j, Polynomial a, Polynomial c) {
  check_indices(i, j);
  return GenSymbol{Kind::Z, i, j, std::move(a), std::move(c)};
}

GenSymbol GenSymbol::y(int i, int j, Polynomial a, Polynomial b) {
  check_indices(i, j);
  return GenSymbol{Kind::Y, i, j, std::move(a), std::move(b)};
}

std::string GenSymbol::to_string() const {
  std::ostringstream os;
  os << (kind == Kind::T ? 't' : kind == Kind::Z ? 'z' : 'y') << '[' << i << ',' << j << "]("
     << first.to_string();
  if (second) os << ';' << second->to_string();
  os << ')';
  return os.str();
}

GroupWord::GroupWord() : node_(std::make_shared<const Node>(Node{Kind::Product, std::nullopt, {}})) {}

GroupWord GroupWord::gen(GenSymbol s) {
  return GroupWord(std::make_shared<const Node>(Node{Kind::Gen, std::move(s), {}}));
}

GroupWord GroupWord::product(const std::vector<GroupWord>& factors) {
  std::vector<GroupWord> flat;
  for (const auto& f : factors) {
    if (f.kind() == Kind::Product)
      flat.insert(flat.end(), f.children().begin(), f.children().end());
    else
      flat.push_back(f);
  }
  if (flat.size() == 1) return flat.front();
  return GroupWord(std::make_shared<const Node>(Node{Kind::Product, std::nullopt, std::move(flat)}));
}

GroupWord GroupWord::inverse(const GroupWord& w) {
  if (w.is_identity()) return w;
  if (w.kind() == Kind::Inverse) return w.children()[0];
  return GroupWord(std::make_shared<const Node>(Node{Kind::Inverse, std::nullopt, {w}}));
}

GroupWord GroupWord::conjugate(const GroupWord& x, const GroupWord& w) {
  if (x.is_identity() || w.is_identity()) return w;
  return GroupWord(std::make_shared<const Node>(Node{Kind::Conjugate, std::nullopt, {x, w}}));
}

GroupWord GroupWord::commutator(const GroupWord& x, const GroupWord& y) {
  if (x.is_identity() || y.is_identity()) return GroupWord();
  return GroupWord(std::make_shared<const Node>(Node{Kind::Commutator, std::nullopt, {x, y}}));
}

bool operator==(const GroupWord& a, const GroupWord& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  if (a.kind() == GroupWord::Kind::Gen) return a.symbol() == b.symbol();
  return a.children() == b.children();
}

namespace {

void print(std::ostream& os, const GroupWord& w);

// Operand of ~ or ^{x}: a product needs parentheses.
void print_operand(std::ostream& os, const GroupWord& w) {
  if (w.kind() == GroupWord::Kind::Product && !w.is_identity()) {
    os << '(';
    print(os, w);
    os << ')';
  } else {
    print(os, w);
  }
}

void print(std::ostream& os, const GroupWord& w) {
  using K = GroupWord::Kind;
  switch (w.kind()) {
    case K::Gen:
      os << w.symbol().to_string();
      break;
    case K::Product:
      if (w.is_identity()) os << 'e';
      for (const auto& f : w.children()) print(os, f);
      break;
    case K::Inverse:
      os << '~';
      print_operand(os, w.children()[0]);
      break;
    case K::Conjugate:
      os << "^{";
      print(os, w.children()[0]);
      os << '}';
      print_operand(os, w.children()[1]);
      break;
    case K::Commutator:
      os << '[';
      print(os, w.children()[0]);
      os << ',';
      print(os, w.children()[1]);
      os << ']';
      break;
  }
}

class WordParser {
 public:
  WordParser(const RingPtr& ring, std::string_view text) : ring_(ring), s_(text) {}

  GroupWord parse() {
    auto w = word();
    s_.expect_end();
    return w;
  }

 private:
  bool at_word_end() {
    char c = s_.peek();
    return c == '\0' || c == ')' || c == ']' || c == ',' || c == '}';
  }

  GroupWord word() {
    std::vector<GroupWord> factors;
    while (!at_word_end()) factors.push_back(factor());
    if (factors.empty()) s_.fail("expected a group word");
    return GroupWord::product(factors);
  }

  GroupWord factor() {
    if (s_.consume('~')) return GroupWord::inverse(factor());
    if (s_.consume('^')) {
      s_.expect('{');
      auto x = word();
      s_.expect('}');
      return GroupWord::conjugate(x, factor());
    }
    if (s_.consume('(')) {
      auto w = word();
      s_.expect(')');
      return w;
    }
    if (s_.consume('[')) {
      auto acc = word();
      int operands = 1;
      while (s_.consume(',')) {
        acc = GroupWord::commutator(acc, word());
        ++operands;
      }
      if (operands < 2) s_.fail("commutator needs at least two entries");
      s_.expect(']');
      return acc;
    }
    char c = s_.peek();
    if (c == 'e') {
      s_.consume('e');
      return GroupWord();
    }
    if (c == 't' || c == 'z' || c == 'y') return generator();
    s_.fail("expected a generator");
  }

  GroupWord generator() {
    char kind = s_.peek();
    s_.consume(kind);
    s_.expect('[');
    int i = static_cast<int>(s_.small_int());
    s_.expect(',');
    int j = static_cast<int>(s_.small_int());
    s_.expect(']');
    s_.expect('(');
    auto p = argument();
    std::optional<Polynomial> q;
    if (s_.consume(';')) q = argument();
    s_.expect(')');
    if (i < 1 || j < 1 || i == j) s_.fail("invalid generator indices");
    if (kind == 't') {
      if (q) s_.fail("t takes one argument");
      return GroupWord::t(i, j, std::move(p));
    }
    if (!q) s_.fail("z and y take two arguments");
    return kind == 'z' ? GroupWord::z(i, j, std::move(p), std::move(*q))
                       : GroupWord::y(i, j, std::move(p), std::move(*q));
  }

  // Ring element text up to the next top-level ';' or ')'.
  Polynomial argument() {
    s_.skip_ws();
    auto text = s_.text();
    std::size_t start = s_.pos(), k = start;
    int depth = 0;
    for (; k < text.size(); ++k) {
      char c = text[k];
      if (c == '(') ++depth;
      if (c == ')' && depth-- == 0) break;
      if (c == ';' && depth == 0) break;
    }
    if (k >= text.size()) s_.fail("unterminated generator argument");
    s_.set_pos(k);
    return parse_polynomial(ring_, text.substr(start, k - start));
  }

  const RingPtr& ring_;
  detail::Scanner s_;
};

void push(std::vector<Transvection>& out, int i, int j, Polynomial arg) {
  if (arg.is_zero()) return;
  if (!out.empty() && out.back().i == i && out.back().j == j) {
    out.back().arg += arg;
    if (out.back().arg.is_zero()) out.pop_back();
    return;
  }
  out.push_back(Transvection{i, j, std::move(arg)});
}

void append(std::vector<Transvection>& out, const std::vector<Transvection>& part) {
  for (const auto& t : part) push(out, t.i, t.j, t.arg);
}

void append_inverse(std::vector<Transvection>& out, const std::vector<Transvection>& part) {
  for (auto it = part.rbegin(); it != part.rend(); ++it) push(out, it->i, it->j, -it->arg);
}

void flatten_into(std::vector<Transvection>& out, const GroupWord& w) {
  using K = GroupWord::Kind;
  switch (w.kind()) {
    case K::Gen: {
      const auto& s = w.symbol();
      if (s.kind == GenSymbol::Kind::T) {
        push(out, s.i, s.j, s.first);
      } else if (s.kind == GenSymbol::Kind::Z) {
        push(out, s.i, s.j, *s.second);
        push(out, s.j, s.i, s.first);
        push(out, s.i, s.j, -*s.second);
      } else {
        push(out, s.i, s.j, s.first);
        push(out, s.j, s.i, *s.second);
        push(out, s.i, s.j, -s.first);
        push(out, s.j, s.i, -*s.second);
      }
      break;
    }
    case K::Product:
      for (const auto& f : w.children()) flatten_into(out, f);
      break;
    case K::Inverse:
      append_inverse(out, flatten(w.children()[0]));
      break;
    case K::Conjugate: {
      auto x = flatten(w.children()[0]);
      append(out, x);
      flatten_into(out, w.children()[1]);
      append_inverse(out, x);
      break;
    }
    case K::Commutator: {
      auto x = flatten(w.children()[0]);
      auto y = flatten(w.children()[1]);
      append(out, x);
      append(out, y);
      append_inverse(out, x);
      append_inverse(out, y);
      break;
    }
  }
}

}  // namespace

std::string GroupWord::to_string() const {
  std::ostringstream os;
  print(os, *this);
  return os.str();
}

GroupWord parse_word(const RingPtr& ring, std::string_view text) { return WordParser(ring, text).parse(); }

std::vector<Transvection> flatten(const GroupWord& w) {
  std::vector<Transvection> out;
  flatten_into(out, w);
  return out;
}

SquareMatrix eval(const GroupWord& w, const RingPtr& ring, int n) {
  auto word = flatten(w);
  auto m = SquareMatrix::identity(ring, n);
  for (const auto& t : word) {
    if (t.i > n || t.j > n)
      throw IndexOutOfRange("generator index " + std::to_string(std::max(t.i, t.j)) + " exceeds degree " +
                            std::to_string(n));
    if (!same_ring(t.arg.ring(), *ring)) throw RingMismatch();
    m.multiply_right_transvection(t.i - 1, t.j - 1, t.arg);
  }
  return m;
}

GroupWord substitute(const GroupWord& w, const Assignment& images, const RingPtr& target) {
  using K = GroupWord::Kind;
  auto sub = [&](const GroupWord& x) { return substitute(x, images, target); };
  switch (w.kind()) {
    case K::Gen: {
      auto s = w.symbol();
      s.first = evaluate_hom(s.first, images, target);
      if (s.second) s.second = evaluate_hom(*s.second, images, target);
      return GroupWord::gen(std::move(s));
    }
    case K::Product: {
      std::vector<GroupWord> fs;
      for (const auto& f : w.children()) fs.push_back(sub(f));
      return GroupWord::product(fs);
    }
    case K::Inverse:
      return GroupWord::inverse(sub(w.children()[0]));
    case K::Conjugate:
      return GroupWord::conjugate(sub(w.children()[0]), sub(w.children()[1]));
    case K::Commutator:
      return GroupWord::commutator(sub(w.children()[0]), sub(w.children()[1]));
  }
  return w;
}

int max_index(const GroupWord& w) {
  if (w.kind() == GroupWord::Kind::Gen) return std::max(w.symbol().i, w.symbol().j);
  int m = 0;
  for (const auto& c : w.children()) m = std::max(m, max_index(c));
  return m;
}

bool congruence_level(const SquareMatrix& g, const IdealExpr& ideal) {
  if (!g.ring().is_free()) throw UnsupportedBackend("congruence_level needs a free-algebra backend");
  for (int r = 0; r < g.n(); ++r)
    for (int c = 0; c < g.n(); ++c) {
      auto x = g(r, c);
      if (r == c) x -= Polynomial::constant(g.ring_ptr(), 1);
      if (!poly_member(x, ideal)) return false;
    }
  return true;
}

GroupWord steinberg_conjugate(const GenSymbol& t, const GenSymbol& s) {
  if (t.kind != GenSymbol::Kind::T || s.kind != GenSymbol::Kind::T)
    throw ShapeMismatch("steinberg_conjugate takes two transvections");
  const int i = s.i, j = s.j, k = t.i, l = t.j;
  const auto& c = s.first;
  const auto& a = t.first;
  if (k == j && l == i) return GroupWord::z(i, j, a, c);
  // [t_ij(c), t_jl(a)] = t_il(ca)
  if (k == j) return GroupWord::t(i, l, c * a) * GroupWord::gen(t);
  // [t_ij(c), t_ki(a)] = t_kj(-ac)
  if (l == i) return GroupWord::t(k, j, -(a * c)) * GroupWord::gen(t);
  return GroupWord::gen(t);
}

GroupWord expand_commutator_bimultiplicative(const GroupWord& w) {
  if (w.kind() != GroupWord::Kind::Commutator) throw ShapeMismatch("expected a commutator");
  const auto& x = w.children()[0];
  const auto& y = w.children()[1];
  std::vector<GroupWord> out;
  if (x.kind() == GroupWord::Kind::Product && x.children().size() >= 2) {
    // [x1...xk, y] = ^{x1...x(k-1)}[xk, y] ... ^{x1}[x2, y] [x1, y]
    const auto& xs = x.children();
    for (std::size_t m = xs.size(); m-- > 0;) {
      std::vector<GroupWord> prefix(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(m));
      out.push_back(GroupWord::conjugate(GroupWord::product(prefix), GroupWord::commutator(xs[m], y)));
    }
    return GroupWord::product(out);
  }
  if (y.kind() == GroupWord::Kind::Product && y.children().size() >= 2) {
    // [x, y1...yk] = [x, y1] ^{y1}[x, y2] ... ^{y1...y(k-1)}[x, yk]
    const auto& ys = y.children();
    for (std::size_t m = 0; m < ys.size(); ++m) {
      std::vector<GroupWord> prefix(ys.begin(), ys.begin() + static_cast<std::ptrdiff_t>(m));
      out.push_back(GroupWord::conjugate(GroupWord::product(prefix), GroupWord::commutator(x, ys[m])));
    }
    return GroupWord::product(out);
  }
  return w;
}

BracketTree BracketTree::leaf(char tag) {
  BracketTree b;
  b.tag_ = tag;
  return b;
}

BracketTree BracketTree::node(BracketTree left, BracketTree right) {
  BracketTree b;
  b.children_ = std::make_shared<const std::pair<BracketTree, BracketTree>>(std::move(left), std::move(right));
  return b;
}

std::size_t BracketTree::leaf_count() const {
  return is_leaf() ? 1 : left().leaf_count() + right().leaf_count();
}

std::size_t BracketTree::cut_point() const { return is_leaf() ? 0 : left().leaf_count(); }

std::vector<char> BracketTree::leaves() const {
  if (is_leaf()) return {tag_};
  auto out = left().leaves();
  auto r = right().leaves();
  out.insert(out.end(), r.begin(), r.end());
  return out;
}

IdealExpr BracketTree::ideal() const {
  if (is_leaf()) return tag_ == 'R' ? IdealExpr::full_ring() : IdealExpr::atom(tag_);
  return IdealExpr::symprod(left().ideal(), right().ideal());
}

std::string BracketTree::to_string() const {
  if (is_leaf()) return std::string(1, tag_);
  return "[" + left().to_string() + "," + right().to_string() + "]";
}

namespace {

BracketTree parse_tree(detail::Scanner& s) {
  if (s.consume('[')) {
    auto acc = parse_tree(s);
    int entries = 1;
    while (s.consume(',')) {
      acc = BracketTree::node(acc, parse_tree(s));
      ++entries;
    }
    if (entries < 2) s.fail("bracket needs at least two entries");
    s.expect(']');
    return acc;
  }
  char c = s.peek();
  if (c < 'A' || c > 'Z') s.fail("expected an ideal tag");
  s.consume(c);
  return BracketTree::leaf(c);
}

}  // namespace

BracketTree parse_bracket_tree(std::string_view text) {
  detail::Scanner s(text);
  auto t = parse_tree(s);
  s.expect_end();
  return t;
}

}  // namespace elcomm
