#include "elcomm/theorem.hpp"

#include "congruences.hpp"
#include "elcomm/detail/parallel.hpp"
#include "elcomm/error.hpp"

#include <functional>
#include <sstream>

namespace elcomm {

namespace {

// Leaf k gets its own letter, tagged with the leaf's ideal.
RingPtr leaf_ring(const BracketTree& tree, std::vector<std::string>& names) {
  static const char* pool = "abcdfghkmpqsuvw";
  std::ostringstream spec;
  spec << "free(Z;";
  auto tags = tree.leaves();
  for (std::size_t k = 0; k < tags.size(); ++k) {
    names.emplace_back(1, pool[k]);
    spec << (k ? ", " : " ") << names.back() << ':' << tags[k];
  }
  spec << ')';
  return parse_ring(spec.str());
}

struct Builder {
  int n;
  Theorem1Options options;
  RingPtr ring;
  std::vector<std::string> names;
  std::size_t next_leaf = 0;
  std::vector<Theorem1Step> steps;

  // Product of the subtree's leaf letters, an element of its ideal.
  Polynomial representative(const BracketTree& t, std::size_t first_leaf) const {
    auto p = Polynomial::constant(ring, 1);
    for (std::size_t k = 0; k < t.leaf_count(); ++k) p = p * Polynomial::letter(ring, names[first_leaf + k]);
    return p;
  }

  ElementaryCommutator commutator_of(const BracketTree& t, std::size_t first_leaf, int i, int j) const {
    return ElementaryCommutator{i,
                                j,
                                representative(t.left(), first_leaf),
                                representative(t.right(), first_leaf + t.left().leaf_count()),
                                t.left().ideal(),
                                t.right().ideal()};
  }

  void enforce_conjugator_cap(const Certificate& c) const {
    auto length = [](const GroupWord& w) { return flatten(w).size(); };
    for (const auto& a : c.atoms) {
      std::size_t len = 0;
      if (const auto* t = std::get_if<ConjTransvection>(&a))
        len = length(t->conj);
      else
        len = std::max(length(std::get<CommAtom>(a).left.conj), length(std::get<CommAtom>(a).right.conj));
      if (len > options.conjugator_cap) throw CapExceeded("conjugator length " + std::to_string(len), options.conjugator_cap);
    }
  }

  void visit(const BracketTree& t, std::size_t first_leaf) {
    if (t.is_leaf()) return;
    const auto& L = t.left();
    const auto& R = t.right();
    std::size_t right_leaf = first_leaf + L.leaf_count();
    if (!L.is_leaf() || !R.is_leaf()) step(t, first_leaf);
    visit(L, first_leaf);
    visit(R, right_leaf);
  }

  void step(const BracketTree& t, std::size_t first_leaf) {
    const auto& L = t.left();
    const auto& R = t.right();
    std::size_t right_leaf = first_leaf + L.leaf_count();
    auto modulus = Modulus::mixed(L.ideal(), R.ideal());
    Theorem1Step s;
    s.subtree = t.to_string();
    s.target = "[E(" + std::to_string(n) + "," + L.ideal().to_string() + "),E(" + std::to_string(n) + "," +
               R.ideal().to_string() + ")]";

    std::vector<std::pair<int, int>> positions;
    for (int h = 1; h <= n; ++h)
      for (int k = 1; k <= n; ++k)
        if (h != k) positions.emplace_back(h, k);

    std::function<Congruence(int, int)> build;
    if (!L.is_leaf() && !R.is_leaf()) {
      s.construction = "quadruple";
      if (n < 4)
        throw NotSupported("step " + s.subtree + " needs the quadruple construction, which requires n >= 4");
      auto y1 = commutator_of(L, first_leaf, 1, 2);
      build = [this, y1, &R, right_leaf](int h, int k) {
        return detail::quadruple(y1, commutator_of(R, right_leaf, h, k), n);
      };
    } else if (!L.is_leaf()) {
      s.construction = "triple";
      auto y = commutator_of(L, first_leaf, 1, 2);
      auto c = representative(R, right_leaf);
      auto C = R.ideal();
      build = [this, y, c, C](int h, int k) { return detail::triple(y, h, k, c, C, n); };
    } else {
      // [t, y] = [y, t]^-1
      s.construction = "triple-mirrored";
      auto y = commutator_of(R, right_leaf, 1, 2);
      auto c = representative(L, first_leaf);
      auto C = L.ideal();
      build = [this, y, c, C](int h, int k) {
        auto forward = detail::triple(y, h, k, c, C, n);
        Congruence out{GroupWord::commutator(GroupWord::t(h, k, c), y.word()), GroupWord(), {}};
        for (auto it = forward.atoms.rbegin(); it != forward.atoms.rend(); ++it) out.atoms.push_back(invert(*it));
        return out;
      };
    }

    s.instances = detail::parallel_map(positions.size(), options.jobs, [&](std::size_t idx) {
      auto [h, k] = positions[idx];
      auto cert = build(h, k).certificate(n, ring, modulus);
      enforce_conjugator_cap(cert);
      auto result = check(cert);
      std::ostringstream name;
      name << s.construction << "(" << h << "," << k << ")";
      return Theorem1Instance{name.str(), std::move(cert), std::move(result)};
    });
    steps.push_back(std::move(s));
  }
};

}  // namespace

bool Theorem1Step::ok() const {
  for (const auto& i : instances)
    if (!i.result.ok) return false;
  return true;
}

bool Theorem1Report::ok() const {
  for (const auto& s : steps)
    if (!s.ok()) return false;
  return true;
}

std::string Theorem1Report::summary() const {
  std::ostringstream os;
  for (const auto& s : steps) {
    std::size_t passed = 0;
    std::string first_failure;
    for (const auto& i : s.instances) {
      if (i.result.ok)
        ++passed;
      else if (first_failure.empty())
        first_failure = "; " + i.name + ": " + i.result.message;
    }
    os << (s.ok() ? "PASS" : "FAIL") << " theorem1 " << s.subtree << ": " << s.construction << " into " << s.target
       << ", " << passed << "/" << s.instances.size() << " certificates check" << first_failure << '\n';
  }
  return os.str();
}

Theorem1Report theorem1_reduce(const BracketTree& tree, int n, const Theorem1Options& options) {
  if (tree.leaf_count() > options.leaf_cap) throw CapExceeded("bracket tree with " + std::to_string(tree.leaf_count()) + " leaves", options.leaf_cap);
  if (n < 3) throw NotSupported("the reduction needs n >= 3");
  Builder b{n, options, nullptr, {}, 0, {}};
  b.ring = leaf_ring(tree, b.names);
  b.visit(tree, 0);
  return Theorem1Report{tree.to_string(), n, std::move(b.steps)};
}

}  // namespace elcomm
