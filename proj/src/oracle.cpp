#include "elcomm/oracle.hpp"

#include "elcomm/error.hpp"
#include "elcomm/tables.hpp"

#include <numeric>
#include <sstream>

namespace elcomm {

namespace {

std::uint64_t reduce(const Integer& c, std::uint64_t m) {
  Integer r = c % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

void enumerate_monomials(std::size_t letters, std::size_t max_degree, std::vector<Monomial>& out) {
  std::vector<Monomial> layer{Monomial{}};
  out.push_back(Monomial{});
  for (std::size_t d = 1; d <= max_degree; ++d) {
    std::vector<Monomial> next;
    for (const auto& m : layer)
      for (std::uint16_t l = 0; l < letters; ++l) next.push_back(m * Monomial{l});
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
}

}  // namespace

FiniteRing::FiniteRing(RingPtr spec) : spec_(std::move(spec)) {
  if (spec_->kind() == RingKind::ModularInt) {
    basis_.push_back(Monomial{});
  } else if (spec_->kind() == RingKind::Truncated) {
    enumerate_monomials(spec_->letters().size(), spec_->max_degree(), basis_);
  } else {
    throw UnsupportedBackend("finite oracle needs Z/m or a truncated algebra, got " + spec_->to_string());
  }
  modulus_ = spec_->modulus();
  width_ = modulus_ <= 256 ? 1 : modulus_ <= 65536 ? 2 : 4;
  for (std::size_t k = 0; k < basis_.size(); ++k) index_.emplace(basis_[k], k);
  std::size_t d = basis_.size();
  product_.assign(d * d, -1);
  for (std::size_t u = 0; u < d; ++u)
    for (std::size_t v = 0; v < d; ++v) {
      auto it = index_.find(basis_[u] * basis_[v]);
      if (it != index_.end()) product_[u * d + v] = static_cast<std::int32_t>(it->second);
    }
}

Integer FiniteRing::element_count() const {
  Integer out = 1;
  for (std::size_t k = 0; k < dimension(); ++k) out *= modulus_;
  return out;
}

FiniteRing::Element FiniteRing::encode(const Polynomial& p) const {
  if (!same_ring(p.ring(), *spec_)) throw RingMismatch();
  Element out = zero();
  for (const auto& t : p.terms()) {
    auto it = index_.find(t.monomial);
    if (it == index_.end()) continue;
    out[it->second] = static_cast<std::uint32_t>(reduce(t.coeff, modulus_));
  }
  return out;
}

Polynomial FiniteRing::decode(const Element& e) const {
  Polynomial out(spec_);
  for (std::size_t k = 0; k < e.size(); ++k)
    if (e[k]) out += Polynomial::monomial(spec_, basis_[k], Integer(e[k]));
  return out;
}

FiniteRing::Element FiniteRing::one() const {
  auto e = zero();
  e[0] = 1 % modulus_;
  return e;
}

void FiniteRing::add_product(Element& acc, const Element& x, const Element& y) const {
  std::size_t d = dimension();
  for (std::size_t u = 0; u < d; ++u) {
    if (!x[u]) continue;
    for (std::size_t v = 0; v < d; ++v) {
      if (!y[v]) continue;
      auto w = product_[u * d + v];
      if (w < 0) continue;
      acc[w] = static_cast<std::uint32_t>((acc[w] + std::uint64_t{x[u]} * y[v]) % modulus_);
    }
  }
}

namespace {

// Row-major n x n blocks of `dimension` coefficients each.
using Flat = FiniteRing::Element;

Flat flat_identity(const FiniteRing& r, int n) {
  std::size_t d = r.dimension();
  Flat out(static_cast<std::size_t>(n) * n * d, 0);
  for (int k = 0; k < n; ++k) out[(static_cast<std::size_t>(k) * n + k) * d] = 1 % r.modulus();
  return out;
}

Flat to_flat(const FiniteRing& r, const SquareMatrix& m) {
  std::size_t d = r.dimension();
  Flat out;
  out.reserve(m.size() * d);
  for (int i = 0; i < m.n(); ++i)
    for (int j = 0; j < m.n(); ++j) {
      auto e = r.encode(m(i, j));
      out.insert(out.end(), e.begin(), e.end());
    }
  return out;
}

SquareMatrix from_flat(const FiniteRing& r, int n, const Flat& f) {
  std::size_t d = r.dimension();
  auto out = SquareMatrix::zero(r.spec(), n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto begin = f.begin() + static_cast<std::ptrdiff_t>((static_cast<std::size_t>(i) * n + j) * d);
      out.at(i, j) = r.decode(Flat(begin, begin + static_cast<std::ptrdiff_t>(d)));
    }
  return out;
}

Flat multiply(const FiniteRing& r, int n, const Flat& a, const Flat& b) {
  std::size_t d = r.dimension();
  Flat out(a.size(), 0);
  Flat x(d), y(d), acc(d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::fill(acc.begin(), acc.end(), 0);
      for (int k = 0; k < n; ++k) {
        auto ao = (static_cast<std::size_t>(i) * n + k) * d, bo = (static_cast<std::size_t>(k) * n + j) * d;
        std::copy_n(a.begin() + static_cast<std::ptrdiff_t>(ao), d, x.begin());
        std::copy_n(b.begin() + static_cast<std::ptrdiff_t>(bo), d, y.begin());
        r.add_product(acc, x, y);
      }
      std::copy(acc.begin(), acc.end(), out.begin() + static_cast<std::ptrdiff_t>((static_cast<std::size_t>(i) * n + j) * d));
    }
  return out;
}

// Fixed-width little-endian coefficients in row-major order.
std::string key(const FiniteRing& r, const Flat& f) {
  std::string out;
  out.reserve(f.size() * r.coefficient_width());
  for (auto c : f)
    for (std::size_t b = 0; b < r.coefficient_width(); ++b) out.push_back(static_cast<char>((c >> (8 * b)) & 0xff));
  return out;
}

// In a finite group g^-1 is the last power of g before e.
Flat inverse_by_powers(const FiniteRing& r, int n, const Flat& g) {
  auto e = flat_identity(r, n);
  Flat prev = e, cur = g;
  while (cur != e) {
    prev = cur;
    cur = multiply(r, n, cur, g);
  }
  return prev;
}

Flat commutator(const FiniteRing& r, int n, const Flat& x, const Flat& xi, const Flat& y, const Flat& yi) {
  return multiply(r, n, multiply(r, n, multiply(r, n, x, y), xi), yi);
}

std::uint64_t divisor_of(const IdealDescriptor& d, std::uint64_t m) {
  return std::gcd(std::get<std::uint64_t>(d.value), m);
}

}  // namespace

bool in_ideal(const FiniteRing& ring, const Polynomial& p, const IdealDescriptor& ideal) {
  if (const auto* e = std::get_if<IdealExpr>(&ideal.value)) return poly_member(p, *e);
  auto g = divisor_of(ideal, ring.modulus());
  for (auto c : ring.encode(p))
    if (c % g) return false;
  return true;
}

namespace {

// Basis positions free to vary in the ideal, and the step for their coefficients.
std::pair<std::vector<std::size_t>, std::uint64_t> ideal_support(const FiniteRing& ring, const IdealDescriptor& ideal) {
  std::vector<std::size_t> support;
  std::uint64_t step = 1;
  if (const auto* e = std::get_if<IdealExpr>(&ideal.value)) {
    for (std::size_t k = 0; k < ring.dimension(); ++k) {
      FiniteRing::Element unit = ring.zero();
      unit[k] = 1;
      if (poly_member(ring.decode(unit), *e)) support.push_back(k);
    }
  } else {
    step = divisor_of(ideal, ring.modulus());
    for (std::size_t k = 0; k < ring.dimension(); ++k) support.push_back(k);
  }
  return {support, step};
}

}  // namespace

Polynomial random_element(const FiniteRing& ring, const IdealDescriptor& ideal, std::mt19937_64& rng) {
  auto [support, step] = ideal_support(ring, ideal);
  std::uniform_int_distribution<std::uint64_t> pick(0, ring.modulus() / step - 1);
  auto e = ring.zero();
  for (auto k : support) e[k] = static_cast<std::uint32_t>(pick(rng) * step);
  return ring.decode(e);
}

std::vector<Polynomial> ideal_elements(const FiniteRing& ring, const IdealDescriptor& ideal) {
  auto [support, step] = ideal_support(ring, ideal);
  std::uint64_t per = ring.modulus() / step;
  double count = 1;
  for (std::size_t k = 0; k < support.size(); ++k) count *= static_cast<double>(per);
  constexpr std::size_t limit = std::size_t{1} << 20;
  if (count > static_cast<double>(limit)) throw CapExceeded("ideal enumeration", limit);
  std::vector<Polynomial> out;
  std::vector<std::uint64_t> digits(support.size(), 0);
  for (;;) {
    auto e = ring.zero();
    for (std::size_t k = 0; k < support.size(); ++k) e[support[k]] = static_cast<std::uint32_t>(digits[k] * step);
    out.push_back(ring.decode(e));
    std::size_t k = 0;
    while (k < digits.size() && ++digits[k] == per) digits[k++] = 0;
    if (k == digits.size()) break;
  }
  return out;
}

OracleGenerator word_generator(const GroupWord& w, const FiniteRing& ring, int n) {
  return OracleGenerator{eval(w, ring.spec(), n), eval(GroupWord::inverse(w), ring.spec(), n)};
}

bool SubgroupHandle::contains(const SquareMatrix& g) const {
  if (g.n() != n_) return false;
  return elements_.count(key(*ring_, to_flat(*ring_, g))) > 0;
}

std::vector<SquareMatrix> SubgroupHandle::elements() const {
  std::vector<SquareMatrix> out;
  out.reserve(matrices_.size());
  for (const auto& m : matrices_) out.push_back(from_flat(*ring_, n_, m));
  return out;
}

SubgroupHandle closure(const FiniteRing& ring, int n, std::vector<OracleGenerator> gens, std::size_t cap) {
  SubgroupHandle h;
  h.ring_ = std::make_shared<const FiniteRing>(ring);
  h.n_ = n;
  std::vector<Flat> steps;
  for (const auto& g : gens) {
    if (g.matrix.n() != n) throw ShapeMismatch("generator of size " + std::to_string(g.matrix.n()) + " in degree " + std::to_string(n));
    steps.push_back(to_flat(ring, g.matrix));
    if (g.inverse) steps.push_back(to_flat(ring, *g.inverse));
  }
  h.generators_ = std::move(gens);

  auto e = flat_identity(ring, n);
  h.elements_.insert(key(ring, e));
  h.matrices_.push_back(e);
  for (std::size_t next = 0; next < h.matrices_.size(); ++next) {
    for (const auto& s : steps) {
      auto y = multiply(ring, n, s, h.matrices_[next]);
      if (!h.elements_.insert(key(ring, y)).second) continue;
      if (h.elements_.size() > cap) throw CapExceeded("closure", cap);
      h.matrices_.push_back(std::move(y));
    }
  }
  return h;
}

std::vector<OracleGenerator> elementary_generators(const FiniteRing& ring, int n, const IdealDescriptor& ideal) {
  std::vector<OracleGenerator> out;
  for (const auto& x : ideal_elements(ring, ideal)) {
    if (x.is_zero()) continue;
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        if (i != j) out.push_back(word_generator(GroupWord::t(i, j, x), ring, n));
  }
  return out;
}

std::vector<OracleGenerator> relative_generators(const FiniteRing& ring, int n, const IdealDescriptor& ideal) {
  std::vector<OracleGenerator> out;
  auto whole = ideal_elements(ring, IdealDescriptor::whole());
  for (const auto& x : ideal_elements(ring, ideal)) {
    if (x.is_zero()) continue;
    for (const auto& c : whole)
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
          if (i != j) out.push_back(word_generator(GroupWord::z(i, j, x, c), ring, n));
  }
  return out;
}

std::vector<OracleGenerator> mixed_commutator_generators(const SubgroupHandle& h1, const SubgroupHandle& h2) {
  const auto& ring = *h1.ring_;
  int n = h1.n();
  auto with_inverses = [&](const SubgroupHandle& h) {
    std::vector<std::pair<Flat, Flat>> out;
    for (const auto& m : h.matrices_) out.emplace_back(m, inverse_by_powers(ring, n, m));
    return out;
  };
  auto xs = with_inverses(h1), ys = with_inverses(h2);
  auto e = flat_identity(ring, n);
  std::unordered_set<std::string> seen;
  std::vector<OracleGenerator> out;
  for (const auto& [x, xi] : xs)
    for (const auto& [y, yi] : ys) {
      auto c = commutator(ring, n, x, xi, y, yi);
      if (c == e || !seen.insert(key(ring, c)).second) continue;
      out.push_back(OracleGenerator{from_flat(ring, n, c), from_flat(ring, n, commutator(ring, n, y, yi, x, xi))});
    }
  return out;
}

CentralityResult centrality_check(const SubgroupHandle& H, const std::vector<OracleGenerator>& ambient,
                                  const SubgroupHandle& N) {
  const auto& ring = *H.ring_;
  int n = H.n();
  auto prepared = [&](const OracleGenerator& g) {
    auto m = to_flat(ring, g.matrix);
    return std::make_pair(m, g.inverse ? to_flat(ring, *g.inverse) : inverse_by_powers(ring, n, m));
  };
  std::vector<std::pair<Flat, Flat>> amb;
  for (const auto& g : ambient) amb.push_back(prepared(g));
  for (std::size_t a = 0; a < H.generators().size(); ++a) {
    auto [h, hi] = prepared(H.generators()[a]);
    for (std::size_t b = 0; b < amb.size(); ++b) {
      auto c = commutator(ring, n, h, hi, amb[b].first, amb[b].second);
      if (N.elements_.count(key(ring, c))) continue;
      std::ostringstream os;
      os << "generator " << a << " of H and ambient generator " << b << " give [h,g] = "
         << from_flat(ring, n, c).to_string();
      return CentralityResult{false, os.str()};
    }
  }
  return CentralityResult{};
}

namespace {

const IdealDescriptor& ideal_for(const TagIdeals& ideals, Tag tag) {
  static const IdealDescriptor whole = IdealDescriptor::whole();
  if (tag.is_plain()) return whole;
  auto it = ideals.find(tag.symbol());
  return it == ideals.end() ? whole : it->second;
}

Assignment random_assignment(const RingSpec& source, const FiniteRing& ring, const TagIdeals& ideals,
                             std::mt19937_64& rng, const Assignment& fixed) {
  Assignment out;
  for (const auto& l : source.letters()) {
    auto it = fixed.find(l.name);
    out.emplace(l.name, it != fixed.end() ? it->second : random_element(ring, ideal_for(ideals, l.tag), rng));
  }
  return out;
}

std::string describe(const Assignment& a) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [name, value] : a) {
    os << (first ? "" : ", ") << name << "=" << value.to_string();
    first = false;
  }
  return os.str();
}

// Image of a symbolic ideal in Z/m when every tag maps to a principal ideal.
std::optional<std::uint64_t> image_divisor(const IdealExpr& e, const TagIdeals& ideals, std::uint64_t m) {
  using K = IdealExpr::Kind;
  switch (e.kind()) {
    case K::Atom: {
      const auto& d = ideal_for(ideals, Tag::ideal(e.tag()));
      if (!std::holds_alternative<std::uint64_t>(d.value)) return std::nullopt;
      return std::gcd(std::get<std::uint64_t>(d.value), m);
    }
    case K::FullRing:
      return 1;
    default: {
      auto l = image_divisor(e.left(), ideals, m), r = image_divisor(e.right(), ideals, m);
      if (!l || !r) return std::nullopt;
      if (e.kind() == K::Sum) return std::gcd(*l, *r);
      return std::gcd(*l * *r, m);
    }
  }
}

}  // namespace

ShadowResult shadow_certificate(const Certificate& cert, const FiniteRing& ring, const TagIdeals& ideals,
                                std::size_t trials, std::uint64_t seed, const Assignment& fixed) {
  std::mt19937_64 rng(seed);
  const auto& target = ring.spec();
  bool modular = target->kind() == RingKind::ModularInt;
  ShadowResult out;
  for (std::size_t t = 0; t < trials; ++t) {
    auto img = random_assignment(*cert.ring, ring, ideals, rng, fixed);
    auto fail = [&](const std::string& why) {
      out.ok = false;
      out.failure = "trial " + std::to_string(t) + " (" + describe(img) + "): " + why;
    };
    auto value = [&](const GroupWord& w) { return eval(substitute(w, img, target), target, cert.n); };
    auto product = value(cert.rhs);
    for (std::size_t k = 0; k < cert.atoms.size(); ++k) {
      const auto& atom = cert.atoms[k];
      product = product * value(atom_word(atom));
      if (!modular) continue;
      auto claim_holds = [&](const ConjTransvection& c) {
        auto d = image_divisor(c.claim, ideals, ring.modulus());
        return !d || in_ideal(ring, evaluate_hom(c.arg, img, target), IdealDescriptor::divisor(*d));
      };
      bool holds = std::visit(
          [&](const auto& a) {
            if constexpr (std::is_same_v<std::decay_t<decltype(a)>, ConjTransvection>)
              return claim_holds(a);
            else
              return claim_holds(a.left) && claim_holds(a.right);
          },
          atom);
      if (!holds) {
        fail("atom " + std::to_string(k) + " leaves its claimed ideal");
        return out;
      }
    }
    ++out.trials;
    if (!(value(cert.lhs) == product)) {
      fail("lhs and rhs * atoms differ");
      return out;
    }
  }
  return out;
}

namespace {

struct ShadowCase {
  int n;
  GroupWord lhs;
  std::optional<GroupWord> rhs;
  // row-major entries when the right side is an explicit matrix
  std::vector<const char*> entries;
};

std::vector<ShadowCase> identity_cases(const std::string& name) {
  const auto& r = table_ring();
  auto p = [&](const char* text) { return parse_polynomial(r, text); };
  auto y = GroupWord::y(1, 2, p("a"), p("b"));
  if (name == "y-explicit") return {{2, y, std::nullopt, {"1+abab+ab", "-aba", "bab", "1-ba"}}};
  if (name == "y-inverse") return {{2, GroupWord::inverse(y), std::nullopt, {"1-ab", "aba", "-bab", "1+ba+baba"}}};
  std::vector<ShadowCase> out;
  if (name == "table-t-y" || name == "table-y-t") {
    bool y_first = name == "table-y-t";
    const std::pair<Role, Role> shapes[] = {{Role::I, Role::H}, {Role::J, Role::H}, {Role::H, Role::I}, {Role::H, Role::J}};
    auto index = [](Role role) { return role == Role::I ? 1 : role == Role::J ? 2 : 3; };
    for (auto [row, col] : shapes) {
      const auto& entry = table_entry(row, col, y_first);
      auto T = GroupWord::t(index(row), index(col), p("c"));
      std::vector<GroupWord> factors;
      for (const auto& f : instantiate(entry, 1, 2, 3, p("a"), p("b"), p("c")))
        factors.push_back(GroupWord::t(f.i, f.j, f.arg));
      out.push_back({3, y_first ? GroupWord::commutator(y, T) : GroupWord::commutator(T, y),
                     GroupWord::product(factors), {}});
    }
    return out;
  }
  if (name == "steinberg") {
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j)
        for (int k = 1; k <= 3; ++k)
          for (int l = 1; l <= 3; ++l) {
            if (i == j || k == l) continue;
            auto s = GenSymbol::t(i, j, p("c")), t = GenSymbol::t(k, l, p("a"));
            out.push_back({3, GroupWord::conjugate(GroupWord::gen(s), GroupWord::gen(t)), steinberg_conjugate(t, s), {}});
          }
    return out;
  }
  throw ParseError("unknown identity '" + name + "'");
}

}  // namespace

std::vector<std::string> shadow_identity_names() { return {"y-explicit", "y-inverse", "table-t-y", "table-y-t", "steinberg"}; }

ShadowResult numeric_shadow(const std::string& identity, std::size_t trials, const FiniteRing& ring,
                            const TagIdeals& ideals, std::uint64_t seed) {
  auto cases = identity_cases(identity);
  std::mt19937_64 rng(seed);
  const auto& target = ring.spec();
  ShadowResult out;
  for (std::size_t t = 0; t < trials; ++t) {
    auto img = random_assignment(*table_ring(), ring, ideals, rng, {});
    for (std::size_t k = 0; k < cases.size(); ++k) {
      const auto& c = cases[k];
      auto lhs = eval(substitute(c.lhs, img, target), target, c.n);
      SquareMatrix rhs = SquareMatrix::identity(target, c.n);
      if (c.rhs) {
        rhs = eval(substitute(*c.rhs, img, target), target, c.n);
      } else {
        for (int e = 0; e < c.n * c.n; ++e)
          rhs.at(e / c.n, e % c.n) = evaluate_hom(parse_polynomial(table_ring(), c.entries[e]), img, target);
      }
      if (!(lhs == rhs)) {
        out.ok = false;
        out.failure = identity + " case " + std::to_string(k) + ", trial " + std::to_string(t) + " (" + describe(img) + ")";
        return out;
      }
    }
    ++out.trials;
  }
  return out;
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> bezout_pair(std::uint64_t m, std::uint64_t da,
                                                                   std::uint64_t db) {
  std::uint64_t ga = std::gcd(da, m), gb = std::gcd(db, m);
  for (std::uint64_t a = 0; a < m; a += ga) {
    std::uint64_t b = (1 + m - a % m) % m;
    if (b % gb == 0) return std::make_pair(a, b);
  }
  return std::nullopt;
}

}  // namespace elcomm
