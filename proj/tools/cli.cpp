#include "cli.hpp"

#include "CLI11.hpp"
#include "elcomm/certify.hpp"
#include "elcomm/detail/parallel.hpp"
#include "elcomm/error.hpp"
#include "elcomm/oracle.hpp"
#include "elcomm/tables.hpp"
#include "elcomm/theorem.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace elcomm::cli {

namespace {

constexpr const char* default_ring = "free(Z; a:A, b:B, c:C, d:D, f:R, g:R)";

struct Options {
  // shared
  std::string ring;
  int n = 0;
  unsigned jobs = 1;
  std::size_t cap = default_closure_cap;
  std::uint64_t seed = 1;
  bool experimental_n3 = false;

  // member
  std::string ideal, poly;
  // verify
  std::string suite;
  // certify
  std::string lemma, out, x, side, extra, f, a_prime, b_prime, c, d;
  std::string a = "a", b = "b", A = "A", B = "B", C = "C", D = "D";
  int i = 1, j = 2, h = 1, k = 3, l = 1;
  bool reversed = false;
  // check
  std::string in;
  // theorem1
  std::string tree;
  std::size_t leaf_cap = 6;
  // oracle
  std::string task, group, identity;
  std::vector<std::string> tags;
  std::size_t trials = 100;
};

void line(std::ostream& out, bool ok, const std::string& name, const std::string& detail) {
  out << (ok ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot write " + path);
  f << text;
}

// ---------------------------------------------------------------- member

int member(const Options& o, std::ostream& out) {
  auto ring = parse_ring(o.ring);
  auto ideal = parse_ideal(o.ideal);
  auto p = parse_polynomial(ring, o.poly);
  bool all = true;
  std::ostringstream detail;
  for (const auto& t : p.terms()) {
    auto r = monomial_member(*ring, t.monomial, ideal);
    auto mono = Polynomial::monomial(ring, t.monomial).to_string();
    if (r.member)
      detail << "  " << mono << " in " << ideal.to_string() << " via " << describe_witness(*ring, t.monomial, *r.witness)
             << '\n';
    else
      detail << "  " << mono << " not in " << ideal.to_string() << '\n';
    all = all && r.member;
  }
  out << (all ? "MEMBER" : "NOT MEMBER") << ' ' << p.to_string() << " in " << ideal.to_string() << '\n'
      << detail.str();
  return Ok;
}

// ---------------------------------------------------------------- verify

bool suite_y_explicit(int n, std::ostream& out) {
  auto r = table_ring();
  auto a = Polynomial::letter(r, "a"), b = Polynomial::letter(r, "b");
  bool ok = true;
  auto compare = [&](const std::string& name, const GroupWord& w, const char* const* entries) {
    auto m = eval(w, r, n);
    auto expected = SquareMatrix::identity(r, n);
    for (int e = 0; e < 4; ++e) expected.at(e / 2, e % 2) = parse_polynomial(r, entries[e]);
    out << name << " = " << m.to_string() << '\n';
    bool same = m == expected;
    line(out, same, "verify " + name, same ? "matches the explicit 2x2 block at n=" + std::to_string(n) : "differs");
    ok = ok && same;
  };
  const char* y[] = {"1+ab+abab", "-aba", "bab", "1-ba"};
  const char* yi[] = {"1-ab", "aba", "-bab", "1+ba+baba"};
  compare("y[1,2](a;b)", GroupWord::y(1, 2, a, b), y);
  compare("~y[1,2](a;b)", GroupWord::inverse(GroupWord::y(1, 2, a, b)), yi);
  return ok;
}

bool suite_tables(int n, bool y_first, std::ostream& out) {
  auto checks = verify_tables(n);
  bool ok = true;
  for (std::size_t k = y_first ? 4 : 0; k < (y_first ? 8u : 4u); ++k) {
    line(out, checks[k].ok, "verify " + checks[k].name, checks[k].detail);
    ok = ok && checks[k].ok;
  }
  auto A = IdealExpr::atom('A'), B = IdealExpr::atom('B'), C = IdealExpr::atom('C');
  auto ab = IdealExpr::prod(A, B), ba = IdealExpr::prod(B, A);
  std::vector<IdealExpr> claims{IdealExpr::prod(ab, C), IdealExpr::prod(ba, C), IdealExpr::prod(C, ab),
                                IdealExpr::prod(C, ba)};
  auto level = IdealExpr::symprod(IdealExpr::symprod(A, B), C);
  const std::pair<Role, Role> shapes[] = {{Role::I, Role::H}, {Role::J, Role::H}, {Role::H, Role::I}, {Role::H, Role::J}};
  for (auto [row, col] : shapes)
    for (const auto& f : table_entry(row, col, y_first).factors) {
      const IdealExpr* claim = nullptr;
      for (const auto& c : claims)
        if (poly_member(f.arg, c)) {
          claim = &c;
          break;
        }
      bool in_level = poly_member(f.arg, level);
      line(out, claim && in_level, "claim " + f.arg.to_string(),
           (claim ? "in " + claim->to_string() : std::string("in none of ABC, BAC, CAB, CBA")) +
               (in_level ? ", inside " : ", outside ") + level.to_string());
      ok = ok && claim && in_level;
    }
  return ok;
}

bool suite_steinberg(int n, std::ostream& out) {
  auto r = table_ring();
  auto a = Polynomial::letter(r, "a"), c = Polynomial::letter(r, "c");
  int checked = 0, failed = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k)
        for (int l = 1; l <= n; ++l) {
          if (i == j || k == l) continue;
          auto s = GenSymbol::t(i, j, c), t = GenSymbol::t(k, l, a);
          ++checked;
          auto lhs = eval(GroupWord::conjugate(GroupWord::gen(s), GroupWord::gen(t)), r, n);
          if (!(lhs == eval(steinberg_conjugate(t, s), r, n))) ++failed;
        }
  line(out, failed == 0, "verify steinberg-rules n=" + std::to_string(n),
       std::to_string(checked - failed) + "/" + std::to_string(checked) + " conjugates ^t[i,j](c)t[k,l](a) agree");
  return failed == 0;
}

bool suite_identities(int n, std::ostream& out) {
  auto r = parse_ring("free(Z; a:R, b:R, c:R, d:R)");
  auto p = [&](const char* s) { return parse_polynomial(r, s); };
  auto x = GroupWord::t(1, 2, p("a")) * GroupWord::t(3, 1, p("d"));
  auto y = GroupWord::t(2, 3, p("b"));
  auto z = GroupWord::t(3, 1, p("c")) * GroupWord::t(1, 2, p("d"));
  using W = GroupWord;
  struct Case {
    const char* name;
    W lhs, rhs;
  };
  std::vector<Case> cases{
      {"[x,yz]=[x,y]^{y}[x,z]", W::commutator(x, y * z), W::commutator(x, y) * W::conjugate(y, W::commutator(x, z))},
      {"[xy,z]=^{x}[y,z][x,z]", W::commutator(x * y, z), W::conjugate(x, W::commutator(y, z)) * W::commutator(x, z)},
      {"[x,y]^-1=[y,x]", W::inverse(W::commutator(x, y)), W::commutator(y, x)},
      {"^{x}(yz)=^{x}y^{x}z", W::conjugate(x, y * z), W::conjugate(x, y) * W::conjugate(x, z)},
      {"t[1,2](a)t[1,2](b)=t[1,2](a+b)", W::t(1, 2, p("a")) * W::t(1, 2, p("b")), W::t(1, 2, p("a+b"))},
      {"[t[1,2](a),t[2,3](b)]=t[1,3](ab)", W::commutator(W::t(1, 2, p("a")), W::t(2, 3, p("b"))), W::t(1, 3, p("ab"))},
      {"[t[1,2](a),t[3,1](b)]=t[3,2](-ba)", W::commutator(W::t(1, 2, p("a")), W::t(3, 1, p("b"))),
       W::t(3, 2, p("-ba"))},
      {"z[1,2](a;c)=^{t[1,2](c)}t[2,1](a)", W::z(1, 2, p("a"), p("c")),
       W::conjugate(W::t(1, 2, p("c")), W::t(2, 1, p("a")))},
  };
  bool ok = true;
  for (const auto& c : cases) {
    bool same = eval(c.lhs, r, n) == eval(c.rhs, r, n);
    line(out, same, std::string("verify ") + c.name, same ? "equal at n=" + std::to_string(n) : "differ");
    ok = ok && same;
  }
  return ok;
}

bool suite_matrix_identities(std::ostream& out) {
  bool ok = true;
  auto q = parse_ring("poly(Q; x, y)");
  auto X = parse_word(q, "t[1,3](x)t[2,3](y)");
  auto Y = parse_word(q, "t[3,1](-y)t[3,2](x)");
  auto z = SquareMatrix::identity(q, 3);
  z.at(0, 0) = parse_polynomial(q, "1-xy");
  z.at(0, 1) = parse_polynomial(q, "x^2");
  z.at(1, 0) = parse_polynomial(q, "-y^2");
  z.at(1, 1) = parse_polynomial(q, "1+xy");
  bool first = eval(GroupWord::commutator(X, Y), q, 3) == z;
  line(out, first, "verify [t[1,3](x)t[2,3](y),t[3,1](-y)t[3,2](x)]", first ? "equals z over " + q->to_string() : "differs");

  auto zx = parse_ring("poly(Z; x)");
  auto y21 = SquareMatrix::identity(zx, 3);
  y21.at(0, 0) = parse_polynomial(zx, "1-x^2");
  y21.at(0, 1) = parse_polynomial(zx, "x^3");
  y21.at(1, 0) = parse_polynomial(zx, "-x^3");
  y21.at(1, 1) = parse_polynomial(zx, "1+x^2+x^4");
  bool second = eval(parse_word(zx, "y[2,1](x;x)"), zx, 3) == y21;
  line(out, second, "verify y[2,1](x;x)", second ? "equals the displayed matrix over " + zx->to_string() : "differs");
  ok = first && second;
  return ok;
}

int verify(const Options& o, std::ostream& out) {
  int n = o.n ? o.n : 3;
  bool ok;
  if (o.suite == "y-explicit")
    ok = suite_y_explicit(n, out);
  else if (o.suite == "lemma5-table")
    ok = suite_tables(n, false, out);
  else if (o.suite == "lemma6-table")
    ok = suite_tables(n, true, out);
  else if (o.suite == "steinberg-rules")
    ok = suite_steinberg(n, out);
  else if (o.suite == "identities-sec2")
    ok = suite_identities(n, out);
  else if (o.suite == "matrix-identities")
    ok = suite_matrix_identities(out);
  else
    throw ParseError("unknown suite '" + o.suite + "'");
  return ok ? Ok : CheckFailed;
}

// ---------------------------------------------------------------- certify

AdditiveSide additive_side(const std::string& s) {
  if (s.empty() || s == "first") return AdditiveSide::First;
  if (s == "second") return AdditiveSide::Second;
  if (s == "inverse") return AdditiveSide::Inverse;
  if (s == "inverse-second") return AdditiveSide::InverseSecond;
  throw ParseError("unknown side '" + s + "'");
}

CollapseSide collapse_side(const std::string& s) {
  if (s.empty() || s == "first") return CollapseSide::First;
  if (s == "second") return CollapseSide::Second;
  throw ParseError("unknown side '" + s + "'");
}

Certificate build_certificate(const Options& o, int n, std::ostream& out) {
  auto ring = parse_ring(o.ring);
  auto P = [&](const std::string& s) { return parse_polynomial(ring, s); };
  auto or_default = [](const std::string& s, const char* d) { return s.empty() ? std::string(d) : s; };
  ElementaryCommutator y{o.i, o.j, P(o.a), P(o.b), parse_ideal(o.A), parse_ideal(o.B)};
  const auto& L = o.lemma;
  if (L == "9") return certify_lemma9(parse_word(ring, or_default(o.x, "t[1,3](f)")), y, n);
  if (L == "10") {
    auto side = additive_side(o.side);
    return certify_additivity(y, P(or_default(o.extra, side == AdditiveSide::Second ? "f*b" : "a*f")), side, n);
  }
  if (L == "11") return certify_transport(y, P(or_default(o.c, "f")), o.k, o.l, n);
  if (L == "12") {
    auto side = collapse_side(o.side);
    return certify_collapse(y, P(or_default(o.f, side == CollapseSide::First ? "a" : "b")), side, n);
  }
  if (L == "comaximal") return certify_comaximal(y, P(or_default(o.a_prime, "a")), P(or_default(o.b_prime, "b")), n);
  if (L == "7") return certify_triple(y, o.h, o.k, P(or_default(o.c, "c")), parse_ideal(o.C), n);
  if (L == "8") {
    ElementaryCommutator y2{o.h, o.k, P(or_default(o.c, "c")), P(or_default(o.d, "d")), parse_ideal(o.C),
                            parse_ideal(o.D)};
    if (n < 4 && o.experimental_n3) out << quadruple_n3_report(o.i, o.j) << '\n';
    return certify_quadruple(y, y2, n);
  }
  if (L == "z")
    return certify_z_in_mixed(o.i, o.j, P(o.a), P(o.b), P(or_default(o.c, "0")), parse_ideal(o.A), parse_ideal(o.B),
                              o.reversed, n);
  throw ParseError("unknown construction '" + L + "'");
}

int certify(const Options& o, std::ostream& out) {
  int n = o.n ? o.n : (o.lemma == "8" ? 4 : 3);
  auto cert = build_certificate(o, n, out);
  auto text = serialize(cert);
  auto result = check(cert);
  if (o.out.empty())
    out << text;
  else
    write_file(o.out, text);
  std::string where = o.out.empty() ? "" : ", written to " + o.out;
  line(out, result.ok, "certify " + o.lemma,
       result.ok ? std::to_string(cert.atoms.size()) + " atoms, modulus " + cert.modulus.to_string() + where
                 : result.message);
  return result.ok ? Ok : CheckFailed;
}

// ---------------------------------------------------------------- check

std::vector<CheckResult> detail_check(const std::vector<Certificate>& certs, unsigned jobs) {
  return detail::parallel_map(certs.size(), jobs, [&](std::size_t k) { return check(certs[k]); });
}

// A file may hold several certificates; '#' lines are comments.
std::vector<std::string> split_certificates(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string l;
  while (std::getline(in, l)) {
    if (l.empty() || l[0] == '#') continue;
    if (l.rfind("certificate ", 0) == 0 || out.empty()) out.emplace_back();
    out.back() += l + '\n';
  }
  return out;
}

int check_file(const Options& o, std::ostream& out) {
  auto chunks = split_certificates(read_file(o.in));
  if (chunks.empty()) throw ParseError(o.in + " holds no certificate");
  std::vector<Certificate> certs;
  for (const auto& c : chunks) certs.push_back(parse_certificate(c));
  auto results = detail_check(certs, o.jobs);
  bool all = true;
  for (std::size_t k = 0; k < certs.size(); ++k) {
    std::string name = "check " + o.in + (certs.size() > 1 ? "#" + std::to_string(k + 1) : "");
    line(out, results[k].ok, name,
         results[k].ok ? certs[k].lhs.to_string().substr(0, 60) + ", " + std::to_string(certs[k].atoms.size()) +
                             " atoms, modulus " + certs[k].modulus.to_string()
                       : results[k].message);
    all = all && results[k].ok;
  }
  return all ? Ok : CheckFailed;
}

// ---------------------------------------------------------------- theorem1

int theorem1(const Options& o, std::ostream& out) {
  int n = o.n ? o.n : 4;
  auto tree = parse_bracket_tree(o.tree);
  Theorem1Options opts;
  opts.leaf_cap = o.leaf_cap;
  opts.jobs = o.jobs;
  Theorem1Report report;
  try {
    report = theorem1_reduce(tree, n, opts);
  } catch (const NotSupported&) {
    if (o.experimental_n3 && n == 3) out << quadruple_n3_report(1, 2) << '\n';
    throw;
  }
  auto summary = report.summary();
  out << summary;
  if (report.steps.empty()) out << "PASS theorem1 " << report.tree << ": no inner node needs a certificate\n";
  if (!o.out.empty()) {
    std::ostringstream file;
    std::istringstream lines(summary);
    for (std::string l; std::getline(lines, l);) file << "# " << l << '\n';
    for (const auto& s : report.steps)
      for (const auto& inst : s.instances) file << "# " << s.subtree << ' ' << inst.name << '\n' << serialize(inst.certificate);
    write_file(o.out, file.str());
  }
  return report.ok() ? Ok : CheckFailed;
}

// ---------------------------------------------------------------- oracle

IdealDescriptor descriptor(const FiniteRing& ring, const std::string& text) {
  if (ring.spec()->kind() == RingKind::ModularInt) {
    std::size_t used = 0;
    unsigned long long d = 0;
    try {
      d = std::stoull(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != text.size() || d == 0) throw ParseError("expected a divisor of the modulus, got '" + text + "'");
    return IdealDescriptor::divisor(d);
  }
  return IdealDescriptor::expr(parse_ideal(text));
}

// "E(I)", "E(R,I)" or "[E(I),E(J)]"
SubgroupHandle group_from(const std::string& text, const FiniteRing& ring, int n, std::size_t cap) {
  auto inner = [&](const std::string& s, std::size_t from) {
    auto close = s.find(')', from);
    if (close == std::string::npos) throw ParseError("unterminated group '" + text + "'");
    return std::make_pair(s.substr(from, close - from), close + 1);
  };
  std::string s;
  std::remove_copy(text.begin(), text.end(), std::back_inserter(s), ' ');
  if (s.rfind("E(R,", 0) == 0) return closure(ring, n, relative_generators(ring, n, descriptor(ring, inner(s, 4).first)), cap);
  if (s.rfind("E(", 0) == 0) return closure(ring, n, elementary_generators(ring, n, descriptor(ring, inner(s, 2).first)), cap);
  if (s.rfind("[E(", 0) == 0) {
    auto [first, next] = inner(s, 3);
    if (s.compare(next, 3, ",E(") != 0 || s.back() != ']') throw ParseError("expected [E(I),E(J)], got '" + text + "'");
    auto second = inner(s, next + 3).first;
    auto h1 = closure(ring, n, elementary_generators(ring, n, descriptor(ring, first)), cap);
    auto h2 = closure(ring, n, elementary_generators(ring, n, descriptor(ring, second)), cap);
    return closure(ring, n, mixed_commutator_generators(h1, h2), cap);
  }
  throw ParseError("unknown group '" + text + "'");
}

TagIdeals tag_ideals(const FiniteRing& ring, const std::vector<std::string>& tags) {
  TagIdeals out;
  for (const auto& t : tags) {
    if (t.size() < 3 || t[1] != '=') throw ParseError("expected TAG=ideal, got '" + t + "'");
    out.insert_or_assign(t[0], descriptor(ring, t.substr(2)));
  }
  return out;
}

int oracle(const Options& o, std::ostream& out) {
  FiniteRing ring(parse_ring(o.ring));
  int n = o.n ? o.n : 3;
  const auto ring_name = ring.spec()->to_string();
  if (o.task == "closure") {
    auto h = group_from(o.group, ring, n, o.cap);
    line(out, true, "oracle closure " + o.group,
         "size " + std::to_string(h.size()) + " (n=" + std::to_string(n) + ", ring " + ring_name + ", cap " +
             std::to_string(o.cap) + ")");
    return Ok;
  }
  if (o.task == "centrality") {
    auto h = group_from(o.group, ring, n, o.cap);
    auto ambient = elementary_generators(ring, n, IdealDescriptor::whole());
    auto trivial = closure(ring, n, {}, o.cap);
    auto r = centrality_check(h, ambient, trivial);
    line(out, r.ok, "oracle centrality " + o.group,
         r.ok ? "size " + std::to_string(h.size()) + ", commutes with all " + std::to_string(ambient.size()) +
                    " elementary generators of E(" + std::to_string(n) + "," + ring_name + ")"
              : r.witness);
    return r.ok ? Ok : CheckFailed;
  }
  if (o.task == "shadow") {
    auto ideals = tag_ideals(ring, o.tags);
    std::vector<std::pair<std::string, ShadowResult>> results;
    if (!o.in.empty()) {
      auto chunks = split_certificates(read_file(o.in));
      auto shadows = detail::parallel_map(chunks.size(), o.jobs, [&](std::size_t k) {
        return shadow_certificate(parse_certificate(chunks[k]), ring, ideals, o.trials, o.seed + k);
      });
      for (std::size_t k = 0; k < shadows.size(); ++k)
        results.emplace_back(o.in + (chunks.size() > 1 ? "#" + std::to_string(k + 1) : ""), shadows[k]);
    } else {
      results.emplace_back(o.identity, numeric_shadow(o.identity, o.trials, ring, ideals, o.seed));
    }
    bool all = true;
    for (const auto& [name, r] : results) {
      line(out, r.ok, "oracle shadow " + name,
           r.ok ? std::to_string(r.trials) + "/" + std::to_string(o.trials) + " trials over " + ring_name + " (seed " +
                      std::to_string(o.seed) + ")"
                : r.failure);
      all = all && r.ok;
    }
    return all ? Ok : CheckFailed;
  }
  throw ParseError("unknown task '" + o.task + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact verification of elementary commutator identities", "elcomm"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  auto jobs = [&](CLI::App* c) { c->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::Range(1u, 256u)); };

  auto* mem = app.add_subcommand("member", "Decide membership of a polynomial in an ideal expression");
  mem->add_option("--ring", o.ring, "Ring spec")->required();
  mem->add_option("--ideal", o.ideal, "Ideal expression")->required();
  mem->add_option("--poly", o.poly, "Polynomial")->required();

  auto* ver = app.add_subcommand("verify", "Derive and evaluate a formula suite");
  ver->add_option("--suite", o.suite,
                  "y-explicit, lemma5-table, lemma6-table, steinberg-rules, identities-sec2 or matrix-identities")
      ->required();
  ver->add_option("--n", o.n, "Matrix size")->check(CLI::Range(2, 12));

  auto* cer = app.add_subcommand("certify", "Build, self-check and write one certificate");
  cer->add_option("--lemma", o.lemma, "9, 10, 11, 12, 7, 8, z or comaximal")->required();
  cer->add_option("--ring", o.ring, "Ring spec")->default_val(default_ring);
  cer->add_option("--n", o.n, "Matrix size")->check(CLI::Range(2, 12));
  cer->add_option("--out", o.out, "Output file (stdout if omitted)");
  cer->add_option("--i", o.i, "First index of the y-symbol");
  cer->add_option("--j", o.j, "Second index of the y-symbol");
  cer->add_option("--a", o.a, "First argument");
  cer->add_option("--b", o.b, "Second argument");
  cer->add_option("--A", o.A, "Ideal of the first argument");
  cer->add_option("--B", o.B, "Ideal of the second argument");
  cer->add_option("--x", o.x, "Conjugating word (9)");
  cer->add_option("--side", o.side, "first, second, inverse or inverse-second (10, 12)");
  cer->add_option("--extra", o.extra, "Second summand (10)");
  cer->add_option("--k", o.k, "Target row (11), transvection column (7) or second y-symbol column (8)");
  cer->add_option("--l", o.l, "Target column (11)");
  cer->add_option("--h", o.h, "Transvection row (7) or second y-symbol row (8)");
  cer->add_option("--c", o.c, "Moved factor (11), transvection argument (7), third argument (8, z)");
  cer->add_option("--d", o.d, "Fourth argument (8)");
  cer->add_option("--C", o.C, "Ideal of c");
  cer->add_option("--D", o.D, "Ideal of d");
  cer->add_option("--f", o.f, "Collapsing factor (12)");
  cer->add_option("--a-prime", o.a_prime, "Element of A (comaximal)");
  cer->add_option("--b-prime", o.b_prime, "Element of B (comaximal)");
  cer->add_flag("--reversed", o.reversed, "Use z(ba, c) instead of z(ab, c)");
  cer->add_flag("--experimental-n3", o.experimental_n3, "Report where the n = 3 case breaks down");

  auto* chk = app.add_subcommand("check", "Re-verify certificates from a file");
  chk->add_option("--in", o.in, "Certificate file")->required()->check(CLI::ExistingFile);
  jobs(chk);

  auto* thm = app.add_subcommand("theorem1", "Reduce a bracket tree of ideals to checked certificates");
  thm->add_option("--tree", o.tree, "Bracket tree such as [[A,B],[C,D]]")->required();
  thm->add_option("--n", o.n, "Matrix size")->check(CLI::Range(3, 12));
  thm->add_option("--out", o.out, "Report file with every certificate");
  thm->add_option("--leaf-cap", o.leaf_cap, "Largest tree accepted");
  thm->add_flag("--experimental-n3", o.experimental_n3, "Report where the n = 3 case breaks down");
  jobs(thm);

  auto* orc = app.add_subcommand("oracle", "Brute-force checks over a finite ring");
  orc->add_option("--ring", o.ring, "Z/m or trunc(...)")->required();
  orc->add_option("--task", o.task, "closure, centrality or shadow")->required();
  orc->add_option("--n", o.n, "Matrix size")->check(CLI::Range(2, 6));
  orc->add_option("--group", o.group, "E(I), E(R,I) or [E(I),E(J)]");
  orc->add_option("--identity", o.identity, "Built-in identity for shadow");
  orc->add_option("--in", o.in, "Certificate file for shadow")->check(CLI::ExistingFile);
  orc->add_option("--tag", o.tags, "Ideal of a tag, e.g. A=2 (repeatable)");
  orc->add_option("--trials", o.trials, "Random substitutions per identity");
  orc->add_option("--seed", o.seed, "Random seed");
  orc->add_option("--cap", o.cap, "Closure size cap");
  jobs(orc);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return Usage;
  }

  try {
    if (*mem) return member(o, out);
    if (*ver) return verify(o, out);
    if (*cer) return certify(o, out);
    if (*chk) return check_file(o, out);
    if (*thm) return theorem1(o, out);
    if (o.task == "closure" || o.task == "centrality") {
      if (o.group.empty()) throw ParseError("--group is required for " + o.task);
    } else if (o.task == "shadow" && o.in.empty() == o.identity.empty()) {
      throw ParseError("shadow needs exactly one of --identity and --in");
    }
    return oracle(o, out);
  } catch (const NotSupported& e) {
    err << "not supported: " << e.what() << '\n';
    return Unsupported;
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << '\n';
    return CapReached;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return Usage;
  }
}

}  // namespace elcomm::cli
