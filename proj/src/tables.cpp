#include "elcomm/tables.hpp"

#include "elcomm/error.hpp"

#include <array>
#include <map>
#include <mutex>

namespace elcomm {

namespace {

char role_name(Role r) { return r == Role::I ? 'i' : r == Role::J ? 'j' : 'h'; }

int role_index(Role r, int i, int j, int h) { return r == Role::I ? i : r == Role::J ? j : h; }

GroupWord commutator_word(const TableEntry& shape, int i, int j, int h, const Polynomial& a, const Polynomial& b,
                          const Polynomial& c) {
  auto y = GroupWord::y(i, j, a, b);
  auto t = GroupWord::t(role_index(shape.row, i, j, h), role_index(shape.col, i, j, h), c);
  return shape.y_first ? GroupWord::commutator(y, t) : GroupWord::commutator(t, y);
}

Polynomial var(const char* name) { return Polynomial::letter(table_ring(), name); }

}  // namespace

const RingPtr& table_ring() {
  static const RingPtr ring = parse_ring("free(Z; a:A, b:B, c:C)");
  return ring;
}

std::string TableEntry::formula() const {
  auto pos = [](Role r, Role c) { return std::string("[") + role_name(r) + "," + role_name(c) + "]"; };
  std::string t = "t" + pos(row, col) + "(c)";
  std::string y = "y[i,j](a;b)";
  std::string out = "[" + (y_first ? y + "," + t : t + "," + y) + "]=";
  for (const auto& f : factors) out += "t" + pos(f.row, f.col) + "(" + f.arg.to_string() + ")";
  if (factors.empty()) out += "e";
  return out;
}

TableEntry derive_table_entry(Role row, Role col, bool y_first) {
  if (row == col || (row != Role::H && col != Role::H))
    throw ShapeMismatch("table entries need t to share exactly one index with y");
  TableEntry entry{row, col, y_first, {}};
  constexpr int i = 1, j = 2, h = 3;
  auto m = eval(commutator_word(entry, i, j, h, var("a"), var("b"), var("c")), table_ring(), 3);
  // t at (h, *) leaves the result in row h, t at (*, h) in column h
  const bool in_row = row == Role::H;
  for (int r = 0; r < 3; ++r)
    for (int k = 0; k < 3; ++k) {
      const auto& x = m(r, k);
      bool expected_one = r == k;
      bool allowed = r != k && (in_row ? r == h - 1 : k == h - 1);
      if (expected_one ? !x.is_one() : (!allowed && !x.is_zero()))
        throw Error("commutator " + entry.formula() + " does not split along one line");
    }
  for (Role other : {Role::I, Role::J}) {
    auto r = in_row ? Role::H : other;
    auto k = in_row ? other : Role::H;
    const auto& x = m(role_index(r, i, j, h) - 1, role_index(k, i, j, h) - 1);
    if (!x.is_zero()) entry.factors.push_back(TableFactor{r, k, x});
  }
  return entry;
}

const TableEntry& table_entry(Role row, Role col, bool y_first) {
  static std::mutex mu;
  static std::map<std::array<int, 3>, TableEntry> cache;
  std::lock_guard lock(mu);
  std::array<int, 3> key{static_cast<int>(row), static_cast<int>(col), y_first ? 1 : 0};
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, derive_table_entry(row, col, y_first)).first;
  return it->second;
}

std::vector<Transvection> instantiate(const TableEntry& entry, int i, int j, int h, const Polynomial& a,
                                      const Polynomial& b, const Polynomial& c) {
  Assignment img{{"a", a}, {"b", b}, {"c", c}};
  std::vector<Transvection> out;
  for (const auto& f : entry.factors) {
    auto arg = evaluate_hom(f.arg, img, a.ring_ptr());
    if (!arg.is_zero())
      out.push_back(Transvection{role_index(f.row, i, j, h), role_index(f.col, i, j, h), std::move(arg)});
  }
  return out;
}

std::vector<TableCheck> verify_tables(int n) {
  std::vector<TableCheck> out;
  const std::array<std::pair<Role, Role>, 4> shapes{
      {{Role::I, Role::H}, {Role::J, Role::H}, {Role::H, Role::I}, {Role::H, Role::J}}};
  for (bool y_first : {false, true})
    for (auto [row, col] : shapes) {
      const auto& entry = table_entry(row, col, y_first);
      int checked = 0, failed = 0;
      std::string first_failure;
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
          for (int h = 1; h <= n; ++h) {
            if (i == j || h == i || h == j) continue;
            ++checked;
            auto factors = instantiate(entry, i, j, h, var("a"), var("b"), var("c"));
            std::vector<GroupWord> ts;
            for (auto& f : factors) ts.push_back(GroupWord::t(f.i, f.j, f.arg));
            auto direct = eval(commutator_word(entry, i, j, h, var("a"), var("b"), var("c")), table_ring(), n);
            if (eval(GroupWord::product(ts), table_ring(), n) != direct) {
              ++failed;
              if (first_failure.empty())
                first_failure = " first at (i,j,h)=(" + std::to_string(i) + "," + std::to_string(j) + "," +
                                std::to_string(h) + ")";
            }
          }
      out.push_back(TableCheck{"table n=" + std::to_string(n) + " " + entry.formula(), failed == 0,
                               std::to_string(checked - failed) + "/" + std::to_string(checked) +
                                   " index patterns agree" + first_failure});
    }
  return out;
}

}  // namespace elcomm
