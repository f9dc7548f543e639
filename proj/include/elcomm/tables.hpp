#pragma once

// Commutators of y_ij(a, b) with a transvection sharing exactly one index,
// obtained by evaluating them once over free letters and splitting the
// result into transvections along one row or column.

#include "elcomm/group.hpp"
#include "elcomm/ring.hpp"

#include <string>
#include <vector>

namespace elcomm {

/// Index roles: (i, j) carry the y-symbol, h is the third index.
enum class Role { I, J, H };

struct TableFactor {
  Role row;
  Role col;
  /// Over table_ring().
  Polynomial arg;
};

struct TableEntry {
  /// Position of the transvection t(c).
  Role row;
  Role col;
  /// true: [y(a,b), t(c)]; false: [t(c), y(a,b)].
  bool y_first;
  std::vector<TableFactor> factors;

  /// e.g. "[t[i,h](c),y[i,j](a;b)]=t[i,h](-a*b*c-a*b*a*b*c)t[j,h](-b*a*b*c)"
  std::string formula() const;
};

/// free(Z; a:A, b:B, c:C), the ring the tables are computed in.
const RingPtr& table_ring();

/// Computes one entry from scratch.
TableEntry derive_table_entry(Role row, Role col, bool y_first);

/// The cached entry for t at (row, col), one of ih, jh, hi, hj.
const TableEntry& table_entry(Role row, Role col, bool y_first);

/// The entry's factors at concrete indices, arguments substituted into the
/// ring of a, b and c.
std::vector<Transvection> instantiate(const TableEntry& entry, int i, int j, int h, const Polynomial& a,
                                      const Polynomial& b, const Polynomial& c);

struct TableCheck {
  std::string name;
  bool ok;
  std::string detail;
};

/// Compares every instantiated entry against direct evaluation for all
/// distinct (i, j, h) in degree n.
std::vector<TableCheck> verify_tables(int n);

}  // namespace elcomm
