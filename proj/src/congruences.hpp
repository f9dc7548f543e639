#pragma once

// Congruence-level builders shared by the certify_* entry points.

#include "elcomm/certificate.hpp"
#include "elcomm/certify.hpp"

namespace elcomm::detail {

Congruence lemma9(const GroupWord& x, const ElementaryCommutator& y, int n);
Congruence additivity(const ElementaryCommutator& y, const Polynomial& extra, AdditiveSide side, int n);
Congruence transport(const ElementaryCommutator& y, const Polynomial& c, int k, int l, int n);
Congruence collapse(const ElementaryCommutator& y, const Polynomial& f, CollapseSide side, int n);
Congruence comaximal(const ElementaryCommutator& y, const Polynomial& a_prime, const Polynomial& b_prime, int n);
Congruence triple(const ElementaryCommutator& y, int h, int k, const Polynomial& c, const IdealExpr& C, int n);
Congruence quadruple(const ElementaryCommutator& y1, const ElementaryCommutator& y2, int n);

/// y with its arguments replaced.
ElementaryCommutator with_args(const ElementaryCommutator& y, int i, int j, Polynomial a, Polynomial b);

/// The first candidate ideal containing p, or the last candidate.
IdealExpr first_claim(const Polynomial& p, const std::vector<IdealExpr>& candidates);

}  // namespace elcomm::detail
