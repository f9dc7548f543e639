#include "elcomm/matrix.hpp"

#include "elcomm/error.hpp"

#include <sstream>

namespace elcomm {

SquareMatrix::SquareMatrix(RingPtr ring, int n)
    : ring_(std::move(ring)), n_(n), entries_(static_cast<std::size_t>(n) * n, Polynomial(ring_)) {
  if (n < 1) throw IndexOutOfRange("matrix degree must be positive");
}

SquareMatrix SquareMatrix::zero(RingPtr ring, int n) { return SquareMatrix(std::move(ring), n); }

SquareMatrix SquareMatrix::identity(RingPtr ring, int n) {
  SquareMatrix m(ring, n);
  for (int k = 0; k < n; ++k) m.at(k, k) = Polynomial::constant(ring, 1);
  return m;
}

std::vector<Polynomial> SquareMatrix::column(int c) const {
  std::vector<Polynomial> out;
  for (int r = 0; r < n_; ++r) out.push_back((*this)(r, c));
  return out;
}

std::vector<Polynomial> SquareMatrix::row(int r) const {
  std::vector<Polynomial> out;
  for (int c = 0; c < n_; ++c) out.push_back((*this)(r, c));
  return out;
}

SquareMatrix SquareMatrix::operator*(const SquareMatrix& other) const {
  if (!same_ring(*ring_, *other.ring_)) throw RingMismatch();
  if (n_ != other.n_) throw ShapeMismatch("matrix degrees differ");
  SquareMatrix out(ring_, n_);
  for (int r = 0; r < n_; ++r)
    for (int k = 0; k < n_; ++k) {
      const auto& x = (*this)(r, k);
      if (x.is_zero()) continue;
      for (int c = 0; c < n_; ++c) {
        const auto& y = other(k, c);
        if (!y.is_zero()) out.at(r, c) += x * y;
      }
    }
  return out;
}

void SquareMatrix::multiply_right_transvection(int i, int j, const Polynomial& c) {
  if (c.is_zero()) return;
  for (int r = 0; r < n_; ++r) {
    const auto& x = (*this)(r, i);
    if (!x.is_zero()) at(r, j) += x * c;
  }
}

void SquareMatrix::multiply_left_transvection(int i, int j, const Polynomial& c) {
  if (c.is_zero()) return;
  for (int col = 0; col < n_; ++col) {
    const auto& x = (*this)(j, col);
    if (!x.is_zero()) at(i, col) += c * x;
  }
}

void SquareMatrix::multiply_right_rank_one(std::span<const Polynomial> u, const Polynomial& p,
                                           std::span<const Polynomial> v) {
  if (p.is_zero()) return;
  // (this * u) p, then outer product with v
  std::vector<Polynomial> w;
  w.reserve(n_);
  for (int r = 0; r < n_; ++r) {
    Polynomial acc(ring_);
    for (int k = 0; k < n_; ++k)
      if (!(*this)(r, k).is_zero() && !u[k].is_zero()) acc += (*this)(r, k) * u[k];
    w.push_back(acc.is_zero() ? acc : acc * p);
  }
  for (int r = 0; r < n_; ++r) {
    if (w[r].is_zero()) continue;
    for (int c = 0; c < n_; ++c)
      if (!v[c].is_zero()) at(r, c) += w[r] * v[c];
  }
}

bool SquareMatrix::is_identity() const {
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c) {
      const auto& x = (*this)(r, c);
      if (r == c ? !x.is_one() : !x.is_zero()) return false;
    }
  return true;
}

std::size_t SquareMatrix::size() const {
  std::size_t total = 0;
  for (const auto& e : entries_) total += e.size();
  return total;
}

bool operator==(const SquareMatrix& a, const SquareMatrix& b) {
  return a.n_ == b.n_ && same_ring(*a.ring_, *b.ring_) && a.entries_ == b.entries_;
}

std::string SquareMatrix::to_string() const {
  std::ostringstream os;
  for (int r = 0; r < n_; ++r) {
    if (r) os << " | ";
    for (int c = 0; c < n_; ++c) os << (c ? ", " : "") << (*this)(r, c).to_string();
  }
  return os.str();
}

}  // namespace elcomm
