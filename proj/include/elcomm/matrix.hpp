#pragma once

#include "elcomm/ring.hpp"

#include <span>
#include <string>
#include <vector>

namespace elcomm {

/// n x n matrix over one ring; indices here are 0-based.
class SquareMatrix {
 public:
  static SquareMatrix identity(RingPtr ring, int n);
  static SquareMatrix zero(RingPtr ring, int n);

  int n() const { return n_; }
  const RingSpec& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }

  const Polynomial& operator()(int r, int c) const { return entries_[index(r, c)]; }
  Polynomial& at(int r, int c) { return entries_[index(r, c)]; }
  std::vector<Polynomial> column(int c) const;
  std::vector<Polynomial> row(int r) const;

  SquareMatrix operator*(const SquareMatrix& other) const;

  /// this <- this * t_{ij}(c): column j += column i * c.
  void multiply_right_transvection(int i, int j, const Polynomial& c);
  /// this <- t_{ij}(c) * this: row i += c * row j.
  void multiply_left_transvection(int i, int j, const Polynomial& c);
  /// this <- this * (e + u p v) for a column u and a row v.
  void multiply_right_rank_one(std::span<const Polynomial> u, const Polynomial& p,
                               std::span<const Polynomial> v);

  bool is_identity() const;
  /// Total number of stored terms over all entries.
  std::size_t size() const;

  friend bool operator==(const SquareMatrix& a, const SquareMatrix& b);

  /// Rows separated by " | ", entries by ", ".
  std::string to_string() const;

 private:
  SquareMatrix(RingPtr ring, int n);
  std::size_t index(int r, int c) const { return static_cast<std::size_t>(r) * n_ + c; }

  RingPtr ring_;
  int n_;
  std::vector<Polynomial> entries_;
};

}  // namespace elcomm
