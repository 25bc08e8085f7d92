#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kbg/arith/bigint.hpp"

namespace kbg {

using IntVec = std::vector<BigInt>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix identity(int n);
  static IntMatrix from_rows(const std::vector<IntVec>& rows, int cols = -1);
  static IntMatrix from_columns(const std::vector<IntVec>& cols, int rows = -1);

  int rows() const { return r_; }
  int cols() const { return c_; }
  BigInt& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
  const BigInt& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

  IntVec row(int i) const;
  IntVec column(int j) const;
  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& o) const;
  IntVec operator*(const IntVec& v) const;
  IntMatrix operator+(const IntMatrix& o) const;
  IntMatrix operator-(const IntMatrix& o) const;
  bool operator==(const IntMatrix& o) const;
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }
  bool is_zero() const;
  BigInt trace() const;

  void swap_rows(int i, int j);
  void swap_cols(int i, int j);
  // row_i += f * row_j
  void add_row(int i, int j, const BigInt& f);
  void add_col(int i, int j, const BigInt& f);
  void negate_row(int i);
  void negate_col(int j);

  std::string to_string() const;

 private:
  int r_ = 0, c_ = 0;
  std::vector<BigInt> a_;
};

struct SmithForm {
  IntMatrix D, U, V;  // U * A * V = D
  std::vector<BigInt> diagonal() const;
  int rank() const;
};

SmithForm smith_normal_form(const IntMatrix& A, bool want_transforms = true);

BigInt determinant(const IntMatrix& A);

// Row-style Hermite normal form of the lattice spanned by the rows of G.
// Result rows form a basis (zero rows removed), upper echelon with positive pivots.
IntMatrix hermite_rows(const IntMatrix& G);

// Columns form a basis of { x in Z^cols : A x = 0 }.
IntMatrix kernel_basis(const IntMatrix& A);

// Solve B x = w over Z for B with independent columns; nullopt if no integral solution.
std::optional<IntVec> solve_integral(const IntMatrix& B, const IntVec& w);

// Columns of X solving B X = W column by column; throws NonIntegral if impossible.
IntMatrix solve_integral_matrix(const IntMatrix& B, const IntMatrix& W);

// Rank over Q.
int rank_of(const IntMatrix& A);

// Invariant factors (> 1) and rank of the cokernel Z^rows / (column span of A).
struct CokernelInvariants {
  std::vector<BigInt> torsion;
  int free_rank = 0;
};
CokernelInvariants cokernel(const IntMatrix& A);

}  // namespace kbg
