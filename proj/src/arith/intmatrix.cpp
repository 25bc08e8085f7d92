#include "kbg/arith/intmatrix.hpp"

#include <sstream>
#include <utility>

#include "kbg/errors.hpp"

namespace kbg {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  r_ = static_cast<int>(rows.size());
  c_ = r_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != c_) throw InvalidArgument("ragged matrix literal");
    for (long v : row) a_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows, int cols) {
  int c = cols >= 0 ? cols : (rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  IntMatrix m(static_cast<int>(rows.size()), c);
  for (int i = 0; i < m.r_; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw InvalidArgument("row length mismatch");
    for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVec>& cols, int rows) {
  int r = rows >= 0 ? rows : (cols.empty() ? 0 : static_cast<int>(cols[0].size()));
  IntMatrix m(r, static_cast<int>(cols.size()));
  for (int j = 0; j < m.c_; ++j) {
    if (static_cast<int>(cols[j].size()) != r) throw InvalidArgument("column length mismatch");
    for (int i = 0; i < r; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

IntVec IntMatrix::row(int i) const {
  return IntVec(a_.begin() + static_cast<long>(i) * c_, a_.begin() + static_cast<long>(i + 1) * c_);
}

IntVec IntMatrix::column(int j) const {
  IntVec v(r_);
  for (int i = 0; i < r_; ++i) v[i] = (*this)(i, j);
  return v;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (c_ != o.r_) throw InvalidArgument("matrix product dimension mismatch");
  IntMatrix p(r_, o.c_);
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < c_; ++k) {
      const BigInt& x = (*this)(i, k);
      if (x == 0) continue;
      for (int j = 0; j < o.c_; ++j) p(i, j) += x * o(k, j);
    }
  return p;
}

IntVec IntMatrix::operator*(const IntVec& v) const {
  if (static_cast<int>(v.size()) != c_) throw InvalidArgument("matrix-vector dimension mismatch");
  IntVec out(r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw InvalidArgument("matrix sum dimension mismatch");
  IntMatrix s(*this);
  for (size_t k = 0; k < a_.size(); ++k) s.a_[k] += o.a_[k];
  return s;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw InvalidArgument("matrix difference dimension mismatch");
  IntMatrix s(*this);
  for (size_t k = 0; k < a_.size(); ++k) s.a_[k] -= o.a_[k];
  return s;
}

bool IntMatrix::operator==(const IntMatrix& o) const {
  return r_ == o.r_ && c_ == o.c_ && a_ == o.a_;
}

bool IntMatrix::is_zero() const {
  for (const auto& x : a_)
    if (x != 0) return false;
  return true;
}

BigInt IntMatrix::trace() const {
  BigInt t = 0;
  for (int i = 0; i < std::min(r_, c_); ++i) t += (*this)(i, i);
  return t;
}

void IntMatrix::swap_rows(int i, int j) {
  if (i == j) return;
  for (int k = 0; k < c_; ++k) std::swap((*this)(i, k), (*this)(j, k));
}

void IntMatrix::swap_cols(int i, int j) {
  if (i == j) return;
  for (int k = 0; k < r_; ++k) std::swap((*this)(k, i), (*this)(k, j));
}

void IntMatrix::add_row(int i, int j, const BigInt& f) {
  if (f == 0) return;
  for (int k = 0; k < c_; ++k)
    if ((*this)(j, k) != 0) (*this)(i, k) += f * (*this)(j, k);
}

void IntMatrix::add_col(int i, int j, const BigInt& f) {
  if (f == 0) return;
  for (int k = 0; k < r_; ++k)
    if ((*this)(k, j) != 0) (*this)(k, i) += f * (*this)(k, j);
}

void IntMatrix::negate_row(int i) {
  for (int k = 0; k < c_; ++k) (*this)(i, k) = -(*this)(i, k);
}

void IntMatrix::negate_col(int j) {
  for (int k = 0; k < r_; ++k) (*this)(k, j) = -(*this)(k, j);
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < r_; ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < c_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

std::vector<BigInt> SmithForm::diagonal() const {
  std::vector<BigInt> d;
  for (int i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

int SmithForm::rank() const {
  int r = 0;
  for (int i = 0; i < std::min(D.rows(), D.cols()); ++i)
    if (D(i, i) != 0) ++r;
  return r;
}

namespace {

// Extended gcd on big integers: g = s*a + t*b, g >= 0.
void xgcd(const BigInt& a, const BigInt& b, BigInt& g, BigInt& s, BigInt& t) {
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

// Rows i, j of M replaced by (a*r_i + b*r_j, c*r_i + d*r_j).
void combine_rows(IntMatrix& M, int i, int j, const BigInt& a, const BigInt& b, const BigInt& c,
                  const BigInt& d) {
  for (int k = 0; k < M.cols(); ++k) {
    BigInt x = M(i, k), y = M(j, k);
    if (x == 0 && y == 0) continue;
    M(i, k) = a * x + b * y;
    M(j, k) = c * x + d * y;
  }
}

bool is_zero_row(const IntMatrix& M, int i) {
  for (int k = 0; k < M.cols(); ++k)
    if (M(i, k) != 0) return false;
  return true;
}

// Row Hermite form by incremental insertion with off-diagonal reduction.
// On return U * A = H (U unimodular when tracked); nonzero rows of H come first,
// in echelon order with positive pivots and entries above each pivot reduced.
void hermite_in_place(IntMatrix& H, IntMatrix* U) {
  int m = H.rows(), n = H.cols();
  std::vector<int> pivot_col;  // basis rows occupy indices 0..rank-1
  int rank = 0;
  BigInt g, s, t;
  for (int i = 0; i < m; ++i) {
    // Move the incoming row next to the basis.
    if (i != rank) {
      H.swap_rows(i, rank);
      if (U) U->swap_rows(i, rank);
    }
    int cur = rank;
    bool inserted = false;
    for (int c = 0; c < n && !inserted; ++c) {
      if (H(cur, c) == 0) continue;
      int k = -1;
      for (int b = 0; b < rank; ++b)
        if (pivot_col[b] == c) {
          k = b;
          break;
        }
      if (k < 0) {
        // New pivot: insert keeping basis rows sorted by pivot column.
        int pos = rank;
        while (pos > 0 && pivot_col[pos - 1] > c) --pos;
        for (int b = rank; b > pos; --b) {
          H.swap_rows(b, b - 1);
          if (U) U->swap_rows(b, b - 1);
        }
        pivot_col.insert(pivot_col.begin() + pos, c);
        ++rank;
        if (H(pos, c) < 0) {
          H.negate_row(pos);
          if (U) U->negate_row(pos);
        }
        for (int b = 0; b < pos; ++b) {
          BigInt q = floor_div(H(b, c), H(pos, c));
          if (q != 0) {
            H.add_row(b, pos, -q);
            if (U) U->add_row(b, pos, -q);
          }
        }
        inserted = true;
        break;
      }
      const BigInt a = H(k, c), bb = H(cur, c);
      if (mpz_divisible_p(bb.get_mpz_t(), a.get_mpz_t())) {
        BigInt q = bb / a;
        H.add_row(cur, k, -q);
        if (U) U->add_row(cur, k, -q);
      } else {
        xgcd(a, bb, g, s, t);
        BigInt c1 = -bb / g, d1 = a / g;
        combine_rows(H, k, cur, s, t, c1, d1);
        if (U) combine_rows(*U, k, cur, s, t, c1, d1);
        for (int b = 0; b < k; ++b) {
          BigInt q = floor_div(H(b, c), H(k, c));
          if (q != 0) {
            H.add_row(b, k, -q);
            if (U) U->add_row(b, k, -q);
          }
        }
      }
    }
    if (!inserted) continue;  // row reduced to zero; it stays below the basis
    // Reduce entries above all pivots to the right of the new one.
    for (int b = 0; b < rank; ++b) {
      int c = pivot_col[b];
      for (int a2 = 0; a2 < b; ++a2) {
        BigInt q = floor_div(H(a2, c), H(b, c));
        if (q != 0) {
          H.add_row(a2, b, -q);
          if (U) U->add_row(a2, b, -q);
        }
      }
    }
  }
}

bool is_diagonal_form(const IntMatrix& M) {
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j)
      if (i != j && M(i, j) != 0) return false;
  return true;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& A, bool want_transforms) {
  SmithForm s;
  int m = A.rows(), n = A.cols();
  IntMatrix M = A;
  IntMatrix U = IntMatrix::identity(m), V = IntMatrix::identity(n);
  IntMatrix* pu = want_transforms ? &U : nullptr;
  for (int iter = 0;; ++iter) {
    hermite_in_place(M, pu);
    if (is_diagonal_form(M)) break;
    IntMatrix Mt = M.transpose();
    IntMatrix Vt = IntMatrix::identity(n);
    hermite_in_place(Mt, want_transforms ? &Vt : nullptr);
    M = Mt.transpose();
    if (want_transforms) V = V * Vt.transpose();
    if (is_diagonal_form(M)) break;
  }
  // Divisibility chain on the diagonal via 2x2 unimodular moves.
  int r = std::min(m, n);
  BigInt g, x, y;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      BigInt a = M(i, i), b = M(j, j);
      if (b == 0) continue;
      if (a != 0 && mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) continue;
      if (a == 0) {
        M.swap_rows(i, j);
        M.swap_cols(i, j);
        if (want_transforms) {
          U.swap_rows(i, j);
          V.swap_cols(i, j);
        }
        continue;
      }
      xgcd(a, b, g, x, y);
      // [[x, y], [-b/g, a/g]] diag(a, b) [[1, -y b/g], [1, x a/g]] = diag(g, ab/g)
      BigInt bg = b / g, ag = a / g;
      M(i, i) = g;
      M(j, j) = a * bg;
      if (want_transforms) {
        combine_rows(U, i, j, x, y, -bg, ag);
        // Columns i, j of V: (c_i + c_j, -y bg c_i + x ag c_j)
        for (int k = 0; k < n; ++k) {
          BigInt ci = V(k, i), cj = V(k, j);
          V(k, i) = ci + cj;
          V(k, j) = -y * bg * ci + x * ag * cj;
        }
      }
    }
  for (int i = 0; i < r; ++i)
    if (M(i, i) < 0) {
      M.negate_row(i);
      if (want_transforms) U.negate_row(i);
    }
  s.D = std::move(M);
  if (want_transforms) {
    s.U = std::move(U);
    s.V = std::move(V);
  }
  return s;
}

BigInt determinant(const IntMatrix& A) {
  if (A.rows() != A.cols()) throw InvalidArgument("determinant of non-square matrix");
  int n = A.rows();
  if (n == 0) return 1;
  IntMatrix M = A;
  BigInt prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (M(k, k) == 0) {
      int sw = -1;
      for (int i = k + 1; i < n; ++i)
        if (M(i, k) != 0) {
          sw = i;
          break;
        }
      if (sw < 0) return 0;
      M.swap_rows(k, sw);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        BigInt v = M(i, j) * M(k, k) - M(i, k) * M(k, j);
        mpz_divexact(M(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
    prev = M(k, k);
  }
  return sign * M(n - 1, n - 1);
}

IntMatrix hermite_rows(const IntMatrix& G) {
  IntMatrix H = G;
  hermite_in_place(H, nullptr);
  int r = 0;
  while (r < H.rows() && !is_zero_row(H, r)) ++r;
  IntMatrix out(r, H.cols());
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < H.cols(); ++j) out(i, j) = H(i, j);
  return out;
}

IntMatrix kernel_basis(const IntMatrix& A) {
  SmithForm s = smith_normal_form(A);
  int r = s.rank();
  IntMatrix K(A.cols(), A.cols() - r);
  for (int j = r; j < A.cols(); ++j)
    for (int i = 0; i < A.cols(); ++i) K(i, j - r) = s.V(i, j);
  return K;
}

namespace {

std::optional<IntVec> solve_with(const SmithForm& s, int rank, const IntVec& w) {
  IntVec uw = s.U * w;
  int n = s.V.cols();
  IntVec y(n);
  for (int i = 0; i < static_cast<int>(uw.size()); ++i) {
    if (i < rank) {
      if (!divides_exactly(uw[i], s.D(i, i), y[i])) return std::nullopt;
    } else if (uw[i] != 0) {
      return std::nullopt;
    }
  }
  return s.V * y;
}

}  // namespace

std::optional<IntVec> solve_integral(const IntMatrix& B, const IntVec& w) {
  SmithForm s = smith_normal_form(B);
  return solve_with(s, s.rank(), w);
}

IntMatrix solve_integral_matrix(const IntMatrix& B, const IntMatrix& W) {
  SmithForm s = smith_normal_form(B);
  int r = s.rank();
  IntMatrix X(B.cols(), W.cols());
  for (int j = 0; j < W.cols(); ++j) {
    auto x = solve_with(s, r, W.column(j));
    if (!x) throw NonIntegral("linear system has no integral solution");
    for (int i = 0; i < B.cols(); ++i) X(i, j) = (*x)[i];
  }
  return X;
}

int rank_of(const IntMatrix& A) { return hermite_rows(A).rows(); }

CokernelInvariants cokernel(const IntMatrix& A) {
  SmithForm s = smith_normal_form(A, false);
  CokernelInvariants c;
  int r = s.rank();
  for (int i = 0; i < r; ++i)
    if (s.D(i, i) > 1) c.torsion.push_back(s.D(i, i));
  c.free_rank = A.rows() - r;
  return c;
}

}  // namespace kbg
