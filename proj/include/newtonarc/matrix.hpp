#ifndef NEWTONARC_MATRIX_HPP
#define NEWTONARC_MATRIX_HPP

// Square matrices over any commutative-ring entry type supporting +, -, *
// and one_like().  Determinant and adjugate via cofactor expansion, which is
// exact and fine at the sizes used here (l <= 4).

#include <utility>
#include <vector>

#include "newtonarc/error.hpp"

namespace newtonarc {

template <class T>
class SquareMatrix {
public:
  SquareMatrix() : n_(0) {}
  SquareMatrix(std::size_t n, const T& fill) : n_(n), e_(n * n, fill) {}

  static SquareMatrix from_rows(const std::vector<std::vector<T>>& rows) {
    std::size_t n = rows.size();
    if (n == 0) fail("invalid-input", "matrix must be nonempty");
    SquareMatrix m(n, rows[0][0]);
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != n) fail("invalid-input", "matrix must be square");
      for (std::size_t j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t size() const { return n_; }
  T& at(std::size_t i, std::size_t j) { return e_[i * n_ + j]; }
  const T& at(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }

  SquareMatrix minor_matrix(std::size_t row, std::size_t col) const {
    SquareMatrix m(n_ - 1, e_[0]);
    std::size_t r = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (i == row) continue;
      std::size_t c = 0;
      for (std::size_t j = 0; j < n_; ++j) {
        if (j == col) continue;
        m.at(r, c) = at(i, j);
        ++c;
      }
      ++r;
    }
    return m;
  }

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix m(a.n_, a.e_[0]);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t j = 0; j < a.n_; ++j) {
        T acc = a.at(i, 0) * b.at(0, j);
        for (std::size_t k = 1; k < a.n_; ++k) acc = acc + a.at(i, k) * b.at(k, j);
        m.at(i, j) = acc;
      }
    return m;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    std::vector<T> out;
    out.reserve(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      T acc = at(i, 0) * v[0];
      for (std::size_t k = 1; k < n_; ++k) acc = acc + at(i, k) * v[k];
      out.push_back(acc);
    }
    return out;
  }

private:
  std::size_t n_;
  std::vector<T> e_;
};

template <class T>
T det(const SquareMatrix<T>& m) {
  if (m.size() == 0) fail("invalid-input", "determinant of empty matrix");
  if (m.size() == 1) return m.at(0, 0);
  T acc = m.at(0, 0) * det(m.minor_matrix(0, 0));
  for (std::size_t j = 1; j < m.size(); ++j) {
    T c = m.at(0, j) * det(m.minor_matrix(0, j));
    acc = (j % 2) ? acc - c : acc + c;
  }
  return acc;
}

// adj(M)*M = M*adj(M) = det(M)*I; for 1x1 matrices adj = [1].
template <class T>
std::pair<T, SquareMatrix<T>> det_and_adjugate(const SquareMatrix<T>& m) {
  T d = det(m);
  SquareMatrix<T> adj(m.size(), m.at(0, 0));
  if (m.size() == 1) {
    adj.at(0, 0) = one_like(m.at(0, 0));
    return {d, adj};
  }
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) {
      T c = det(m.minor_matrix(i, j));
      adj.at(j, i) = ((i + j) % 2) ? -c : c;
    }
  return {d, adj};
}

}  // namespace newtonarc

#endif
