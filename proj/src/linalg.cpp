#include "gqc/linalg.hpp"

#include <stdexcept>

namespace gqc {

int exact_rank(const RatMatrix& m) {
  if (m.empty()) return 0;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  // Clear denominators row by row; rank is invariant under row scaling.
  std::vector<std::vector<Int>> a(rows, std::vector<Int>(cols));
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(m[i].size()) != cols)
      throw std::invalid_argument("exact_rank: ragged matrix");
    Int lcm = 1;
    for (const Rat& v : m[i]) lcm = boost::multiprecision::lcm(lcm, denominator(v));
    for (int j = 0; j < cols; ++j)
      a[i][j] = numerator(m[i][j]) * (lcm / denominator(m[i][j]));
  }

  int rank = 0;
  Int prev = 1;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int i = rank; i < rows; ++i) {
      if (a[i][col] != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(a[pivot], a[rank]);
    for (int i = rank + 1; i < rows; ++i) {
      for (int j = col + 1; j < cols; ++j)
        a[i][j] = (a[rank][col] * a[i][j] - a[i][col] * a[rank][j]) / prev;
      a[i][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

std::vector<int> row_basis_indices(const RatMatrix& m) {
  std::vector<int> basis;
  if (m.empty()) return basis;
  const int cols = static_cast<int>(m[0].size());
  // Reduced rows kept with their pivot columns.
  std::vector<std::vector<Rat>> reduced;
  std::vector<int> pivot_col;
  for (int i = 0; i < static_cast<int>(m.size()); ++i) {
    std::vector<Rat> row = m[i];
    for (std::size_t r = 0; r < reduced.size(); ++r) {
      const Rat& f = row[pivot_col[r]];
      if (f == 0) continue;
      Rat factor = f;  // reduced rows are normalized to pivot 1
      for (int j = 0; j < cols; ++j) row[j] -= factor * reduced[r][j];
    }
    int p = -1;
    for (int j = 0; j < cols; ++j) {
      if (row[j] != 0) {
        p = j;
        break;
      }
    }
    if (p < 0) continue;
    Rat inv = row[p];
    for (int j = 0; j < cols; ++j) row[j] /= inv;
    reduced.push_back(std::move(row));
    pivot_col.push_back(p);
    basis.push_back(i);
  }
  return basis;
}

std::vector<Rat> mat_vec(const RatMatrix& m, const std::vector<Rat>& x) {
  std::vector<Rat> out(m.size(), Rat(0));
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != x.size()) throw std::invalid_argument("mat_vec: dimension mismatch");
    for (std::size_t j = 0; j < x.size(); ++j)
      if (m[i][j] != 0 && x[j] != 0) out[i] += m[i][j] * x[j];
  }
  return out;
}

std::vector<Rat> mat_transpose_vec(const RatMatrix& m, const std::vector<Rat>& y) {
  if (m.size() != y.size()) throw std::invalid_argument("mat_transpose_vec: dimension mismatch");
  if (m.empty()) return {};
  std::vector<Rat> out(m[0].size(), Rat(0));
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (y[i] == 0) continue;
    for (std::size_t j = 0; j < out.size(); ++j)
      if (m[i][j] != 0) out[j] += m[i][j] * y[i];
  }
  return out;
}

Rat dot(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return s;
}

std::vector<Rat> solve_linear_system(RatMatrix a, std::vector<Rat> b) {
  const int n = static_cast<int>(a.size());
  if (n == 0) return {};
  for (auto& row : a)
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("solve_linear_system: matrix must be square");
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int i = col; i < n; ++i) {
      if (a[i][col] != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) throw std::invalid_argument("solve_linear_system: singular matrix");
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (int i = col + 1; i < n; ++i) {
      if (a[i][col] == 0) continue;
      Rat f = a[i][col] / a[col][col];
      for (int j = col; j < n; ++j) a[i][j] -= f * a[col][j];
      b[i] -= f * b[col];
    }
  }
  std::vector<Rat> x(n, Rat(0));
  for (int i = n - 1; i >= 0; --i) {
    Rat s = b[i];
    for (int j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

}  // namespace gqc
