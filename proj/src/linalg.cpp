#include "syzkit/linalg.hpp"

#include <stdexcept>

namespace syzkit {

QMatrix to_rational(const ZMatrix& m) {
  QMatrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (const auto& x : m[i]) out[i].push_back(Rational(x));
  return out;
}

std::vector<std::size_t> rref(QMatrix& m, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && sgn(m[sel][col]) == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    Rational inv = 1 / m[row][col];
    for (std::size_t j = col; j < m[row].size(); ++j) m[row][j] *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || sgn(m[i][col]) == 0) continue;
      Rational f = m[i][col];
      for (std::size_t j = col; j < m[i].size(); ++j) m[i][j] -= f * m[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t rank(QMatrix m) {
  if (m.empty()) return 0;
  return rref(m, m.front().size()).size();
}

std::vector<QVector> nullspace(QMatrix m, std::size_t ncols) {
  auto pivots = rref(m, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<QVector> basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    QVector v(ncols, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QVector> solve(const QMatrix& m, const QVector& b) {
  if (m.size() != b.size()) throw std::invalid_argument("solve: dimension mismatch");
  std::size_t n = m.empty() ? 0 : m.front().size();
  QMatrix aug = m;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  auto pivots = rref(aug, n + 1);
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;
  QVector x(n, Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][n];
  return x;
}

Rational determinant(QMatrix m) {
  std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = c;
    while (sel < n && sgn(m[sel][c]) == 0) ++sel;
    if (sel == n) return 0;
    if (sel != c) {
      std::swap(m[sel], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(m[i][c]) == 0) continue;
      Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

namespace {

void column_op(ZMatrix& m, std::size_t a, std::size_t b, const Integer& p, const Integer& q, const Integer& r,
               const Integer& s) {
  // (col_a, col_b) <- (p col_a + q col_b, r col_a + s col_b)
  for (auto& row : m) {
    Integer x = row[a], y = row[b];
    row[a] = p * x + q * y;
    row[b] = r * x + s * y;
  }
}

}  // namespace

ColumnHermite column_hermite(const ZMatrix& m) {
  std::size_t rows = m.size();
  std::size_t cols = rows ? m.front().size() : 0;
  ColumnHermite out;
  out.H = m;
  out.U.assign(cols, ZVector(cols, Integer(0)));
  for (std::size_t i = 0; i < cols; ++i) out.U[i][i] = 1;

  std::size_t c = 0;
  for (std::size_t r = 0; r < rows && c < cols; ++r) {
    for (std::size_t j = c + 1; j < cols; ++j) {
      if (sgn(out.H[r][j]) == 0) continue;
      Integer a = out.H[r][c], b = out.H[r][j];
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      Integer ag = a / g, bg = b / g;
      // [s -bg; t ag] has determinant s*ag + t*bg = 1.
      column_op(out.H, c, j, s, t, -bg, ag);
      column_op(out.U, c, j, s, t, -bg, ag);
    }
    if (sgn(out.H[r][c]) == 0) continue;
    if (sgn(out.H[r][c]) < 0) {
      for (auto& row : out.H) row[c] = -row[c];
      for (auto& row : out.U) row[c] = -row[c];
    }
    out.pivot_rows.push_back(r);
    ++c;
  }
  return out;
}

std::optional<ZVector> solve_integer(const ZMatrix& m, const ZVector& b) {
  if (m.size() != b.size()) throw std::invalid_argument("solve_integer: dimension mismatch");
  std::size_t cols = m.empty() ? 0 : m.front().size();
  auto ch = column_hermite(m);
  ZVector y(cols, Integer(0));
  std::size_t npiv = ch.pivot_rows.size();
  for (std::size_t j = 0; j < npiv; ++j) {
    std::size_t r = ch.pivot_rows[j];
    Integer rhs = b[r];
    for (std::size_t k = 0; k < j; ++k) rhs -= ch.H[r][k] * y[k];
    if (!mpz_divisible_p(rhs.get_mpz_t(), ch.H[r][j].get_mpz_t())) return std::nullopt;
    y[j] = rhs / ch.H[r][j];
  }
  for (std::size_t r = 0; r < m.size(); ++r) {
    Integer lhs = 0;
    for (std::size_t k = 0; k < npiv; ++k) lhs += ch.H[r][k] * y[k];
    if (lhs != b[r]) return std::nullopt;
  }
  ZVector x(cols, Integer(0));
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t k = 0; k < cols; ++k) x[i] += ch.U[i][k] * y[k];
  return x;
}

std::vector<ZVector> integer_kernel(const ZMatrix& m) {
  std::size_t cols = m.empty() ? 0 : m.front().size();
  auto ch = column_hermite(m);
  std::vector<ZVector> basis;
  for (std::size_t j = ch.pivot_rows.size(); j < cols; ++j) {
    ZVector v(cols);
    for (std::size_t i = 0; i < cols; ++i) v[i] = ch.U[i][j];
    basis.push_back(std::move(v));
  }
  return basis;
}

Integer gcd_of(const ZVector& v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

bool is_primitive(const ZVector& v) { return gcd_of(v) == 1; }

}  // namespace syzkit
