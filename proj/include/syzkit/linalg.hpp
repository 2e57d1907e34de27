#pragma once

// Exact linear algebra over Q and Z for desk-scale systems.

#include <optional>
#include <vector>

#include "syzkit/rational.hpp"

namespace syzkit {

using QVector = std::vector<Rational>;
using QMatrix = std::vector<QVector>;  // row-major
using ZVector = std::vector<Integer>;
using ZMatrix = std::vector<ZVector>;

QMatrix to_rational(const ZMatrix& m);

/// In-place reduced row echelon form; returns the pivot columns.
std::vector<std::size_t> rref(QMatrix& m, std::size_t ncols);
std::size_t rank(QMatrix m);
/// Basis of {x : m x = 0}.
std::vector<QVector> nullspace(QMatrix m, std::size_t ncols);
/// Some solution of m x = b, or nullopt when inconsistent.
std::optional<QVector> solve(const QMatrix& m, const QVector& b);
Rational determinant(QMatrix m);

/// Column Hermite form: m * U = H with U unimodular and H in column echelon form.
struct ColumnHermite {
  ZMatrix H;
  ZMatrix U;
  std::vector<std::size_t> pivot_rows;  // pivot row of column j, for j < pivot_rows.size()
};
ColumnHermite column_hermite(const ZMatrix& m);

/// Integer solution of m x = b if one exists.
std::optional<ZVector> solve_integer(const ZMatrix& m, const ZVector& b);
/// Z-basis of the integer kernel {x in Z^n : m x = 0}.
std::vector<ZVector> integer_kernel(const ZMatrix& m);

Integer gcd_of(const ZVector& v);
bool is_primitive(const ZVector& v);

}  // namespace syzkit
