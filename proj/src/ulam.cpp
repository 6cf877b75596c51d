#include "extremal/ulam.hpp"

#include "extremal/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>

namespace extremal {

std::vector<double> SparseMatrix::row_sums() const {
  std::vector<double> sums(size, 0.0);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t k = row_start[i]; k < row_start[i + 1]; ++k) sums[i] += value[k];
  return sums;
}

std::vector<double> SparseMatrix::left_multiply(const std::vector<double>& v) const {
  std::vector<double> out(size, 0.0);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t k = row_start[i]; k < row_start[i + 1]; ++k) out[column[k]] += v[i] * value[k];
  return out;
}

std::vector<double> SparseMatrix::right_multiply(const std::vector<double>& v) const {
  std::vector<double> out(size, 0.0);
  for (std::size_t i = 0; i < size; ++i) {
    double s = 0.0;
    for (std::size_t k = row_start[i]; k < row_start[i + 1]; ++k) s += value[k] * v[column[k]];
    out[i] = s;
  }
  return out;
}

double SparseMatrix::at(std::size_t i, std::size_t j) const {
  for (std::size_t k = row_start.at(i); k < row_start.at(i + 1); ++k)
    if (column[k] == j) return value[k];
  return 0.0;
}

SparseMatrix ulam_matrix(const FullBranchMap& map, std::size_t bins) {
  if (bins < 1) throw PreconditionError("Ulam matrix needs at least one bin");
  const Rational nb(static_cast<long>(bins));
  std::vector<std::map<std::size_t, double>> rows(bins);

  for (const auto& br : map.branches()) {
    // Bins meeting [lo, hi).
    Rational first_r = floor(br.lo * nb);
    std::size_t first = static_cast<std::size_t>(first_r.get_d());
    for (std::size_t i = first; i < bins; ++i) {
      Rational bin_lo = Rational(static_cast<long>(i)) / nb;
      Rational bin_hi = Rational(static_cast<long>(i + 1)) / nb;
      if (bin_lo >= br.hi) break;
      Rational x0 = std::max(bin_lo, br.lo), x1 = std::min(bin_hi, br.hi);
      if (!(x0 < x1)) continue;

      if (br.affine()) {
        Rational y0 = br.increasing ? Rational((x0 - br.lo) / br.width) : Rational((br.hi - x1) / br.width);
        Rational y1 = br.increasing ? Rational((x1 - br.lo) / br.width) : Rational((br.hi - x0) / br.width);
        std::size_t j0 = static_cast<std::size_t>(floor(y0 * nb).get_d());
        for (std::size_t j = j0; j < bins; ++j) {
          Rational c_lo = Rational(static_cast<long>(j)) / nb;
          if (c_lo >= y1) break;
          Rational c_hi = Rational(static_cast<long>(j + 1)) / nb;
          Rational lo = std::max(c_lo, y0), hi = std::min(c_hi, y1);
          if (!(lo < hi)) continue;
          Rational frac = (hi - lo) * br.width * nb;
          rows[i][j] += frac.get_d();
        }
      } else {
        double xa = x0.get_d(), xb = x1.get_d();
        double ya = br.value(xa), yb = br.value(xb);
        if (yb < ya) std::swap(ya, yb);
        ya = std::clamp(ya, 0.0, 1.0);
        yb = std::clamp(yb, 0.0, 1.0);
        double nd = static_cast<double>(bins);
        std::size_t j0 = std::min(bins - 1, static_cast<std::size_t>(std::floor(ya * nd)));
        for (std::size_t j = j0; j < bins; ++j) {
          double c_lo = static_cast<double>(j) / nd;
          if (c_lo >= yb) break;
          double c_hi = static_cast<double>(j + 1) / nd;
          double lo = std::max(c_lo, ya), hi = std::min(c_hi, yb);
          if (!(lo < hi)) continue;
          double u = map.inverse(static_cast<std::size_t>(&br - &map.branches()[0]), lo);
          double v = map.inverse(static_cast<std::size_t>(&br - &map.branches()[0]), hi);
          rows[i][j] += std::abs(v - u) * nd;
        }
      }
    }
  }

  SparseMatrix m;
  m.size = bins;
  m.row_start.push_back(0);
  for (const auto& row : rows) {
    double total = 0.0;
    for (const auto& [j, v] : row) total += v;
    // Smooth rows can drift from 1 through numerical inversion.
    for (const auto& [j, v] : row) {
      m.column.push_back(j);
      m.value.push_back(map.is_affine() ? v : v / total);
    }
    m.row_start.push_back(m.column.size());
  }
  return m;
}

void write_ulam_csv(std::ostream& out, const SparseMatrix& matrix) {
  out << "row,col,value\n" << std::setprecision(17);
  for (std::size_t i = 0; i < matrix.size; ++i)
    for (std::size_t k = matrix.row_start[i]; k < matrix.row_start[i + 1]; ++k)
      out << i << ',' << matrix.column[k] << ',' << matrix.value[k] << '\n';
}

SpectralResult restricted_spectral_radius(const SparseMatrix& matrix, const std::vector<bool>& keep,
                                          double tolerance, std::size_t max_iterations) {
  if (keep.size() != matrix.size) throw PreconditionError("state mask has the wrong size");
  SpectralResult result;
  std::vector<double> v(matrix.size, 0.0);
  std::size_t kept = 0;
  for (std::size_t i = 0; i < matrix.size; ++i)
    if (keep[i]) {
      v[i] = 1.0;
      ++kept;
    }
  if (kept == 0) return result;
  double norm = static_cast<double>(kept);
  double previous = -1.0;

  for (std::size_t it = 1; it <= max_iterations; ++it) {
    std::vector<double> w = matrix.left_multiply(v);
    double total = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (!keep[i]) w[i] = 0.0;
      total += w[i];
    }
    double estimate = total / norm;
    result.iterations = it;
    result.radius = estimate;
    if (total == 0.0) {
      result.converged = true;
      return result;
    }
    for (auto& x : w) x /= total;
    v = std::move(w);
    norm = 1.0;
    if (previous > 0.0 && std::abs(estimate - previous) <= tolerance * estimate) {
      result.converged = true;
      return result;
    }
    previous = estimate;
  }
  return result;
}

} // namespace extremal
