#ifndef EXTREMAL_ULAM_HPP
#define EXTREMAL_ULAM_HPP

#include "extremal/full_branch_map.hpp"

#include <cstddef>
#include <ostream>
#include <vector>

namespace extremal {

/// Row-compressed sparse matrix.
struct SparseMatrix {
  std::size_t size = 0;
  std::vector<std::size_t> row_start;  // size + 1 entries
  std::vector<std::size_t> column;
  std::vector<double> value;

  std::vector<double> row_sums() const;
  /// v ↦ vP
  std::vector<double> left_multiply(const std::vector<double>& v) const;
  /// v ↦ Pv
  std::vector<double> right_multiply(const std::vector<double>& v) const;
  double at(std::size_t i, std::size_t j) const;
};

/// Ulam discretization on `bins` equal bins: entry (i,j) is the fraction of
/// bin i mapped into bin j. Exact rational overlaps for affine branches,
/// numerical inversion for smooth ones.
SparseMatrix ulam_matrix(const FullBranchMap& map, std::size_t bins);

/// "row,col,value" triplets with a header line.
void write_ulam_csv(std::ostream& out, const SparseMatrix& matrix);

struct SpectralResult {
  double radius = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Spectral radius of P restricted to the states with keep[i] true, by power
/// iteration until successive estimates agree to `tolerance` (relative).
SpectralResult restricted_spectral_radius(const SparseMatrix& matrix, const std::vector<bool>& keep,
                                          double tolerance = 1e-12, std::size_t max_iterations = 100000);

} // namespace extremal

#endif
