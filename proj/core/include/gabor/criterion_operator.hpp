#pragma once

#include <optional>
#include <vector>

#include "gabor/lambda.hpp"
#include "gabor/numerics.hpp"
#include "gabor/symbols.hpp"
#include "gabor/windows.hpp"

namespace gabor {

inline constexpr double kDegenerateXi = 1e-9;

/// One row of L_xi: t + lambda = xi + b, t in (0, 1).
struct RowSpec {
  long lambda_index = 0;
  double lambda = 0.0;
  long b = 0;
  double t = 0.0;
};

/// Throws DegenerateXi when t falls within 1e-9 of 0 or 1.
RowSpec row_spec(double xi, double lambda, long lambda_index = 0);

/// Rows lambda_at(first) .. lambda_at(first + count - 1) of the set.
std::vector<RowSpec> rows_for(double xi, const PeriodicPointSet& set, long first, long count);

/// Rows sharing one column offset b (size >= 2).
struct Block {
  long b = 0;
  std::vector<RowSpec> rows;
};

/// Groups of rows sharing b, each checked against the two-sided
/// fractional-part pattern. Throws StructureViolation otherwise.
std::vector<Block> detect_blocks(const std::vector<RowSpec>& rows, double xi);

enum class RowRole { Cluster, Tail };

/// One period of L_xi: the M+1 cluster rows j/(M+1) and the N1 tail rows,
/// laid out as the (M+1+N1) x (M+N1) model matrix: cluster rows on local
/// columns 0..M-1, tail row i on columns i..i+M-1.
struct Segment {
  double xi = 0.0;
  int M = 0;
  int N1 = 0;
  long period_index = 0;
  std::vector<RowSpec> rows;  // cluster rows first, then tail rows
  std::vector<RowRole> roles;
  ComplexMatrix matrix;
  std::optional<int> erased_row;  // cluster index k of the erased row

  /// True when the rows' real column offsets reproduce the model layout.
  bool layout_matches_operator() const;
  int cluster_rows() const;
};

std::vector<Segment> build_segments(double xi, const UniversalSet& set, const SymbolFamily& family,
                                    int periods);

/// Index j = floor(xi (M + 1)) of the last cluster point left of xi.
int cluster_split(double xi, int M);

/// Removes one cluster row: k = j if j != 0, else k = 1 (first row of B_m).
Segment erase_row(const Segment& segment);

/// Cluster rows reordered k = j+1..M, 0..j with arguments descending by 1/(M+1).
struct ReorderedBlock {
  std::vector<int> cluster_order;
  std::vector<double> arguments;
  ComplexMatrix matrix;
};
ReorderedBlock reordered_block(const Segment& segment);

struct SegmentDeterminant {
  cplx det;
  cplx block_det;
  cplx tail_product;
};

/// det by LU against det(erased block) * prod m_{M-1}(tail t).
SegmentDeterminant segment_det(const Segment& erased);

struct VandermondeResult {
  double formula = 0.0;
  cplx direct;
  ComplexMatrix B;
};

/// B = (m_l(xi - j/alpha)) and the closed-form modulus of its determinant.
VandermondeResult vandermonde_det(const SimpleWindow& w, double xi, double alpha);

/// Replaces each pole of order j by j simple poles at w - i l eps1 (forward difference in w).
SimpleWindow fd_window(const GeneralWindow& w, double eps1);

}  // namespace gabor
