#include "gabor/criterion_operator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gabor/error.hpp"

namespace gabor {

RowSpec row_spec(double xi, double lambda, long lambda_index) {
  if (!(xi > 0.0 && xi < 1.0)) throw Error(Errc::DegenerateXi, "xi must lie in (0, 1)");
  const double fl = std::floor(lambda);
  const double fr = lambda - fl;
  RowSpec r;
  r.lambda_index = lambda_index;
  r.lambda = lambda;
  if (fr <= xi) {
    r.b = static_cast<long>(fl);
    r.t = xi - fr;
  } else {
    r.b = static_cast<long>(fl) + 1;
    r.t = xi - fr + 1.0;
  }
  if (r.t < kDegenerateXi || r.t > 1.0 - kDegenerateXi)
    throw Error(Errc::DegenerateXi, "xi collides with the fractional part of lambda = " +
                                        std::to_string(lambda));
  return r;
}

std::vector<RowSpec> rows_for(double xi, const PeriodicPointSet& set, long first, long count) {
  std::vector<RowSpec> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0L)));
  for (long i = first; i < first + count; ++i) out.push_back(row_spec(xi, set.lambda_at(i), i));
  return out;
}

std::vector<Block> detect_blocks(const std::vector<RowSpec>& rows, double xi) {
  std::vector<Block> out;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i)
    if (rows[i + 1].lambda < rows[i].lambda || rows[i + 1].b < rows[i].b)
      throw Error(Errc::StructureViolation, "rows are not sorted by lambda and b");
  std::size_t i = 0;
  while (i < rows.size()) {
    std::size_t j = i;
    while (j + 1 < rows.size() && rows[j + 1].b == rows[i].b) ++j;
    if (j > i) {
      Block blk{rows[i].b, {rows.begin() + static_cast<std::ptrdiff_t>(i),
                            rows.begin() + static_cast<std::ptrdiff_t>(j + 1)}};
      // right-of-xi rows (integer part b-1) first, then left-of-xi rows (integer part b),
      // fractional parts increasing inside each group
      bool in_left = false;
      double prev_frac = -1.0;
      for (const auto& r : blk.rows) {
        const double fl = std::floor(r.lambda);
        const double fr = r.lambda - fl;
        const bool left = fr <= xi;
        if (left && static_cast<long>(fl) != blk.b)
          throw Error(Errc::StructureViolation, "left row with integer part != b");
        if (!left && static_cast<long>(fl) != blk.b - 1)
          throw Error(Errc::StructureViolation, "right row with integer part != b - 1");
        if (left && !in_left) {
          in_left = true;
          prev_frac = -1.0;
        } else if (!left && in_left) {
          throw Error(Errc::StructureViolation, "right row after a left row inside a block");
        }
        if (!(fr > prev_frac)) throw Error(Errc::StructureViolation, "fractional parts not increasing");
        prev_frac = fr;
      }
      out.push_back(std::move(blk));
    }
    i = j + 1;
  }
  return out;
}

int Segment::cluster_rows() const {
  return static_cast<int>(std::count(roles.begin(), roles.end(), RowRole::Cluster));
}

bool Segment::layout_matches_operator() const {
  if (rows.empty()) return false;
  const long b0 = rows.front().b;
  int tail_i = 0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (roles[r] == RowRole::Cluster) {
      if (rows[r].b != b0) return false;
    } else {
      ++tail_i;
      if (rows[r].b != b0 + tail_i) return false;
    }
  }
  return true;
}

std::vector<Segment> build_segments(double xi, const UniversalSet& set, const SymbolFamily& family,
                                    int periods) {
  if (family.M != set.N)
    throw Error(Errc::ConfigError, "set built for N = " + std::to_string(set.N) +
                                       " but the symbol family has M = " + std::to_string(family.M));
  if (periods < 1) throw Error(Errc::InvalidArgument, "periods must be at least 1");
  const int M = family.M;
  const int N1 = set.N1;
  const long n = set.points.count();
  std::vector<Segment> out;
  out.reserve(static_cast<std::size_t>(periods));
  for (long p = 0; p < periods; ++p) {
    Segment seg;
    seg.xi = xi;
    seg.M = M;
    seg.N1 = N1;
    seg.period_index = p;
    seg.rows = rows_for(xi, set.points, p * n, n);
    seg.matrix = ComplexMatrix(static_cast<std::size_t>(M + 1 + N1), static_cast<std::size_t>(M + N1));
    for (int r = 0; r < M + 1 + N1; ++r) {
      const bool cluster = r <= M;
      seg.roles.push_back(cluster ? RowRole::Cluster : RowRole::Tail);
      const int c0 = cluster ? 0 : r - M;
      const double t = seg.rows[static_cast<std::size_t>(r)].t;
      for (int s = 0; s < M; ++s)
        seg.matrix(static_cast<std::size_t>(r), static_cast<std::size_t>(c0 + s)) =
            family.m[static_cast<std::size_t>(s)](t);
    }
    out.push_back(std::move(seg));
  }
  return out;
}

int cluster_split(double xi, int M) {
  const int j = static_cast<int>(std::floor(xi * (M + 1)));
  return std::clamp(j, 0, M);
}

Segment erase_row(const Segment& segment) {
  if (segment.erased_row || segment.cluster_rows() != segment.M + 1)
    throw Error(Errc::InvalidBlock, "block must have M + 1 rows before erasure");
  const int j = cluster_split(segment.xi, segment.M);
  const int k = j != 0 ? j : 1;
  Segment out = segment;
  out.matrix = segment.matrix.without_row(static_cast<std::size_t>(k));
  out.rows.erase(out.rows.begin() + k);
  out.roles.erase(out.roles.begin() + k);
  out.erased_row = k;
  return out;
}

ReorderedBlock reordered_block(const Segment& segment) {
  if (segment.erased_row || segment.cluster_rows() != segment.M + 1)
    throw Error(Errc::InvalidBlock, "reordering needs the full block");
  const int M = segment.M;
  const int j = cluster_split(segment.xi, M);
  ReorderedBlock rb;
  for (int k = j + 1; k <= M; ++k) rb.cluster_order.push_back(k);
  for (int k = 0; k <= j; ++k) rb.cluster_order.push_back(k);
  rb.matrix = ComplexMatrix(static_cast<std::size_t>(M + 1), static_cast<std::size_t>(M));
  for (std::size_t r = 0; r < rb.cluster_order.size(); ++r) {
    const auto k = static_cast<std::size_t>(rb.cluster_order[r]);
    rb.arguments.push_back(segment.rows[k].t);
    for (int s = 0; s < M; ++s) rb.matrix(r, static_cast<std::size_t>(s)) = segment.matrix(k, static_cast<std::size_t>(s));
  }
  return rb;
}

SegmentDeterminant segment_det(const Segment& erased) {
  if (!erased.matrix.square()) throw Error(Errc::InvalidBlock, "segment matrix is not square; erase a row first");
  const auto M = static_cast<std::size_t>(erased.M);
  SegmentDeterminant d;
  d.det = det_lu_quad(erased.matrix);
  d.block_det = det_lu(erased.matrix.block(0, 0, M, M));
  d.tail_product = 1.0;
  for (std::size_t r = M; r < erased.matrix.rows(); ++r) d.tail_product *= erased.matrix(r, r);
  return d;
}

VandermondeResult vandermonde_det(const SimpleWindow& w, double xi, double alpha) {
  const std::size_t N = w.N();
  if (N == 0) throw Error(Errc::InvalidArgument, "empty window");
  if (!(alpha > static_cast<double>(N))) throw Error(Errc::InvalidArgument, "alpha must exceed N");
  if (!(xi > (static_cast<double>(N) - 1.0) / alpha))
    throw Error(Errc::InvalidArgument, "xi must exceed (N - 1)/alpha");
  std::vector<cplx> y(N), u(N);
  for (std::size_t k = 0; k < N; ++k) {
    y[k] = std::exp(-2.0 * kPi * w.terms[k].w / alpha);
    u[k] = std::exp(2.0 * kPi * w.terms[k].w);
  }
  double formula = 1.0;
  for (std::size_t k = 0; k < N; ++k) formula *= std::abs(w.terms[k].a * std::exp(2.0 * kPi * xi * w.terms[k].w));
  for (std::size_t k = 0; k < N; ++k)
    for (std::size_t j = k + 1; j < N; ++j) {
      const double d = std::abs(y[k] - y[j]);
      if (d <= 1e-12) throw Error(Errc::NearDegenerate, "e^{-2 pi w / alpha} values coincide");
      formula *= d * std::abs(u[k] - u[j]);
    }
  const SymbolFamily f = simple_symbol_family(w);
  VandermondeResult r;
  r.B = ComplexMatrix(N, N);
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t l = 0; l < N; ++l) r.B(j, l) = f.m[l](xi - static_cast<double>(j) / alpha);
  r.formula = formula;
  r.direct = det_lu(r.B);
  return r;
}

SimpleWindow fd_window(const GeneralWindow& w, double eps1) {
  if (!(eps1 > 0.0)) throw Error(Errc::InvalidArgument, "eps1 must be positive");
  std::vector<PoleTerm> terms;
  for (const auto& t : w.terms) {
    const int n = t.j - 1;
    const double scale = 1.0 / (factorial(n) * std::pow(eps1, n));
    for (int l = 0; l <= n; ++l) {
      const double sign = (n - l) % 2 ? -1.0 : 1.0;
      terms.push_back({t.a * (sign * binomial(n, l) * scale), t.w - cplx{0.0, l * eps1}, 1});
    }
  }
  try {
    return validate_simple(std::move(terms));
  } catch (const Error& e) {
    if (e.code() == Errc::DuplicatePole) throw Error(Errc::CoalescedPoles, e.what());
    throw;
  }
}

}  // namespace gabor
