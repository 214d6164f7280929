#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kcompound/dense_matrix.hpp"
#include "kcompound/measures.hpp"

namespace kcompound {

/// An off-diagonal location (0-based) and its value.
struct MatrixEntry {
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;
};

struct MetzlerResult {
  bool metzler = true;
  /// Most negative off-diagonal entry when the test fails.
  std::optional<MatrixEntry> witness;
  /// Smallest off-diagonal entry (+inf for 1x1).
  double min_offdiag = 0.0;
};

/// Default Metzler tolerance: 1e-12 * max |a_ij|.
double default_metzler_tol(const DenseMatrix& a);

/// Every off-diagonal entry >= -tol. A negative tol selects default_metzler_tol.
MetzlerResult is_metzler(const DenseMatrix& a, double tol = -1.0);

/// Strong connectivity of the digraph with an edge i -> j whenever a_ij != 0
/// (i != j). A 1x1 matrix is irreducible.
bool is_irreducible(const DenseMatrix& a);

enum class PatternCase {
  PlainMetzler,  ///< k = 1
  Alternating,   ///< k = n-1: a_ij >= 0 for i-j odd, <= 0 for i-j even (i != j)
  OddBand,       ///< odd 1 < k < n-1: corners >= 0, neighbours >= 0, band zero
  EvenBand,      ///< even 1 < k < n-1: corners <= 0, neighbours >= 0, band zero
};

std::string_view to_string(PatternCase c) noexcept;

struct PatternVerdict {
  bool metzler = false;
  PatternCase pattern = PatternCase::PlainMetzler;
};

/// Decides whether A^[k] is Metzler from the sign pattern of A alone.
/// Requires n >= 3 and 1 <= k <= n-1.
PatternVerdict metzler_compound_pattern(const DenseMatrix& a, std::size_t k);

/// Tridiagonal with super/sub-diagonal entries > 0 (strict) or >= 0.
bool is_jacobi(const DenseMatrix& a, bool strict_offdiag = true);

enum class Property {
  KContracting,
  AlphaContracting,
  KPositive,
  StronglyKPositive,
  KCooperative,
  StronglyKCooperative,
  KDiagStable,
};

enum class Verdict { Certified, Refuted, Inconclusive };

std::string_view to_string(Property p) noexcept;
std::string_view to_string(Verdict v) noexcept;

/// One matrix sample: A(t) for an LTV, or J(x) at a state-space point.
struct MatrixSample {
  DenseMatrix matrix;
  double t = 0.0;
  Vector x;  ///< empty for time samples
};

struct Witness {
  std::size_t sample_index = 0;
  double t = 0.0;
  Vector x;
  std::optional<std::size_t> row;
  std::optional<std::size_t> col;
  double value = 0.0;
  std::string detail;
};

struct GridInfo {
  std::string kind;  ///< "time", "state" or "single"
  std::size_t count = 0;
  std::string description;
};

struct CertReport {
  Property property = Property::KContracting;
  Verdict verdict = Verdict::Inconclusive;
  double k_or_alpha = 1.0;
  std::optional<MeasureKind> measure_kind;
  /// eta for contraction; min off-diagonal entry of A^[k] over the samples for
  /// the Metzler-based properties; -lambda_max for diagonal stability.
  double margin = 0.0;
  std::optional<Witness> witness;
  GridInfo grid;
  std::string rationale;
  /// Samples at which A^[k] was irreducible (strong variants only).
  std::size_t irreducible_samples = 0;
};

struct CertOptions {
  /// Metzler tolerance applied to A^[k]; negative selects 1e-12 * max|entry| per sample.
  double metzler_tol = -1.0;
  /// Strong variants tolerate reducibility at up to this fraction of samples.
  double reducible_fraction = 0.01;
  /// |max measure| at or below this (times max(1, max|entry|)) is Inconclusive.
  double contraction_band = 1e-12;
};

/// Time samples of t -> A(t). Grid metadata is derived from the sample times.
std::vector<MatrixSample> sample_ltv(const std::function<DenseMatrix(double)>& a, std::span<const double> times);

/// Jacobian samples J(x) at the given points.
std::vector<MatrixSample> sample_field(const std::function<DenseMatrix(std::span<const double>)>& jacobian,
                                       const std::vector<Vector>& points);

/// A^[k](t) Metzler at every sample (k-positive); the strong variant also needs
/// A^[k] irreducible at all but a fraction options.reducible_fraction of them.
/// The witness is the first violating sample and, within it, the first
/// negative off-diagonal entry in row-major order.
CertReport certify_k_positive(const std::vector<MatrixSample>& samples, std::size_t k, bool strong,
                              const CertOptions& options = {});

/// eta = -max over samples of mu(A^[k]) (integral k) or mu(A^[alpha]).
/// Certified iff eta > 0.
CertReport certify_k_contracting(const std::vector<MatrixSample>& samples, double k_or_alpha, MeasureKind kind,
                                 const CertOptions& options = {});

/// Sample-wise sufficient condition for [strong] k-cooperativity: J(x)^[k]
/// Metzler (and irreducible) at every grid point of a convex state space.
CertReport certify_k_cooperative(const std::function<DenseMatrix(std::span<const double>)>& jacobian,
                                 const std::vector<Vector>& grid, std::size_t k, bool strong,
                                 const CertOptions& options = {});

struct DiagStabilityResult {
  bool negative_definite = false;
  double max_eigenvalue = 0.0;
};

/// Largest eigenvalue of D A^[k] + (A^[k])^T D for the supplied positive
/// diagonal D (given by its diagonal, length C(n,k)).
DiagStabilityResult k_diag_stability_check(const DenseMatrix& a, std::size_t k, std::span<const double> d);

/// Same, with D given as a matrix; it must be diagonal with positive diagonal.
DiagStabilityResult k_diag_stability_check(const DenseMatrix& a, std::size_t k, const DenseMatrix& d);

CertReport certify_k_diag_stable(const DenseMatrix& a, std::size_t k, std::span<const double> d);

}  // namespace kcompound
