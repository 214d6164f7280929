#include "kcompound/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "kcompound/combinat.hpp"
#include "kcompound/compound.hpp"
#include "kcompound/errors.hpp"
#include "kcompound/linalg.hpp"

namespace kcompound {

namespace {

void require_square(const DenseMatrix& a, const char* op) {
  if (a.empty() || !a.is_square()) throw DomainError(std::string(op) + ": matrix must be square");
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

GridInfo describe_samples(const std::vector<MatrixSample>& samples) {
  GridInfo g;
  g.count = samples.size();
  const bool state = !samples.front().x.empty();
  if (state) {
    g.kind = "state";
    g.description = std::to_string(samples.size()) + " state-space points";
    return g;
  }
  if (samples.size() == 1) {
    g.kind = "single";
    g.description = "1 sample at t=" + fmt(samples.front().t);
    return g;
  }
  double lo = samples.front().t, hi = samples.front().t;
  for (const auto& s : samples) {
    lo = std::min(lo, s.t);
    hi = std::max(hi, s.t);
  }
  g.kind = "time";
  g.description = std::to_string(samples.size()) + " time samples in [" + fmt(lo) + ", " + fmt(hi) + "]";
  return g;
}

void validate_samples(const std::vector<MatrixSample>& samples, const char* op) {
  if (samples.empty()) throw DomainError(std::string(op) + ": no samples");
  const std::size_t n = samples.front().matrix.rows();
  for (const auto& s : samples) {
    require_square(s.matrix, op);
    if (s.matrix.rows() != n) throw DomainError(std::string(op) + ": samples have different dimensions");
  }
}

MatrixEntry first_violation(const DenseMatrix& a, double tol) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j && a(i, j) < -tol) return {i, j, a(i, j)};
  return {};
}

Witness witness_at(const std::vector<MatrixSample>& samples, std::size_t i) {
  Witness w;
  w.sample_index = i;
  w.t = samples[i].t;
  w.x = samples[i].x;
  return w;
}

}  // namespace

double default_metzler_tol(const DenseMatrix& a) { return 1e-12 * a.max_abs(); }

MetzlerResult is_metzler(const DenseMatrix& a, double tol) {
  require_square(a, "is_metzler");
  if (tol < 0.0) tol = default_metzler_tol(a);
  MetzlerResult res;
  const std::size_t n = a.rows();
  if (n == 1) return res;
  res.min_offdiag = std::numeric_limits<double>::infinity();
  MatrixEntry worst{0, 0, std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (a(i, j) < worst.value) worst = {i, j, a(i, j)};
    }
  res.min_offdiag = worst.value;
  if (worst.value < -tol) {
    res.metzler = false;
    res.witness = worst;
  }
  return res;
}

bool is_irreducible(const DenseMatrix& a) {
  require_square(a, "is_irreducible");
  const std::size_t n = a.rows();
  if (n == 1) return true;
  // Strongly connected iff node 0 reaches every node in the graph and in its reverse.
  auto reaches_all = [&](bool reverse) {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t visited = 1;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < n; ++v) {
        if (seen[v] || v == u) continue;
        const double w = reverse ? a(v, u) : a(u, v);
        if (w != 0.0) {
          seen[v] = true;
          ++visited;
          stack.push_back(v);
        }
      }
    }
    return visited == n;
  };
  return reaches_all(false) && reaches_all(true);
}

std::string_view to_string(PatternCase c) noexcept {
  switch (c) {
    case PatternCase::PlainMetzler:
      return "plain-metzler";
    case PatternCase::Alternating:
      return "alternating";
    case PatternCase::OddBand:
      return "odd-band";
    case PatternCase::EvenBand:
      return "even-band";
  }
  return "?";
}

PatternVerdict metzler_compound_pattern(const DenseMatrix& a, std::size_t k) {
  require_square(a, "metzler_compound_pattern");
  const std::size_t n = a.rows();
  if (n < 3) throw DomainError("metzler_compound_pattern: needs n >= 3");
  if (k < 1 || k > n - 1) throw DomainError("metzler_compound_pattern: k must lie in 1..n-1");

  if (k == 1) return {is_metzler(a, 0.0).metzler, PatternCase::PlainMetzler};

  if (k == n - 1) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const bool odd = ((i > j ? i - j : j - i) % 2) == 1;
        if (odd ? a(i, j) < 0.0 : a(i, j) > 0.0) return {false, PatternCase::Alternating};
      }
    return {true, PatternCase::Alternating};
  }

  const bool odd_k = k % 2 == 1;
  const PatternCase pc = odd_k ? PatternCase::OddBand : PatternCase::EvenBand;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const std::size_t d = i > j ? i - j : j - i;
      const double v = a(i, j);
      bool ok = true;
      if (d == 1) {
        ok = v >= 0.0;
      } else if (d == n - 1) {
        ok = odd_k ? v >= 0.0 : v <= 0.0;
      } else {
        ok = v == 0.0;
      }
      if (!ok) return {false, pc};
    }
  return {true, pc};
}

bool is_jacobi(const DenseMatrix& a, bool strict_offdiag) {
  require_square(a, "is_jacobi");
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t d = i > j ? i - j : j - i;
      if (d > 1 && a(i, j) != 0.0) return false;
      if (d == 1 && (strict_offdiag ? !(a(i, j) > 0.0) : a(i, j) < 0.0)) return false;
    }
  return true;
}

std::string_view to_string(Property p) noexcept {
  switch (p) {
    case Property::KContracting:
      return "k-contracting";
    case Property::AlphaContracting:
      return "alpha-contracting";
    case Property::KPositive:
      return "k-positive";
    case Property::StronglyKPositive:
      return "strongly-k-positive";
    case Property::KCooperative:
      return "k-cooperative";
    case Property::StronglyKCooperative:
      return "strongly-k-cooperative";
    case Property::KDiagStable:
      return "k-diag-stable";
  }
  return "?";
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Certified:
      return "Certified";
    case Verdict::Refuted:
      return "Refuted";
    case Verdict::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

std::vector<MatrixSample> sample_ltv(const std::function<DenseMatrix(double)>& a, std::span<const double> times) {
  std::vector<MatrixSample> out;
  out.reserve(times.size());
  for (double t : times) out.push_back({a(t), t, {}});
  return out;
}

std::vector<MatrixSample> sample_field(const std::function<DenseMatrix(std::span<const double>)>& jacobian,
                                       const std::vector<Vector>& points) {
  std::vector<MatrixSample> out;
  out.reserve(points.size());
  for (const auto& x : points) out.push_back({jacobian(x), 0.0, x});
  return out;
}

CertReport certify_k_positive(const std::vector<MatrixSample>& samples, std::size_t k, bool strong,
                              const CertOptions& options) {
  validate_samples(samples, "certify_k_positive");
  check_k_range(k, samples.front().matrix.rows());

  CertReport rep;
  rep.property = strong ? Property::StronglyKPositive : Property::KPositive;
  rep.k_or_alpha = static_cast<double>(k);
  rep.grid = describe_samples(samples);

  double margin = std::numeric_limits<double>::infinity();
  std::optional<std::size_t> first_reducible;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const DenseMatrix ak = add_compound(samples[i].matrix, k).matrix;
    const double tol = options.metzler_tol >= 0.0 ? options.metzler_tol : default_metzler_tol(ak);
    const MetzlerResult m = is_metzler(ak, tol);
    if (ak.rows() > 1) margin = std::min(margin, m.min_offdiag);
    if (!m.metzler && !rep.witness) {
      Witness w = witness_at(samples, i);
      const MatrixEntry e = first_violation(ak, tol);
      w.row = e.row;
      w.col = e.col;
      w.value = e.value;
      w.detail = "A^[" + std::to_string(k) + "] has a negative off-diagonal entry";
      rep.witness = std::move(w);
    }
    if (strong) {
      if (is_irreducible(ak)) {
        ++rep.irreducible_samples;
      } else if (!first_reducible) {
        first_reducible = i;
      }
    }
  }
  rep.margin = std::isfinite(margin) ? margin : 0.0;

  if (rep.witness) {
    rep.verdict = Verdict::Refuted;
    rep.rationale = "A^[k] is not Metzler at the witness sample";
    return rep;
  }
  if (strong) {
    const double need = (1.0 - options.reducible_fraction) * static_cast<double>(samples.size());
    if (static_cast<double>(rep.irreducible_samples) < need) {
      Witness w = witness_at(samples, *first_reducible);
      w.detail = "A^[" + std::to_string(k) + "] is reducible";
      rep.witness = std::move(w);
      rep.verdict = Verdict::Refuted;
      rep.rationale = "A^[k] is Metzler at every sample but reducible at more than the tolerated fraction " +
                      fmt(options.reducible_fraction) + " of samples";
      return rep;
    }
  }
  rep.verdict = Verdict::Certified;
  rep.rationale = strong ? "A^[k] is Metzler at every sample and irreducible at all but a tolerated fraction; "
                           "sample-based, not a proof over the continuum"
                         : "A^[k] is Metzler at every sample; sample-based, not a proof over the continuum";
  return rep;
}

CertReport certify_k_contracting(const std::vector<MatrixSample>& samples, double k_or_alpha, MeasureKind kind,
                                 const CertOptions& options) {
  validate_samples(samples, "certify_k_contracting");
  const std::size_t n = samples.front().matrix.rows();
  const AlphaSplit split = split_alpha(k_or_alpha, n);
  const bool integral = split.s == 0.0;

  CertReport rep;
  rep.property = integral ? Property::KContracting : Property::AlphaContracting;
  rep.k_or_alpha = k_or_alpha;
  rep.measure_kind = kind;
  rep.grid = describe_samples(samples);

  double worst = -std::numeric_limits<double>::infinity();
  std::size_t worst_index = 0;
  double scale = 1.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const DenseMatrix& a = samples[i].matrix;
    const double mu = integral ? compound_measure(a, split.k, kind) : measure(alpha_add_compound(a, k_or_alpha), kind);
    scale = std::max(scale, a.max_abs());
    if (mu > worst) {
      worst = mu;
      worst_index = i;
    }
  }
  rep.margin = -worst;

  const std::string label = integral ? "mu(A^[" + std::to_string(split.k) + "])" : "mu(A^[" + fmt(k_or_alpha) + "])";
  if (std::abs(worst) <= options.contraction_band * scale) {
    rep.verdict = Verdict::Inconclusive;
    Witness w = witness_at(samples, worst_index);
    w.value = worst;
    w.detail = label + " is within rounding of zero";
    rep.witness = std::move(w);
    rep.rationale = "largest measure over the samples cannot be separated from zero";
    return rep;
  }
  if (worst < 0.0) {
    rep.verdict = Verdict::Certified;
    rep.rationale = label + " <= -eta at every sample; sample-based, not a proof over the continuum";
    if (!integral) {
      rep.rationale += "; alpha-contraction implies every compact strongly invariant set has Hausdorff dimension < " +
                       fmt(k_or_alpha);
    }
    return rep;
  }
  rep.verdict = Verdict::Refuted;
  Witness w = witness_at(samples, worst_index);
  w.value = worst;
  w.detail = label + " is non-negative";
  rep.witness = std::move(w);
  rep.rationale = "the measure is non-negative at the witness sample";
  return rep;
}

CertReport certify_k_cooperative(const std::function<DenseMatrix(std::span<const double>)>& jacobian,
                                 const std::vector<Vector>& grid, std::size_t k, bool strong,
                                 const CertOptions& options) {
  if (grid.empty()) throw DomainError("certify_k_cooperative: empty grid");
  CertReport rep = certify_k_positive(sample_field(jacobian, grid), k, strong, options);
  rep.property = strong ? Property::StronglyKCooperative : Property::KCooperative;
  if (rep.verdict == Verdict::Certified) {
    rep.rationale =
        "J(x)^[k] is Metzler" + std::string(strong ? " and irreducible" : "") +
        " at every grid point; on a convex state space the segment-averaged Jacobian of the variational "
        "equation is a convex combination of such matrices and inherits the sign pattern (sample-based)";
  }
  return rep;
}

DiagStabilityResult k_diag_stability_check(const DenseMatrix& a, std::size_t k, std::span<const double> d) {
  require_square(a, "k_diag_stability_check");
  const DenseMatrix ak = add_compound(a, k).matrix;
  if (d.size() != ak.rows()) {
    throw DomainError("k_diag_stability_check: D must have " + std::to_string(ak.rows()) + " diagonal entries, got " +
                      std::to_string(d.size()));
  }
  for (double v : d)
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("k_diag_stability_check: D must be positive");
  const DenseMatrix dm = DenseMatrix::diagonal(d);
  const DenseMatrix s = dm * ak + ak.transpose() * dm;
  const double top = symmetric_eigenvalues(s).front();
  return {top < 0.0, top};
}

DiagStabilityResult k_diag_stability_check(const DenseMatrix& a, std::size_t k, const DenseMatrix& d) {
  require_square(d, "k_diag_stability_check");
  Vector diag(d.rows());
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j) {
      if (i == j) {
        diag[i] = d(i, i);
      } else if (d(i, j) != 0.0) {
        throw DomainError("k_diag_stability_check: D is not diagonal");
      }
    }
  return k_diag_stability_check(a, k, diag);
}

CertReport certify_k_diag_stable(const DenseMatrix& a, std::size_t k, std::span<const double> d) {
  const DiagStabilityResult r = k_diag_stability_check(a, k, d);
  CertReport rep;
  rep.property = Property::KDiagStable;
  rep.k_or_alpha = static_cast<double>(k);
  rep.margin = -r.max_eigenvalue;
  rep.grid = {"single", 1, "constant matrix, supplied D"};
  if (r.negative_definite) {
    rep.verdict = Verdict::Certified;
    rep.rationale = "D A^[k] + (A^[k])^T D is negative definite for the supplied D";
  } else {
    rep.verdict = Verdict::Refuted;
    Witness w;
    w.value = r.max_eigenvalue;
    w.detail = "D A^[k] + (A^[k])^T D has a non-negative eigenvalue";
    rep.witness = std::move(w);
    rep.rationale = "the supplied D does not certify k-diagonal stability (other D are not searched)";
  }
  return rep;
}

}  // namespace kcompound
