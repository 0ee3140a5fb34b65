#include "filtspec/compression.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "filtspec/errors.hpp"

namespace filtspec {

std::size_t Filtration::dim(int n) const { return basis_range(n).size(); }

IndexRange Filtration::basis_range(int n) const {
  if (n < 1) throw DomainError("filtration step must be at least 1");
  if (mode_ == IndexMode::Unilateral) return {1, n};
  return {-static_cast<Index>(n), n};
}

DenseMatrix CompressedMatrix::to_dense() const {
  if (const auto* dense = std::get_if<DenseMatrix>(&storage)) return *dense;
  if (const auto* band = std::get_if<SymmetricBand>(&storage)) return band->to_dense();
  const auto& t = std::get<TridiagonalForm>(storage);
  DenseMatrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = t.diagonal[i];
  for (std::size_t i = 0; i + 1 < dim; ++i) m(i, i + 1) = m(i + 1, i) = t.off_diagonal[i];
  return m;
}

EigenvalueList CompressedMatrix::eigenvalues() const {
  if (const auto* t = std::get_if<TridiagonalForm>(&storage)) return tridiagonal_eigenvalues(*t);
  if (const auto* band = std::get_if<SymmetricBand>(&storage)) return tridiagonal_eigenvalues(band_tridiagonalize(*band));
  return symmetric_eigenvalues(std::get<DenseMatrix>(storage));
}

namespace {

void require_mode(const OperatorSpec& spec, const Filtration& filt) {
  if (spec.index_mode() != filt.mode())
    throw ConfigError(std::string("operator is ") + to_string(spec.index_mode()) + " but filtration is " +
                      to_string(filt.mode()));
}

bool nearly_equal(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}); }

// Restriction of a range to indices valid for the operator's basis.
IndexRange clip(const OperatorSpec& spec, IndexRange r) {
  if (spec.index_mode() == IndexMode::Unilateral) r.first = std::max<Index>(r.first, 1);
  return r;
}

}  // namespace

DenseMatrix dense_block(const OperatorSpec& spec, IndexRange rows, IndexRange cols) {
  DenseMatrix m(rows.size(), cols.size());
  for (Index j = cols.first; j <= cols.last; ++j) {
    const auto c = static_cast<std::size_t>(j - cols.first);
    for (const auto& [i, v] : spec.column(j))
      if (rows.contains(i)) m(static_cast<std::size_t>(i - rows.first), c) = v;
  }
  return m;
}

CompressedMatrix compress(const OperatorSpec& spec, const Filtration& filt, int n) {
  require_mode(spec, filt);
  const IndexRange range = filt.basis_range(n);
  CompressedMatrix out;
  out.n = n;
  out.dim = range.size();

  if (spec.is_banded() && spec.band_half_width() <= 1) {
    TridiagonalForm t;
    t.diagonal.resize(out.dim);
    t.off_diagonal.resize(out.dim - 1);
    for (Index i = range.first; i <= range.last; ++i) {
      const auto r = static_cast<std::size_t>(i - range.first);
      t.diagonal[r] = spec.entry(i, i);
      if (i < range.last) {
        const double lower = spec.entry(i + 1, i);
        if (!nearly_equal(lower, spec.entry(i, i + 1)))
          throw SymmetryError("compression is not symmetric at index " + std::to_string(i));
        t.off_diagonal[r] = lower;
      }
    }
    out.storage = std::move(t);
    return out;
  }

  if (spec.is_banded()) {
    const int K = spec.band_half_width();
    SymmetricBand band(out.dim, K);
    for (Index j = range.first; j <= range.last; ++j) {
      const auto c = static_cast<std::size_t>(j - range.first);
      for (Index i = j; i <= std::min<Index>(j + K, range.last); ++i) {
        const double lower = spec.entry(i, j);
        if (!nearly_equal(lower, spec.entry(j, i)))
          throw SymmetryError("compression is not symmetric at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
        band.set(static_cast<std::size_t>(i - range.first), c, lower);
      }
    }
    out.storage = std::move(band);
    return out;
  }

  DenseMatrix m;
  try {
    m = dense_block(spec, range, range);
  } catch (const UnsupportedError&) {
    // Unbanded operator without column support: evaluate every entry.
    m = DenseMatrix(out.dim, out.dim);
    for (Index i = range.first; i <= range.last; ++i)
      for (Index j = range.first; j <= range.last; ++j)
        m(static_cast<std::size_t>(i - range.first), static_cast<std::size_t>(j - range.first)) = spec.entry(i, j);
  }
  for (std::size_t i = 0; i < out.dim; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (!nearly_equal(m(i, j), m(j, i)))
        throw SymmetryError("compression is not symmetric at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
  out.storage = std::move(m);
  return out;
}

int degree_estimate(const OperatorSpec& spec, const Filtration& filt, int n_max, double rank_tol) {
  if (!spec.is_banded()) throw UnsupportedError("degree is only estimated for band-limited operators");
  require_mode(spec, filt);
  if (n_max < 1) throw DomainError("n_max must be at least 1");
  if (!(rank_tol > 0.0)) throw DomainError("rank_tol must be positive");
  const int K = spec.band_half_width();

  int degree = 0;
  for (int n = 1; n <= n_max; ++n) {
    const IndexRange inner = filt.basis_range(n);
    const IndexRange window = clip(spec, filt.basis_range(n + K));
    // (P_n A - A P_n)_{ij} = a_ij ([i in H_n] - [j in H_n]): nonzero only
    // when exactly one of i, j lies inside. Collect those rows and columns.
    std::vector<Index> rows;
    std::vector<Index> cols;
    for (Index j = window.first; j <= window.last; ++j) {
      for (const auto& [i, v] : spec.column(j)) {
        if (!window.contains(i) || inner.contains(i) == inner.contains(j)) continue;
        rows.push_back(i);
        cols.push_back(j);
      }
    }
    if (rows.empty()) continue;
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());

    DenseMatrix c(rows.size(), cols.size());
    for (std::size_t b = 0; b < cols.size(); ++b) {
      for (const auto& [i, v] : spec.column(cols[b])) {
        if (inner.contains(i) == inner.contains(cols[b])) continue;
        const auto it = std::lower_bound(rows.begin(), rows.end(), i);
        if (it == rows.end() || *it != i) continue;
        c(static_cast<std::size_t>(it - rows.begin()), b) = inner.contains(i) ? v : -v;
      }
    }
    const auto sv = singular_values(c);
    if (sv.empty() || sv.front() == 0.0) continue;
    const auto rank = std::count_if(sv.begin(), sv.end(), [&](double s) { return s > rank_tol * sv.front(); });
    degree = std::max(degree, static_cast<int>(rank));
  }
  return degree;
}

double dfnorm_bound(const OperatorSpec& spec) {
  if (!spec.is_banded()) throw UnsupportedError("norm bound needs a band-limited operator");
  if (spec.index_mode() != IndexMode::Bilateral)
    throw UnsupportedError("norm bound is established for the bilateral filtration only");
  const int K = spec.band_half_width();
  double s = 0.0;
  for (int k = -K; k <= K; ++k) s += (1.0 + std::sqrt(2.0 * std::abs(k))) * spec.diag_sup(k);
  return s;
}

double commutator_hs_norm(const OperatorSpec& spec, const Filtration& filt, int n) {
  if (!spec.is_banded()) throw UnsupportedError("commutator norm needs a band-limited operator");
  require_mode(spec, filt);
  const int K = spec.band_half_width();
  const IndexRange inner = filt.basis_range(n);
  // Only columns within K of either end of H_n reach outside it.
  std::vector<Index> cols;
  for (Index j = inner.first; j < std::min(inner.first + K, inner.last + 1); ++j) cols.push_back(j);
  for (Index j = std::max(inner.last - K + 1, inner.first + K); j <= inner.last; ++j) cols.push_back(j);
  double s = 0.0;
  for (Index j : cols)
    for (const auto& [i, v] : spec.column(j))
      if (!inner.contains(i)) s += v * v;
  return std::sqrt(s);
}

namespace {

// trace(P_n X Y P_n) with the inner index running over every basis vector.
double compressed_product_trace(const OperatorSpec& x, const OperatorSpec& y, IndexRange inner) {
  double tr = 0.0;
  for (Index i = inner.first; i <= inner.last; ++i)
    for (const auto& [k, yki] : y.column(i)) tr += x.entry(i, k) * yki;
  return tr;
}

}  // namespace

double trace_state_defect(const OperatorSpec& a, const OperatorSpec& b, const Filtration& filt, int n) {
  if (!a.is_banded() || !b.is_banded()) throw UnsupportedError("trace-state defect needs band-limited operators");
  require_mode(a, filt);
  require_mode(b, filt);
  const IndexRange inner = filt.basis_range(n);
  const double ab = compressed_product_trace(a, b, inner);
  const double ba = compressed_product_trace(b, a, inner);
  return std::abs(ab - ba) / static_cast<double>(inner.size());
}

double product_compression_defect(std::span<const OperatorSpec> specs, const Filtration& filt, int n) {
  if (specs.empty()) throw DomainError("product needs at least one operator");
  int pad = 0;
  for (const auto& s : specs) {
    if (!s.is_banded()) throw UnsupportedError("product defect needs band-limited operators");
    require_mode(s, filt);
    pad += s.band_half_width();
  }
  const IndexRange inner = filt.basis_range(n);
  const IndexRange window = clip(specs.front(), filt.basis_range(n + pad));
  const auto offset = static_cast<std::size_t>(inner.first - window.first);
  const std::size_t dim = inner.size();

  DenseMatrix full = dense_block(specs[0], window, window);
  DenseMatrix truncated = dense_block(specs[0], inner, inner);
  for (std::size_t k = 1; k < specs.size(); ++k) {
    full = full * dense_block(specs[k], window, window);
    truncated = truncated * dense_block(specs[k], inner, inner);
  }
  DenseMatrix delta(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) delta(i, j) = full(offset + i, offset + j) - truncated(i, j);
  return trace_norm(delta);
}

}  // namespace filtspec
