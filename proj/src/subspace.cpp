#include "ap3/subspace.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "ap3/errors.hpp"

namespace ap3 {
namespace {

Digits zero_row(std::uint32_t n) { return Digits(n, 0); }

void axpy(Digits& y, const Digits& x, std::uint32_t c, std::uint32_t p) {
  if (c == 0) return;
  for (std::size_t i = 0; i < y.size(); ++i) {
    y[i] = static_cast<std::uint32_t>((y[i] + static_cast<std::uint64_t>(c) * x[i]) % p);
  }
}

Element combine(const FieldParams& params, const std::vector<Digits>& rows,
                std::uint32_t coefficients) {
  const std::uint32_t p = params.p();
  Digits acc = zero_row(params.n());
  for (const Digits& row : rows) {
    axpy(acc, row, coefficients % p, p);
    coefficients /= p;
  }
  return params.encode(acc);
}

}  // namespace

std::vector<std::uint32_t> row_reduce(std::vector<Digits>& rows, std::uint32_t p) {
  std::vector<std::uint32_t> pivots;
  if (rows.empty()) return pivots;
  const std::uint32_t n = static_cast<std::uint32_t>(rows.front().size());
  std::size_t rank = 0;
  for (std::uint32_t col = 0; col < n && rank < rows.size(); ++col) {
    std::size_t sel = rank;
    while (sel < rows.size() && rows[sel][col] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[rank], rows[sel]);
    const std::uint32_t inv = inverse_mod(rows[rank][col], p);
    for (auto& d : rows[rank]) d = static_cast<std::uint32_t>((static_cast<std::uint64_t>(d) * inv) % p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      axpy(rows[r], rows[rank], p - rows[r][col], p);
    }
    pivots.push_back(col);
    ++rank;
  }
  rows.resize(rank);
  return pivots;
}

Subspace::Subspace(FieldParams params, std::vector<Digits> rref, std::vector<std::uint32_t> pivots)
    : params_(std::move(params)), basis_(std::move(rref)), pivots_(std::move(pivots)) {}

Subspace Subspace::zero(const FieldParams& params) { return Subspace(params, {}, {}); }

Subspace Subspace::full(const FieldParams& params) {
  std::vector<Digits> rows;
  std::vector<std::uint32_t> pivots;
  for (std::uint32_t i = 0; i < params.n(); ++i) {
    Digits row = zero_row(params.n());
    row[i] = 1;
    rows.push_back(std::move(row));
    pivots.push_back(i);
  }
  return Subspace(params, std::move(rows), std::move(pivots));
}

Subspace Subspace::span(const FieldParams& params, const std::vector<Element>& generators) {
  std::vector<Digits> rows;
  rows.reserve(generators.size());
  for (Element g : generators) {
    if (!params.contains(g)) throw ParameterError("generator outside the field");
    rows.push_back(params.digits(g));
  }
  return span_rows(params, std::move(rows));
}

Subspace Subspace::span_rows(const FieldParams& params, std::vector<Digits> rows) {
  for (const Digits& r : rows) {
    if (r.size() != params.n()) throw ParameterError("row has wrong length");
  }
  auto pivots = row_reduce(rows, params.p());
  return Subspace(params, std::move(rows), std::move(pivots));
}

std::vector<Element> Subspace::basis_elements() const {
  std::vector<Element> out;
  out.reserve(basis_.size());
  for (const Digits& row : basis_) out.push_back(params_.encode(row));
  return out;
}

bool Subspace::contains(Element v) const {
  if (!params_.contains(v)) throw ParameterError("element outside the field");
  const std::uint32_t p = params_.p();
  Digits d = params_.digits(v);
  for (std::size_t r = 0; r < basis_.size(); ++r) {
    const std::uint32_t c = d[pivots_[r]];
    if (c != 0) axpy(d, basis_[r], p - c, p);
  }
  return std::all_of(d.begin(), d.end(), [](std::uint32_t x) { return x == 0; });
}

Element Subspace::member(std::uint32_t coefficients) const {
  return combine(params_, basis_, coefficients);
}

std::vector<Element> Subspace::members() const {
  const std::uint32_t count = size();
  std::vector<Element> out(count);
  // Odometer over coefficient vectors; member c matches member(c).
  const std::uint32_t p = params_.p();
  Digits coeff(basis_.size(), 0);
  Digits acc = zero_row(params_.n());
  for (std::uint32_t c = 0; c < count; ++c) {
    out[c] = params_.encode(acc);
    for (std::size_t j = 0; j < basis_.size(); ++j) {
      axpy(acc, basis_[j], 1, p);
      if (++coeff[j] < p) break;
      coeff[j] = 0;  // p additions of a row return acc to its previous value
    }
  }
  return out;
}

Subspace Subspace::orthogonal_complement() const {
  const std::uint32_t n = params_.n();
  const std::uint32_t p = params_.p();
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots_) is_pivot[c] = true;
  std::vector<Digits> rows;
  for (std::uint32_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Digits x = zero_row(n);
    x[free] = 1;
    for (std::size_t r = 0; r < basis_.size(); ++r) {
      const std::uint32_t c = basis_[r][free];
      x[pivots_[r]] = c == 0 ? 0 : p - c;
    }
    rows.push_back(std::move(x));
  }
  return span_rows(params_, std::move(rows));
}

Subspace Subspace::sum(const Subspace& other) const {
  require_same_field(params_, other.params_);
  std::vector<Digits> rows = basis_;
  rows.insert(rows.end(), other.basis_.begin(), other.basis_.end());
  return span_rows(params_, std::move(rows));
}

Subspace Subspace::intersect(const Subspace& other) const {
  require_same_field(params_, other.params_);
  return orthogonal_complement().sum(other.orthogonal_complement()).orthogonal_complement();
}

std::uint64_t gaussian_binomial(std::uint32_t n, std::uint32_t d, std::uint32_t p) {
  if (d > n) return 0;
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  unsigned __int128 acc = 1;
  for (std::uint32_t i = 0; i < d; ++i) {
    unsigned __int128 num = 1, den = 1;
    for (std::uint32_t j = 0; j < n - i; ++j) num *= p;
    for (std::uint32_t j = 0; j < i + 1; ++j) den *= p;
    num -= 1;
    den -= 1;
    // acc * num is divisible by den: the running product is [n choose i+1].
    const unsigned __int128 limit = static_cast<unsigned __int128>(kMax) * den;
    if (num != 0 && acc > limit / num) return kMax;
    acc = acc * num / den;
  }
  return acc > kMax ? kMax : static_cast<std::uint64_t>(acc);
}

std::vector<Subspace> enumerate_subspaces(const FieldParams& params, std::uint32_t dim,
                                          std::uint64_t cap) {
  const std::uint32_t n = params.n();
  const std::uint32_t p = params.p();
  if (dim > n) throw ParameterError("subspace dimension exceeds n");
  const std::uint64_t count = gaussian_binomial(n, dim, p);
  if (count > cap) {
    throw EnumerationCapError("Grassmannian has " + std::to_string(count) +
                              " subspaces, above the enumeration cap of " + std::to_string(cap));
  }
  std::vector<Subspace> out;
  out.reserve(count);
  std::vector<std::uint32_t> pivots(dim);
  for (std::uint32_t i = 0; i < dim; ++i) pivots[i] = i;
  while (true) {
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivots) is_pivot[c] = true;
    // Free slots: (row, column) with column right of the row's pivot and not a pivot column.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> free;
    for (std::uint32_t r = 0; r < dim; ++r) {
      for (std::uint32_t c = pivots[r] + 1; c < n; ++c) {
        if (!is_pivot[c]) free.emplace_back(r, c);
      }
    }
    std::vector<Digits> rows(dim, zero_row(n));
    for (std::uint32_t r = 0; r < dim; ++r) rows[r][pivots[r]] = 1;
    Digits assignment(free.size(), 0);
    while (true) {
      for (std::size_t s = 0; s < free.size(); ++s) rows[free[s].first][free[s].second] = assignment[s];
      out.push_back(Subspace(params, rows, pivots));
      std::size_t s = 0;
      for (; s < free.size(); ++s) {
        if (++assignment[s] < p) break;
        assignment[s] = 0;
      }
      if (s == free.size()) break;
    }
    // Next pivot combination in lexicographic order.
    std::int64_t i = static_cast<std::int64_t>(dim) - 1;
    while (i >= 0 && pivots[i] == n - dim + i) --i;
    if (i < 0) break;
    ++pivots[i];
    for (std::uint32_t j = static_cast<std::uint32_t>(i) + 1; j < dim; ++j) pivots[j] = pivots[j - 1] + 1;
  }
  return out;
}

Subspace sample_uniform_subspace(const FieldParams& params, std::uint32_t dim, Rng& rng) {
  if (dim > params.n()) throw ParameterError("subspace dimension exceeds n");
  std::uniform_int_distribution<std::uint32_t> entry(0, params.p() - 1);
  while (true) {
    std::vector<Digits> rows(dim, zero_row(params.n()));
    for (auto& row : rows) {
      for (auto& x : row) x = entry(rng);
    }
    Subspace s = Subspace::span_rows(params, std::move(rows));
    if (s.dim() == dim) return s;
  }
}

std::vector<Element> coset_members(const Subspace& w, Element t) {
  const FieldParams& params = w.params();
  if (!params.contains(t)) throw ParameterError("translate outside the field");
  std::vector<Element> out = w.members();
  for (auto& x : out) x = params.add(x, t);
  return out;
}

CosetIndexer::CosetIndexer(const Subspace& w)
    : params_(w.params()), dual_basis_(w.orthogonal_complement().basis_elements()) {
  num_cosets_ = params_.power(static_cast<std::uint32_t>(dual_basis_.size()));
  keys_.assign(params_.size(), 0);
  for (std::size_t j = 0; j < dual_basis_.size(); ++j) {
    const auto phases = character_phases(params_, dual_basis_[j]);
    const std::uint32_t weight = params_.power(static_cast<std::uint32_t>(j));
    for (Element x = 0; x < params_.size(); ++x) keys_[x] += phases[x] * weight;
  }
}

std::uint32_t CosetIndexer::key(Element x) const {
  if (!params_.contains(x)) throw ParameterError("element outside the field");
  return keys_[x];
}

bool DirectSum::is_direct_sum(const Subspace& v, const Subspace& w) {
  if (!(v.params() == w.params())) return false;
  return v.dim() + w.dim() == v.params().n() && v.sum(w).dim() == v.params().n();
}

DirectSum::DirectSum(const Subspace& v, const Subspace& w) : v_(v), w_(w) {
  if (!is_direct_sum(v, w)) {
    throw StructuralError("V and W do not form a direct sum (dim V = " + std::to_string(v.dim()) +
                          ", dim W = " + std::to_string(w.dim()) + ")");
  }
  const std::uint32_t n = v.params().n();
  const std::uint32_t p = v.params().p();
  // Gauss-Jordan on [M | I].
  std::vector<Digits> aug;
  for (const auto* s : {&v, &w}) {
    for (const Digits& row : s->basis()) {
      Digits r(2 * n, 0);
      std::copy(row.begin(), row.end(), r.begin());
      aug.push_back(std::move(r));
    }
  }
  for (std::uint32_t i = 0; i < n; ++i) aug[i][n + i] = 1;
  const auto pivots = row_reduce(aug, p);
  inverse_.assign(n, Digits(n, 0));
  for (std::uint32_t i = 0; i < n; ++i) {
    if (pivots[i] != i) throw StructuralError("direct-sum basis is singular");
    for (std::uint32_t j = 0; j < n; ++j) inverse_[i][j] = aug[i][n + j];
  }
}

std::pair<Element, Element> DirectSum::decompose(Element x) const {
  const FieldParams& params = v_.params();
  if (!params.contains(x)) throw ParameterError("element outside the field");
  const std::uint32_t n = params.n();
  const std::uint32_t p = params.p();
  const Digits xd = params.digits(x);
  // Coordinates c with x = c M, i.e. c = x M^{-1}.
  Digits c(n, 0);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (xd[i] == 0) continue;
    for (std::uint32_t j = 0; j < n; ++j) {
      c[j] = static_cast<std::uint32_t>((c[j] + static_cast<std::uint64_t>(xd[i]) * inverse_[i][j]) % p);
    }
  }
  Digits vd(n, 0);
  for (std::uint32_t j = 0; j < v_.dim(); ++j) axpy(vd, v_.basis()[j], c[j], p);
  const Element v = params.encode(vd);
  return {v, params.sub(x, v)};
}

}  // namespace ap3
