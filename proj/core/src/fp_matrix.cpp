#include "pgrad/fp_matrix.hpp"

#include <algorithm>

#include "pgrad/errors.hpp"

namespace pgrad {

bool is_prime(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

void check_modulus(uint32_t p) {
  if (!is_prime(p)) throw UsageError("modulus " + std::to_string(p) + " is not prime");
  if (p > (1u << 16)) throw UsageError("modulus exceeds 2^16");
}

uint32_t inv_mod(uint32_t a, uint32_t p) {
  // Fermat; p is prime and a != 0 mod p.
  uint64_t base = a % p, acc = 1;
  uint32_t e = p - 2;
  while (e) {
    if (e & 1) acc = acc * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<uint32_t>(acc);
}

}  // namespace

FpMatrix::FpMatrix(uint32_t p, size_t rows, size_t cols)
    : p_(p), rows_(rows), cols_(cols), a_(rows * cols, 0) {
  check_modulus(p);
}

FpMatrix::FpMatrix(uint32_t p, size_t rows, size_t cols, std::vector<uint32_t> entries)
    : p_(p), rows_(rows), cols_(cols), a_(std::move(entries)) {
  check_modulus(p);
  if (a_.size() != rows * cols) throw UsageError("entry count does not match shape");
  for (uint32_t& x : a_) x %= p_;
}

FpMatrix FpMatrix::identity(uint32_t p, size_t n) {
  FpMatrix m(p, n, n);
  for (size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

void FpMatrix::append_row(const std::vector<uint32_t>& row) {
  if (row.size() != cols_) throw UsageError("row width mismatch");
  for (uint32_t x : row) a_.push_back(x % p_);
  ++rows_;
}

FpMatrix FpMatrix::transposed() const {
  FpMatrix t(p_, cols_, rows_);
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < cols_; ++c) t.set(c, r, at(r, c));
  return t;
}

FpMatrix FpMatrix::multiplied(const FpMatrix& rhs) const {
  if (cols_ != rhs.rows_ || p_ != rhs.p_) throw UsageError("shape mismatch in multiply");
  FpMatrix out(p_, rows_, rhs.cols_);
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < rhs.cols_; ++c) {
      uint64_t acc = 0;
      for (size_t k = 0; k < cols_; ++k) acc += uint64_t(at(r, k)) * rhs.at(k, c);
      out.set(r, c, static_cast<uint32_t>(acc % p_));
    }
  return out;
}

std::vector<uint32_t> apply_to_row_vector(const std::vector<uint32_t>& v, const FpMatrix& a) {
  if (v.size() != a.rows()) throw UsageError("vector length mismatch");
  std::vector<uint32_t> out(a.cols(), 0);
  for (size_t c = 0; c < a.cols(); ++c) {
    uint64_t acc = 0;
    for (size_t r = 0; r < a.rows(); ++r) acc += uint64_t(v[r]) * a.at(r, c);
    out[c] = static_cast<uint32_t>(acc % a.p());
  }
  return out;
}

Rref row_reduce(const FpMatrix& m) {
  const uint32_t p = m.p();
  std::vector<std::vector<uint32_t>> rows;
  rows.reserve(m.rows());
  for (size_t r = 0; r < m.rows(); ++r)
    rows.emplace_back(m.row(r), m.row(r) + m.cols());

  std::vector<size_t> pivots;
  size_t next_row = 0;
  for (size_t col = 0; col < m.cols() && next_row < rows.size(); ++col) {
    size_t pr = next_row;
    while (pr < rows.size() && rows[pr][col] == 0) ++pr;
    if (pr == rows.size()) continue;
    std::swap(rows[next_row], rows[pr]);

    uint64_t inv = inv_mod(rows[next_row][col], p);
    for (uint32_t& x : rows[next_row]) x = static_cast<uint32_t>(x * inv % p);

    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == next_row || rows[r][col] == 0) continue;
      uint64_t f = rows[r][col];
      for (size_t c = col; c < m.cols(); ++c)
        rows[r][c] = static_cast<uint32_t>((rows[r][c] + (p - 1) * f % p * rows[next_row][c]) % p);
    }
    pivots.push_back(col);
    ++next_row;
  }

  FpMatrix out(p, 0, m.cols());
  for (size_t r = 0; r < pivots.size(); ++r) out.append_row(rows[r]);
  return Rref{std::move(out), std::move(pivots)};
}

size_t rank(const FpMatrix& m) { return row_reduce(m).rank(); }

std::vector<size_t> Rref::nonpivot_cols(size_t total_cols) const {
  std::vector<size_t> out;
  size_t pi = 0;
  for (size_t c = 0; c < total_cols; ++c) {
    if (pi < pivot_cols.size() && pivot_cols[pi] == c)
      ++pi;
    else
      out.push_back(c);
  }
  return out;
}

std::vector<uint32_t> quotient_coords(const Rref& r, std::vector<uint32_t> v,
                                      const std::vector<size_t>& nonpivot) {
  const uint32_t p = r.mat.p();
  if (v.size() != r.mat.cols()) throw UsageError("vector length mismatch");
  for (size_t i = 0; i < r.pivot_cols.size(); ++i) {
    uint32_t f = v[r.pivot_cols[i]] % p;
    if (f == 0) continue;
    // v -= f * row_i; the pivot entry is 1.
    for (size_t c = 0; c < v.size(); ++c)
      v[c] = static_cast<uint32_t>((v[c] + uint64_t(p - 1) * f % p * r.mat.at(i, c)) % p);
  }
  std::vector<uint32_t> out;
  out.reserve(nonpivot.size());
  for (size_t c : nonpivot) out.push_back(v[c] % p);
  return out;
}

std::vector<std::vector<uint32_t>> nullspace(const FpMatrix& m) {
  const uint32_t p = m.p();
  Rref r = row_reduce(m);
  std::vector<size_t> free_cols = r.nonpivot_cols(m.cols());
  std::vector<std::vector<uint32_t>> basis;
  basis.reserve(free_cols.size());
  for (size_t f : free_cols) {
    std::vector<uint32_t> v(m.cols(), 0);
    v[f] = 1;
    for (size_t i = 0; i < r.pivot_cols.size(); ++i)
      v[r.pivot_cols[i]] = (p - r.mat.at(i, f)) % p;
    basis.push_back(std::move(v));
  }
  return basis;
}

uint32_t Functional::apply(const std::vector<uint32_t>& v) const {
  if (v.size() != coeffs.size()) throw UsageError("vector length mismatch");
  uint64_t acc = 0;
  for (size_t i = 0; i < v.size(); ++i) acc += uint64_t(coeffs[i]) * v[i];
  return static_cast<uint32_t>(acc % p);
}

Functional canonical_functional(uint32_t p, std::vector<uint32_t> coeffs) {
  check_modulus(p);
  for (uint32_t& x : coeffs) x %= p;
  size_t lead = 0;
  while (lead < coeffs.size() && coeffs[lead] == 0) ++lead;
  if (lead == coeffs.size()) throw UsageError("zero functional");
  if (coeffs[lead] != 1) {
    uint64_t inv = inv_mod(coeffs[lead], p);
    for (uint32_t& x : coeffs) x = static_cast<uint32_t>(x * inv % p);
  }
  return Functional{p, std::move(coeffs)};
}

std::vector<Functional> hyperplanes(size_t dim, uint32_t p) {
  check_modulus(p);
  std::vector<Functional> out;
  if (dim == 0) return out;
  // Descending leading index with an ascending odometer on the tail yields
  // the lexicographically sorted list of canonical representatives.
  for (size_t lead = dim; lead-- > 0;) {
    std::vector<uint32_t> v(dim, 0);
    v[lead] = 1;
    for (;;) {
      out.push_back(Functional{p, v});
      // Advance the tail beyond `lead` as a base-p odometer, least
      // significant digit last, so tails come out in ascending lex order.
      size_t c = dim;
      bool carried_out = true;
      while (c-- > lead + 1) {
        if (++v[c] < p) {
          carried_out = false;
          break;
        }
        v[c] = 0;
      }
      if (carried_out) break;
    }
  }
  return out;
}

std::vector<Functional> invariant_hyperplanes(size_t dim, uint32_t p,
                                              const std::vector<FpMatrix>& action) {
  check_modulus(p);
  for (const FpMatrix& a : action) {
    if (a.rows() != dim || a.cols() != dim) throw UsageError("action matrix is not dim x dim");
    if (a.p() != p) throw UsageError("action matrix over wrong field");
    if (rank(a) != dim) throw UsageError("singular action matrix");
  }
  if (dim == 0) return {};

  // A kernel is stable under the (p-group) action exactly when the
  // functional kills every v*A - v, i.e. lies in the nullspace of the
  // stacked difference matrix. Enumerating that nullspace projectively
  // avoids touching the full (p^dim-1)/(p-1) candidate set.
  FpMatrix diff(p, 0, dim);
  for (const FpMatrix& a : action)
    for (size_t i = 0; i < dim; ++i) {
      std::vector<uint32_t> row(a.row(i), a.row(i) + dim);
      row[i] = (row[i] + p - 1) % p;
      diff.append_row(row);
    }
  std::vector<std::vector<uint32_t>> ns = nullspace(diff);

  std::vector<Functional> out;
  for (const Functional& combo : hyperplanes(ns.size(), p)) {
    std::vector<uint32_t> lam(dim, 0);
    for (size_t j = 0; j < ns.size(); ++j) {
      if (combo.coeffs[j] == 0) continue;
      for (size_t c = 0; c < dim; ++c)
        lam[c] = static_cast<uint32_t>((lam[c] + uint64_t(combo.coeffs[j]) * ns[j][c]) % p);
    }
    Functional f = canonical_functional(p, std::move(lam));

    // Confirm kernel stability directly: with val[r] = f(row_r(A)), the
    // kernel basis vector b_j = e_j - f_j e_lead maps to val[j] - f_j
    // val[lead] under A.
    size_t lead = 0;
    while (f.coeffs[lead] == 0) ++lead;
    for (const FpMatrix& a : action) {
      std::vector<uint32_t> val(dim);
      for (size_t r = 0; r < dim; ++r) {
        uint64_t acc = 0;
        for (size_t c = 0; c < dim; ++c) acc += uint64_t(a.at(r, c)) * f.coeffs[c];
        val[r] = static_cast<uint32_t>(acc % p);
      }
      for (size_t j = 0; j < dim; ++j) {
        if (j == lead) continue;
        if ((val[j] + uint64_t(p - f.coeffs[j]) * val[lead]) % p != 0)
          throw IntegrityError("coinvariant candidate failed kernel stability");
      }
    }
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace pgrad
