#pragma once

#include <cstdint>
#include <vector>

namespace pgrad {

bool is_prime(uint32_t n);

// Dense row-major matrix over the prime field F_p. Entries are residues in
// [0, p). p is checked for primality at construction and capped at 2^16 so
// products fit comfortably in 64-bit intermediates.
class FpMatrix {
public:
  FpMatrix() = default;
  FpMatrix(uint32_t p, size_t rows, size_t cols);
  FpMatrix(uint32_t p, size_t rows, size_t cols, std::vector<uint32_t> entries);

  static FpMatrix identity(uint32_t p, size_t n);

  uint32_t p() const { return p_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  uint32_t at(size_t r, size_t c) const { return a_[r * cols_ + c]; }
  void set(size_t r, size_t c, uint32_t v) { a_[r * cols_ + c] = v % p_; }

  const uint32_t* row(size_t r) const { return a_.data() + r * cols_; }

  void append_row(const std::vector<uint32_t>& row);

  FpMatrix transposed() const;
  FpMatrix multiplied(const FpMatrix& rhs) const;

  friend bool operator==(const FpMatrix&, const FpMatrix&) = default;

private:
  uint32_t p_ = 2;
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<uint32_t> a_;
};

// v * A for a row vector v.
std::vector<uint32_t> apply_to_row_vector(const std::vector<uint32_t>& v, const FpMatrix& a);

size_t rank(const FpMatrix& m);

// Reduced row echelon form with zero rows dropped and pivot columns listed
// in increasing order. Pivoting is deterministic (first nonzero in column
// order), so reduced forms are reproducible.
struct Rref {
  FpMatrix mat;
  std::vector<size_t> pivot_cols;

  size_t rank() const { return pivot_cols.size(); }
  std::vector<size_t> nonpivot_cols(size_t total_cols) const;
};

Rref row_reduce(const FpMatrix& m);

// Coordinates of v in F^n modulo the row space of `r`: v is reduced against
// the pivot rows and the residues at non-pivot columns are returned, in
// non-pivot column order.
std::vector<uint32_t> quotient_coords(const Rref& r, std::vector<uint32_t> v,
                                      const std::vector<size_t>& nonpivot);

// Basis of the right nullspace {x : M x = 0}, one vector per row.
std::vector<std::vector<uint32_t>> nullspace(const FpMatrix& m);

// A nonzero linear functional on F_p^dim, defined up to scalar. The stored
// representative is canonical: its first nonzero coefficient equals 1.
struct Functional {
  uint32_t p;
  std::vector<uint32_t> coeffs;

  uint32_t apply(const std::vector<uint32_t>& v) const;

  friend bool operator==(const Functional&, const Functional&) = default;
  friend auto operator<=>(const Functional&, const Functional&) = default;
};

Functional canonical_functional(uint32_t p, std::vector<uint32_t> coeffs);

// All (p^dim - 1)/(p - 1) canonical functionals on F_p^dim, sorted
// lexicographically by coefficient vector. Each corresponds to one
// hyperplane (its kernel).
std::vector<Functional> hyperplanes(size_t dim, uint32_t p);

// The functionals whose kernel is stable under every matrix in `action`
// (acting on row vectors from the right). Each candidate is confirmed by
// kernel stability: every kernel basis vector b satisfies f(b * A) = 0.
std::vector<Functional> invariant_hyperplanes(size_t dim, uint32_t p,
                                              const std::vector<FpMatrix>& action);

}  // namespace pgrad
