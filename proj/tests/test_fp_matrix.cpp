#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pgrad/errors.hpp"
#include "pgrad/fp_matrix.hpp"

using namespace pgrad;

TEST_CASE("rank basics") {
  CHECK(rank(FpMatrix(2, 3, 3)) == 0);
  CHECK(rank(FpMatrix::identity(5, 3)) == 3);
  FpMatrix dup(2, 2, 2, {1, 1, 1, 1});
  CHECK(rank(dup) == 1);
}

TEST_CASE("rank equals rank of transpose") {
  std::mt19937 rng(5);
  for (uint32_t p : {2u, 3u, 5u}) {
    for (int t = 0; t < 50; ++t) {
      size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
      std::vector<uint32_t> e(r * c);
      for (uint32_t& x : e) x = rng() % p;
      FpMatrix m(p, r, c, e);
      CHECK(rank(m) == rank(m.transposed()));
    }
  }
}

TEST_CASE("rref reproduces the row space deterministically") {
  FpMatrix m(3, 3, 4, {1, 2, 0, 1, 2, 1, 1, 0, 0, 2, 2, 2});
  Rref r = row_reduce(m);
  CHECK(r.rank() == rank(m));
  // Pivot entries are 1 and pivot columns are clear elsewhere.
  for (size_t i = 0; i < r.rank(); ++i) {
    CHECK(r.mat.at(i, r.pivot_cols[i]) == 1);
    for (size_t j = 0; j < r.rank(); ++j)
      if (j != i) CHECK(r.mat.at(j, r.pivot_cols[i]) == 0);
  }
}

TEST_CASE("nullspace vectors are killed by the matrix") {
  std::mt19937 rng(17);
  for (uint32_t p : {2u, 3u}) {
    for (int t = 0; t < 30; ++t) {
      size_t r = 1 + rng() % 4, c = 1 + rng() % 5;
      std::vector<uint32_t> e(r * c);
      for (uint32_t& x : e) x = rng() % p;
      FpMatrix m(p, r, c, e);
      auto ns = nullspace(m);
      CHECK(ns.size() == c - rank(m));
      for (const auto& v : ns)
        for (size_t i = 0; i < r; ++i) {
          uint64_t acc = 0;
          for (size_t j = 0; j < c; ++j) acc += uint64_t(m.at(i, j)) * v[j];
          CHECK(acc % p == 0);
        }
    }
  }
}

TEST_CASE("hyperplane counts") {
  for (uint32_t p : {2u, 3u, 5u})
    for (size_t d = 0; d <= 6; ++d) {
      uint64_t expect = 0, pw = 1;
      for (size_t i = 0; i < d; ++i) pw *= p;
      expect = (pw - 1) / (p - 1);
      CHECK(hyperplanes(d, p).size() == expect);
    }
}

TEST_CASE("hyperplanes are canonical and sorted") {
  auto hs = hyperplanes(2, 2);
  REQUIRE(hs.size() == 3);
  CHECK(hs[0].coeffs == std::vector<uint32_t>{0, 1});
  CHECK(hs[1].coeffs == std::vector<uint32_t>{1, 0});
  CHECK(hs[2].coeffs == std::vector<uint32_t>{1, 1});

  for (uint32_t p : {3u, 5u}) {
    auto v = hyperplanes(3, p);
    for (size_t i = 1; i < v.size(); ++i) CHECK(v[i - 1] < v[i]);
    for (const auto& f : v) {
      size_t lead = 0;
      while (f.coeffs[lead] == 0) ++lead;
      CHECK(f.coeffs[lead] == 1);
    }
  }
}

TEST_CASE("invariant hyperplanes: trivial action keeps everything") {
  for (uint32_t p : {2u, 3u}) {
    std::vector<FpMatrix> action{FpMatrix::identity(p, 3), FpMatrix::identity(p, 3)};
    CHECK(invariant_hyperplanes(3, p, action) == hyperplanes(3, p));
  }
}

TEST_CASE("invariant hyperplanes: swap action on F_2^2") {
  FpMatrix swap(2, 2, 2, {0, 1, 1, 0});
  auto inv = invariant_hyperplanes(2, 2, {swap});
  // Direct oracle: test all three hyperplanes by matrix action on kernels.
  std::vector<Functional> expect;
  for (const Functional& f : hyperplanes(2, 2)) {
    size_t lead = f.coeffs[0] ? 0 : 1;
    bool stable = true;
    for (size_t j = 0; j < 2; ++j) {
      if (j == lead) continue;
      std::vector<uint32_t> b(2, 0);
      b[j] = 1;
      b[lead] = (2 - f.coeffs[j]) % 2;
      if (f.apply(apply_to_row_vector(b, swap)) != 0) stable = false;
    }
    if (stable) expect.push_back(f);
  }
  CHECK(inv == expect);
  REQUIRE(inv.size() == 1);
  CHECK(inv[0].coeffs == std::vector<uint32_t>{1, 1});
}

TEST_CASE("invariant hyperplanes: dimension one is always stable") {
  FpMatrix a(2, 1, 1, {1});
  CHECK(invariant_hyperplanes(1, 2, {a}).size() == 1);
}

TEST_CASE("invariant set is closed under the action") {
  std::mt19937 rng(23);
  for (int t = 0; t < 20; ++t) {
    uint32_t p = t % 2 ? 2 : 3;
    size_t d = 2 + rng() % 3;
    // Random invertible upper unitriangular matrix: a p-group action.
    FpMatrix a = FpMatrix::identity(p, d);
    for (size_t i = 0; i < d; ++i)
      for (size_t j = i + 1; j < d; ++j) a.set(i, j, rng() % p);
    auto inv = invariant_hyperplanes(d, p, {a});
    CHECK(!inv.empty());
    for (const Functional& f : inv) {
      // lambda o A is proportional to lambda.
      std::vector<uint32_t> img(d, 0);
      for (size_t c = 0; c < d; ++c) {
        uint64_t acc = 0;
        for (size_t r2 = 0; r2 < d; ++r2) acc += uint64_t(a.at(c, r2)) * f.coeffs[r2];
        img[c] = uint32_t(acc % p);
      }
      CHECK(canonical_functional(p, img) == f);
    }
  }
}

TEST_CASE("bad moduli and singular actions are rejected") {
  CHECK_THROWS_AS(FpMatrix(4, 1, 1), UsageError);
  CHECK_THROWS_AS(FpMatrix(1u << 17, 1, 1), UsageError);
  FpMatrix sing(2, 2, 2, {1, 1, 1, 1});
  CHECK_THROWS_AS(invariant_hyperplanes(2, 2, {sing}), UsageError);
}
