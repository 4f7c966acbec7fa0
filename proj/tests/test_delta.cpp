#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace semicover;
using namespace semicover::testing;

TEST_CASE("delta on the standard small examples", "[delta]") {
  REQUIRE(delta(SubsetMask::of(3, {0, 1}), cyclic_table(3)) == SubsetMask::full(3));
  REQUIRE(delta(SubsetMask::of(2, {0}), left_zero_table(2)) == SubsetMask::of(2, {0}));
  REQUIRE(delta(SubsetMask::of(2, {0}), right_zero_table(2)) == SubsetMask::full(2));
  CayleyTable z4 = cyclic_table(4);
  REQUIRE(delta(SubsetMask::of(4, {0, 2}), z4) == SubsetMask::of(4, {0, 2}));
  REQUIRE(delta(SubsetMask::of(4, {1, 3}), z4) == SubsetMask::of(4, {0, 2}));
  REQUIRE(delta(SubsetMask::of(4, {2, 3}), z4) == SubsetMask::of(4, {0, 1, 3}));
  REQUIRE_THROWS_AS(delta(SubsetMask::of(3, {0}), z4), std::invalid_argument);
}

TEST_CASE("delta agrees with the quotient formulation everywhere", "[delta]") {
  // { x : x A meets A } == { x : x^-1 A meets A } on every class of order <= 3
  // and every nonempty subset.
  for (unsigned order = 1; order <= 3; ++order) {
    auto subsets = all_nonempty_subsets(order);
    for_each_semigroup(order, {}, [&](const CayleyTable& t) {
      for (const auto& A : subsets)
        REQUIRE(delta(A, t) == delta_oracle(A, t));
    });
  }
  for (unsigned n = 4; n <= 6; ++n) {
    for (const CayleyTable& t :
         {cyclic_table(n), left_zero_table(n), right_zero_table(n), constant_table(n)}) {
      for (const auto& A : all_nonempty_subsets(n))
        REQUIRE(delta(A, t) == delta_oracle(A, t));
    }
  }
}

TEST_CASE("delta is the difference set in groups", "[delta]") {
  for (unsigned n = 1; n <= 8; ++n) {
    CayleyTable g = cyclic_table(n);
    REQUIRE(is_group(g).is_group);
    for (const auto& A : all_nonempty_subsets(n))
      REQUIRE(delta(A, g) == group_difference_set(A, g));
  }
}

TEST_CASE("cov on the standard small examples", "[delta]") {
  CayleyTable z4 = cyclic_table(4);
  CovResult r = cov(SubsetMask::of(4, {0, 2}), z4);
  REQUIRE(r.defined);
  REQUIRE(*r.value == 2);
  REQUIRE(*r.witness == SubsetMask::of(4, {0, 1}));

  // Right-zero: x^-1 {0} = {0} for every x, so {0} can never cover.
  CovResult undef = cov(SubsetMask::of(2, {0}), right_zero_table(2));
  REQUIRE_FALSE(undef.defined);
  REQUIRE_FALSE(undef.value.has_value());
  REQUIRE_FALSE(undef.witness.has_value());

  // The whole set is covered by any single element.
  for (unsigned n = 1; n <= 5; ++n) {
    CovResult whole = cov(SubsetMask::full(n), cyclic_table(n));
    REQUIRE(whole.defined);
    REQUIRE(*whole.value == 1);
    REQUIRE(*whole.witness == SubsetMask::of(n, {0}));
  }

  REQUIRE_FALSE(cov(SubsetMask(3), cyclic_table(3)).defined);
}

TEST_CASE("cov matches brute-force subset search exhaustively", "[delta]") {
  for (unsigned order = 1; order <= 3; ++order) {
    auto subsets = all_nonempty_subsets(order);
    for_each_semigroup(order, {}, [&](const CayleyTable& t) {
      for (const auto& A : subsets) {
        BruteCov expect = cov_oracle(A, t);
        CovResult got = cov(A, t);
        REQUIRE(got.defined == expect.defined);
        if (expect.defined) {
          REQUIRE(*got.value == *expect.value);
          REQUIRE(got.witness->elements() == *expect.witness);
        }
      }
    });
  }
}

TEST_CASE("cov matches brute force on bigger structured tables", "[delta]") {
  for (unsigned n = 4; n <= 6; ++n) {
    for (const CayleyTable& t :
         {cyclic_table(n), left_zero_table(n), right_zero_table(n),
          constant_table(n, static_cast<element_id>(n - 1))}) {
      for (const auto& A : all_nonempty_subsets(n)) {
        BruteCov expect = cov_oracle(A, t);
        CovResult got = cov(A, t);
        REQUIRE(got.defined == expect.defined);
        if (expect.defined) {
          REQUIRE(*got.value == *expect.value);
          REQUIRE(got.witness->elements() == *expect.witness);
        }
      }
    }
  }
  for (unsigned n : {7u, 8u}) {
    CayleyTable t = cyclic_table(n);
    for (int trial = 0; trial < 40; ++trial) {
      SubsetMask A = random_nonempty_subset(n);
      BruteCov expect = cov_oracle(A, t);
      CovResult got = cov(A, t);
      REQUIRE(got.defined == expect.defined);
      if (expect.defined) {
        REQUIRE(*got.value == *expect.value);
        REQUIRE(got.witness->elements() == *expect.witness);
      }
    }
  }
}

TEST_CASE("greedy mode upper-bounds the exact value with a real cover", "[delta]") {
  for (unsigned order = 2; order <= 3; ++order) {
    auto subsets = all_nonempty_subsets(order);
    for_each_semigroup(order, {}, [&](const CayleyTable& t) {
      for (const auto& A : subsets) {
        CovResult exact = cov(A, t, CovMode::Exact);
        CovResult greedy = cov(A, t, CovMode::GreedyUpper);
        REQUIRE(exact.defined == greedy.defined);
        if (!exact.defined) continue;
        REQUIRE(*greedy.value >= *exact.value);
        REQUIRE(greedy.witness->count() == *greedy.value);
        SubsetMask covered(order);
        greedy.witness->for_each(
            [&](element_id k) { covered |= left_quotient(k, A, t); });
        REQUIRE(covered == t.full_mask());
      }
    });
  }
}

TEST_CASE("verify_cover_subset accepts good witnesses and names failures", "[delta]") {
  CayleyTable z4 = cyclic_table(4);
  SubsetMask A = SubsetMask::of(4, {0, 2});
  REQUIRE(verify_cover_subset({0, 1}, 2, A, z4).ok);
  REQUIRE(verify_cover_subset({0, 1}, 10, A, z4).ok);

  CoverCheck big = verify_cover_subset({0, 1}, 1, A, z4);
  REQUIRE_FALSE(big.ok);
  REQUIRE(big.reason == "witness larger than claimed bound");

  // Delta({0,2}) = {0,2} in Z4 and 0^-1{0,2} = {0,2}: element 1 is missed.
  CoverCheck nocover = verify_cover_subset({0}, 1, A, z4);
  REQUIRE_FALSE(nocover.ok);
  REQUIRE(nocover.reason == "witness does not cover");
  REQUIRE(*nocover.uncovered == 1);

  REQUIRE_FALSE(verify_cover_subset({}, 1, A, z4).ok);
  REQUIRE_FALSE(verify_cover_subset({7}, 1, A, z4).ok);
  REQUIRE_FALSE(verify_cover_subset({0}, 1, SubsetMask(4), z4).ok);
}

TEST_CASE("verify_cover checks the cell index", "[delta]") {
  CayleyTable z4 = cyclic_table(4);
  Partition P = Partition::from_code({0, 1, 0, 1});
  CoverCertificate cert;
  cert.cell_index = 0;
  cert.witness = {0, 1};
  cert.bound_claimed = 2;
  cert.provenance = Provenance::ExactSolver;
  REQUIRE(verify_cover(cert, P, z4).ok);
  cert.cell_index = 5;
  CoverCheck bad = verify_cover(cert, P, z4);
  REQUIRE_FALSE(bad.ok);
  REQUIRE(bad.reason == "cell index out of range");
}

TEST_CASE("min_cov_over_cells picks the first smallest defined value", "[delta]") {
  CayleyTable z4 = cyclic_table(4);
  CellCovSummary s = min_cov_over_cells(Partition::from_code({0, 1, 0, 1}), z4);
  REQUIRE(s.per_cell.size() == 2);
  REQUIRE(*s.per_cell[0].value == 2);
  REQUIRE(*s.per_cell[1].value == 2);
  REQUIRE(*s.best_cell == 0);
  REQUIRE(*s.best_value == 2);

  // Singleton cells in Z3: Delta({x}) = {0}, and covering {0} needs all of S.
  CellCovSummary sing = min_cov_over_cells(Partition::singletons(3), cyclic_table(3));
  for (const auto& r : sing.per_cell) REQUIRE(*r.value == 3);
  REQUIRE(*sing.best_cell == 0);
  REQUIRE(*sing.best_value == 3);

  // Meet-semilattice on {0,1}: the cell {1} has undefined cov, the cell {0}
  // still covers with one element.
  CayleyTable meet = CayleyTable::from_rows({{0, 0}, {0, 1}});
  REQUIRE(validate_table(meet).ok);
  CellCovSummary mix = min_cov_over_cells(Partition::singletons(2), meet);
  REQUIRE(mix.per_cell[0].defined);
  REQUIRE(*mix.per_cell[0].value == 1);
  REQUIRE_FALSE(mix.per_cell[1].defined);
  REQUIRE(*mix.best_cell == 0);
  REQUIRE(*mix.best_value == 1);
}

TEST_CASE("lex-least witness really is lexicographically least", "[delta]") {
  CayleyTable z6 = cyclic_table(6);

  // {0,1,2} tiles Z6: translate by 3 gives the complement, so cov = 2 and the
  // lex-least pair is {0,3}.
  SubsetMask tile = SubsetMask::of(6, {0, 1, 2});
  CovResult got = cov(tile, z6);
  REQUIRE(got.defined);
  REQUIRE(*got.value == 2);
  REQUIRE(got.witness->elements() == std::vector<element_id>{0, 3});
  REQUIRE(got.witness->elements() == *cov_oracle(tile, z6).witness);

  // {0,1,3} does not tile (no translate equals its complement), so three
  // translates are required.
  SubsetMask nontile = SubsetMask::of(6, {0, 1, 3});
  BruteCov expect = cov_oracle(nontile, z6);
  CovResult got3 = cov(nontile, z6);
  REQUIRE(got3.defined);
  REQUIRE(*got3.value == 3);
  REQUIRE(*got3.value == *expect.value);
  REQUIRE(got3.witness->elements() == *expect.witness);
}
