#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "helpers.hpp"

using namespace semicover;
using namespace semicover::testing;

namespace {

// Every table over {0..n-1}, kept only if associative: the definitional
// oracle the backtracking enumerator must reproduce.
std::vector<CayleyTable> brute_force_labeled(unsigned n) {
  std::vector<CayleyTable> out;
  std::vector<element_id> cells(n * n, 0);
  for (;;) {
    CayleyTable t(n, cells);
    bool ok = true;
    for (unsigned a = 0; ok && a < n; ++a)
      for (unsigned b = 0; ok && b < n; ++b)
        for (unsigned c = 0; ok && c < n; ++c)
          if (t.product(t.product(a, b), c) != t.product(a, t.product(b, c)))
            ok = false;
    if (ok) out.push_back(t);
    unsigned i = 0;
    while (i < cells.size() && cells[i] + 1u == n) cells[i++] = 0;
    if (i == cells.size()) break;
    ++cells[i];
  }
  return out;
}

} // namespace

TEST_CASE("labeled enumeration matches the definitional filter", "[enumeration]") {
  for (unsigned n : {1u, 2u, 3u}) {
    std::vector<CayleyTable> brute = brute_force_labeled(n);
    std::set<std::vector<element_id>> brute_set;
    for (const auto& t : brute) {
      std::vector<element_id> cells(n * n);
      for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) cells[i * n + j] = t.product(i, j);
      brute_set.insert(cells);
    }
    std::set<std::vector<element_id>> enumerated;
    EnumOptions labeled;
    labeled.up_to_iso = false;
    for_each_semigroup(n, labeled, [&](const CayleyTable& t) {
      std::vector<element_id> cells(n * n);
      for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) cells[i * n + j] = t.product(i, j);
      REQUIRE(enumerated.insert(cells).second); // no duplicates
    });
    REQUIRE(enumerated == brute_set);
  }
  REQUIRE(brute_force_labeled(2).size() == 8);
  REQUIRE(brute_force_labeled(3).size() == 113);
}

TEST_CASE("enumeration counts", "[enumeration]") {
  auto count = [](unsigned order, EnumOptions o) {
    std::size_t n = 0;
    for_each_semigroup(order, o, [&](const CayleyTable&) { ++n; });
    return n;
  };
  EnumOptions labeled;
  labeled.up_to_iso = false;
  EnumOptions iso; // default
  EnumOptions anti;
  anti.anti_iso_dedup = true;

  const std::size_t labeled_expect[] = {1, 8, 113, 3492, 183732};
  const std::size_t iso_expect[] = {1, 5, 24, 188, 1915};
  const std::size_t anti_expect[] = {1, 4, 18, 126, 1160};
  for (unsigned order = 1; order <= 5; ++order) {
    REQUIRE(count(order, labeled) == labeled_expect[order - 1]);
    REQUIRE(count(order, iso) == iso_expect[order - 1]);
    REQUIRE(count(order, anti) == anti_expect[order - 1]);
  }
  REQUIRE_THROWS_AS(for_each_semigroup(0, {}, [](const CayleyTable&) {}),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(for_each_semigroup(7, {}, [](const CayleyTable&) {}),
                    std::invalid_argument);
}

TEST_CASE("emitted representatives are canonical, valid, and ordered", "[enumeration]") {
  for (unsigned order = 1; order <= 4; ++order) {
    std::vector<std::vector<element_id>> seen;
    for_each_semigroup(order, {}, [&](const CayleyTable& t) {
      REQUIRE(validate_table(t).ok);
      CanonicalKey key = canonical_key(t);
      std::vector<element_id> own(order * order);
      for (unsigned i = 0; i < order; ++i)
        for (unsigned j = 0; j < order; ++j) own[i * order + j] = t.product(i, j);
      REQUIRE(key.bytes == own); // the representative is its own canonical form
      seen.push_back(own);
    });
    for (std::size_t i = 1; i < seen.size(); ++i)
      REQUIRE(seen[i - 1] < seen[i]); // deterministic lexicographic emission
  }
}

TEST_CASE("canonical key is an isomorphism invariant", "[enumeration]") {
  REQUIRE_FALSE(canonical_key(left_zero_table(2)) == canonical_key(right_zero_table(2)));

  // All six relabelings of the cyclic group of order three agree.
  CayleyTable z3 = cyclic_table(3);
  CanonicalKey base = canonical_key(z3);
  std::vector<element_id> perm = {0, 1, 2};
  do {
    REQUIRE(canonical_key(relabel(z3, perm)) == base);
  } while (std::next_permutation(perm.begin(), perm.end()));

  // Random relabelings at larger orders.
  for (unsigned n = 4; n <= 6; ++n) {
    for (const CayleyTable& t :
         {cyclic_table(n), left_zero_table(n), right_zero_table(n)}) {
      CanonicalKey k = canonical_key(t);
      for (int trial = 0; trial < 10; ++trial)
        REQUIRE(canonical_key(relabel(t, random_permutation(n))) == k);
    }
  }
}

TEST_CASE("canonical keys parse and print round-trip", "[enumeration]") {
  CanonicalKey k = canonical_key(z2_x_rz2());
  CanonicalKey back = CanonicalKey::parse(k.to_string());
  REQUIRE(back == k);
  REQUIRE(back.to_table() == k.to_table());

  REQUIRE(canonical_key(cyclic_table(1)).to_string() == "1:0");
  REQUIRE_THROWS_AS(CanonicalKey::parse("nocolon"), std::invalid_argument);
  REQUIRE_THROWS_AS(CanonicalKey::parse("2:0,1,x,0"), std::invalid_argument);
  REQUIRE_THROWS_AS(CanonicalKey::parse("2:0,1"), std::invalid_argument);
  REQUIRE_THROWS_AS(CanonicalKey::parse("2:0,1,2,0"), std::invalid_argument);
}

TEST_CASE("relabeling is a homomorphism of everything in sight", "[enumeration]") {
  for (const CayleyTable& t : {cyclic_table(5), z2_x_rz2(), right_zero_table(4)}) {
    unsigned n = t.order();
    for (int trial = 0; trial < 8; ++trial) {
      std::vector<element_id> sigma = random_permutation(n);
      CayleyTable rt = relabel(t, sigma);
      for (unsigned a = 0; a < n; ++a)
        for (unsigned b = 0; b < n; ++b)
          REQUIRE(rt.product(sigma[a], sigma[b]) == sigma[t.product(a, b)]);

      SubsetMask A = random_nonempty_subset(n);
      REQUIRE(delta(relabel(A, sigma), rt) == relabel(delta(A, t), sigma));
      CovResult c0 = cov(A, t);
      CovResult c1 = cov(relabel(A, sigma), rt);
      REQUIRE(c0.defined == c1.defined);
      if (c0.defined) REQUIRE(*c0.value == *c1.value);
    }
  }
  REQUIRE_THROWS_AS(relabel(cyclic_table(3), {0, 1}), std::invalid_argument);
  REQUIRE_THROWS_AS(relabel(cyclic_table(3), {0, 1, 1}), std::invalid_argument);
}

TEST_CASE("partition covering number is an isomorphism invariant", "[enumeration]") {
  CayleyTable t = z2_x_rz2();
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<element_id> sigma = random_permutation(4);
    CayleyTable rt = relabel(t, sigma);
    for_each_partition(4, std::nullopt, [&](const Partition& P) {
      CellCovSummary a = min_cov_over_cells(P, t);
      CellCovSummary b = min_cov_over_cells(relabel(P, sigma), rt);
      REQUIRE(a.best_value.has_value() == b.best_value.has_value());
      if (a.best_value) REQUIRE(*a.best_value == *b.best_value);
    });
  }
}

TEST_CASE("transposes of anti-isomorphism representatives restore all classes", "[enumeration]") {
  EnumOptions anti;
  anti.anti_iso_dedup = true;
  std::set<std::string> keys;
  for_each_semigroup(3, anti, [&](const CayleyTable& t) {
    keys.insert(canonical_key(t).to_string());
    keys.insert(canonical_key(t.transposed()).to_string());
  });
  std::set<std::string> all;
  for_each_semigroup(3, {}, [&](const CayleyTable& t) {
    all.insert(canonical_key(t).to_string());
  });
  REQUIRE(all.size() == 24);
  REQUIRE(keys == all);
}

TEST_CASE("partition enumeration counts and shapes", "[enumeration]") {
  const std::size_t bell[] = {1, 2, 5, 15, 52, 203};
  for (unsigned order = 1; order <= 6; ++order) {
    std::size_t total = 0;
    std::vector<std::vector<unsigned>> codes;
    for_each_partition(order, std::nullopt, [&](const Partition& P) {
      ++total;
      REQUIRE(P.universe() == order);
      REQUIRE(Partition::from_code(P.code()) == P); // codes are normalized
      codes.push_back(P.code());
    });
    REQUIRE(total == bell[order - 1]);
  }

  auto stirling = [](unsigned n, unsigned k) {
    std::size_t c = 0;
    for_each_partition(n, k, [&](const Partition&) { ++c; });
    return c;
  };
  REQUIRE(stirling(3, 2) == 3);
  REQUIRE(stirling(4, 2) == 7);
  REQUIRE(stirling(4, 4) == 1);
  REQUIRE(stirling(5, 2) == 15);
  REQUIRE(stirling(5, 3) == 25);
  REQUIRE(stirling(6, 1) == 1);

  REQUIRE_THROWS_AS(for_each_partition(0, std::nullopt, [](const Partition&) {}),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(for_each_partition(3, 4u, [](const Partition&) {}),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(for_each_partition(3, 0u, [](const Partition&) {}),
                    std::invalid_argument);
}

TEST_CASE("partition enumeration order is grouped by cell count", "[enumeration]") {
  std::vector<std::vector<unsigned>> seq;
  for_each_partition(3, std::nullopt, [&](const Partition& P) { seq.push_back(P.code()); });
  std::vector<std::vector<unsigned>> expect = {
      {0, 0, 0},                     // one cell
      {0, 0, 1}, {0, 1, 0}, {0, 1, 1}, // two cells, lexicographic codes
      {0, 1, 2},                     // singletons
  };
  REQUIRE(seq == expect);

  std::vector<Partition> two = all_partitions(4, 2u);
  REQUIRE(two.size() == 7);
  for (const Partition& P : two) REQUIRE(P.size() == 2);
}
