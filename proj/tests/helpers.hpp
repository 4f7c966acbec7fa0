#pragma once

#include <optional>
#include <random>
#include <vector>

#include <semicover/semicover.hpp>

namespace semicover::testing {

inline CayleyTable cyclic_table(unsigned n) {
  std::vector<element_id> p(static_cast<std::size_t>(n) * n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j)
      p[static_cast<std::size_t>(i) * n + j] = static_cast<element_id>((i + j) % n);
  return CayleyTable(n, std::move(p));
}

inline CayleyTable left_zero_table(unsigned n) {
  std::vector<element_id> p(static_cast<std::size_t>(n) * n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j)
      p[static_cast<std::size_t>(i) * n + j] = static_cast<element_id>(i);
  return CayleyTable(n, std::move(p));
}

inline CayleyTable right_zero_table(unsigned n) {
  std::vector<element_id> p(static_cast<std::size_t>(n) * n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j)
      p[static_cast<std::size_t>(i) * n + j] = static_cast<element_id>(j);
  return CayleyTable(n, std::move(p));
}

inline CayleyTable constant_table(unsigned n, element_id z = 0) {
  return CayleyTable(n, std::vector<element_id>(static_cast<std::size_t>(n) * n, z));
}

/// Z2 x (right-zero of size 2) with elements 0=(0,a), 1=(1,a), 2=(0,b),
/// 3=(1,b) and product (g,i)(h,j) = (g+h, j). The canonical small right
/// group that is neither a group nor right-zero.
inline CayleyTable z2_x_rz2() {
  return CayleyTable::from_rows({{0, 1, 2, 3}, {1, 0, 3, 2}, {0, 1, 2, 3}, {1, 0, 3, 2}});
}

inline std::vector<SubsetMask> all_nonempty_subsets(unsigned order) {
  std::vector<SubsetMask> out;
  out.reserve((1u << order) - 1);
  for (unsigned bits = 1; bits < (1u << order); ++bits) {
    SubsetMask m(order);
    for (unsigned x = 0; x < order; ++x)
      if (bits & (1u << x)) m.add(x);
    out.push_back(std::move(m));
  }
  return out;
}

/// Independent Delta formulation: { x : x^-1 A meets A }.
inline SubsetMask delta_oracle(const SubsetMask& A, const CayleyTable& t) {
  SubsetMask r(t.order());
  for (unsigned x = 0; x < t.order(); ++x)
    if (left_quotient(static_cast<element_id>(x), A, t).intersects(A))
      r.add(x);
  return r;
}

/// A A^-1 in a group table (requires one; callers assert is_group first).
inline SubsetMask group_difference_set(const SubsetMask& A, const CayleyTable& t) {
  GroupCheck gc = is_group(t);
  SubsetMask r(t.order());
  A.for_each([&](element_id a1) {
    A.for_each([&](element_id a2) { r.add(t.product(a1, gc.inverse[a2])); });
  });
  return r;
}

struct BruteCov {
  bool defined = false;
  std::optional<unsigned> value;
  std::optional<std::vector<element_id>> witness;
};

/// Exact cov by brute subset enumeration: k-subsets in lexicographic order of
/// their sorted element lists, smallest k first; the first cover found is the
/// lex-least minimum witness. Only sane for order <= ~12.
inline BruteCov cov_oracle(const SubsetMask& A, const CayleyTable& t) {
  unsigned n = t.order();
  std::vector<SubsetMask> rows;
  rows.reserve(n);
  SubsetMask reach(n);
  for (unsigned k = 0; k < n; ++k) {
    rows.push_back(left_quotient(static_cast<element_id>(k), A, t));
    reach |= rows.back();
  }
  BruteCov out;
  if (!(reach == t.full_mask())) return out;
  out.defined = true;
  for (unsigned k = 1; k <= n; ++k) {
    std::vector<unsigned> c(k);
    for (unsigned i = 0; i < k; ++i) c[i] = i;
    for (;;) {
      SubsetMask covered(n);
      for (unsigned idx : c) covered |= rows[idx];
      if (covered == t.full_mask()) {
        out.value = k;
        out.witness = std::vector<element_id>(c.begin(), c.end());
        return out;
      }
      // next k-combination of {0..n-1} in lex order
      int i = static_cast<int>(k) - 1;
      while (i >= 0 && c[i] == n - k + i) --i;
      if (i < 0) break;
      ++c[i];
      for (unsigned j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    }
  }
  return out; // unreachable when defined: X = S always covers
}

/// Deterministic RNG for sampled properties.
inline std::mt19937& rng() {
  static std::mt19937 gen(0x5eed5u);
  return gen;
}

inline std::vector<element_id> random_permutation(unsigned n) {
  std::vector<element_id> perm(n);
  for (unsigned i = 0; i < n; ++i) perm[i] = static_cast<element_id>(i);
  std::shuffle(perm.begin(), perm.end(), rng());
  return perm;
}

inline SubsetMask random_nonempty_subset(unsigned universe) {
  std::uniform_int_distribution<unsigned> bit(0, 1);
  for (;;) {
    SubsetMask m(universe);
    for (unsigned x = 0; x < universe; ++x)
      if (bit(rng())) m.add(x);
    if (!m.empty()) return m;
  }
}

} // namespace semicover::testing
