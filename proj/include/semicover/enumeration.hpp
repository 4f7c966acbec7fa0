#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "semicover/core.hpp"

namespace semicover {

/// Hard cap for exhaustive semigroup generation; class counts explode beyond
/// this (order 7 runs to the billions).
inline constexpr unsigned kMaxEnumOrder = 6;

/// Orders small enough to canonicalize by brute permutation minimization.
inline constexpr unsigned kMaxKeyOrder = 8;

/// Relabeling-invariant normal form of a table: the lexicographically least
/// row-major product vector over all permutations of the elements. Two tables
/// have equal keys exactly when they are isomorphic.
struct CanonicalKey {
  unsigned order = 0;
  std::vector<element_id> bytes;

  std::string to_string() const {
    std::string s = std::to_string(order);
    s += ':';
    for (std::size_t i = 0; i < bytes.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(bytes[i]);
    }
    return s;
  }

  static CanonicalKey parse(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("CanonicalKey: missing ':' in '" + s + "'");
    CanonicalKey key;
    std::size_t pos = 0;
    auto read_uint = [&s](std::size_t from, std::size_t to) -> unsigned long {
      if (from == to) throw std::invalid_argument("CanonicalKey: empty number");
      unsigned long v = 0;
      for (std::size_t i = from; i < to; ++i) {
        if (s[i] < '0' || s[i] > '9')
          throw std::invalid_argument("CanonicalKey: bad character in '" + s + "'");
        v = v * 10 + static_cast<unsigned long>(s[i] - '0');
        if (v > kMaxOrder) throw std::invalid_argument("CanonicalKey: number too large");
      }
      return v;
    };
    key.order = static_cast<unsigned>(read_uint(0, colon));
    pos = colon + 1;
    while (pos <= s.size()) {
      auto comma = s.find(',', pos);
      std::size_t end = comma == std::string::npos ? s.size() : comma;
      key.bytes.push_back(static_cast<element_id>(read_uint(pos, end)));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    key.to_table(); // validates order/entry ranges and shape
    return key;
  }

  CayleyTable to_table() const { return CayleyTable(order, bytes); }

  auto operator<=>(const CanonicalKey&) const = default;
};

/// Image of a table under an element relabeling: perm maps old ids to new.
inline CayleyTable relabel(const CayleyTable& t, const std::vector<element_id>& perm) {
  unsigned n = t.order();
  if (perm.size() != n) throw std::invalid_argument("relabel: permutation size mismatch");
  SubsetMask hit(n);
  for (element_id p : perm) hit.add(p); // add() rejects out-of-range images
  if (hit.count() != n) throw std::invalid_argument("relabel: not a permutation");
  std::vector<element_id> out(static_cast<std::size_t>(n) * n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j)
      out[static_cast<std::size_t>(perm[i]) * n + perm[j]] = perm[t.product(i, j)];
  return CayleyTable(n, std::move(out));
}

inline SubsetMask relabel(const SubsetMask& m, const std::vector<element_id>& perm) {
  if (perm.size() != m.universe())
    throw std::invalid_argument("relabel: permutation size mismatch");
  SubsetMask out(m.universe());
  m.for_each([&](element_id x) { out.add(perm[x]); });
  return out;
}

/// Image of a partition under a relabeling, with cells renumbered to
/// first-appearance order over the new element names.
inline Partition relabel(const Partition& p, const std::vector<element_id>& perm) {
  if (perm.size() != p.universe())
    throw std::invalid_argument("relabel: permutation size mismatch");
  std::vector<unsigned> labels(p.universe());
  std::vector<unsigned> old = p.code();
  for (unsigned x = 0; x < p.universe(); ++x) labels[perm[x]] = old[x];
  return Partition::from_code(labels);
}

inline CanonicalKey canonical_key(const CayleyTable& t) {
  unsigned n = t.order();
  if (n > kMaxKeyOrder)
    throw std::invalid_argument("canonical_key: order exceeds kMaxKeyOrder");
  std::vector<element_id> perm(n);
  std::iota(perm.begin(), perm.end(), element_id{0});
  std::vector<element_id> best;
  std::vector<element_id> cand(static_cast<std::size_t>(n) * n);
  do {
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j)
        cand[static_cast<std::size_t>(perm[i]) * n + perm[j]] = perm[t.product(i, j)];
    if (best.empty() || cand < best) best = cand;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {n, std::move(best)};
}

namespace detail {

/// Row-major backtracking generator of all associative tables of a given
/// order. After each placement, every product triple whose four lookups just
/// became complete is checked, so leaves are exactly the associative tables
/// (partial checks only ever prune, never miss: a triple (a,b,y) needs the
/// entries at (a,b), (a*b,y), (b,y) and (a,(b*y)), and the check below fires
/// for whichever of those positions is filled last).
class SemigroupEnumerator {
 public:
  explicit SemigroupEnumerator(unsigned n)
      : n_(n), tab_(static_cast<std::size_t>(n) * n, kNoElement) {}

  template <typename Emit>
  void run(Emit&& emit) {
    descend(0, emit);
  }

 private:
  element_id at(unsigned i, unsigned j) const { return tab_[i * n_ + j]; }
  static bool known(element_id v) { return v != kNoElement; }

  /// Checks all triples that the entry at (i, j) can complete.
  bool still_associative(unsigned i, unsigned j) const {
    element_id v = at(i, j);
    // (i, j) as the leading pair of (i, j, y): compare (i*j)*y with i*(j*y).
    for (unsigned y = 0; y < n_; ++y) {
      element_id q = at(j, y);
      if (!known(q)) continue;
      element_id l = at(v, y);
      element_id r = at(i, q);
      if (known(l) && known(r) && l != r) return false;
    }
    // (i, j) as (a*b, y): for every (a, b) with a*b = i, compare v with a*(b*j).
    for (unsigned a = 0; a < n_; ++a)
      for (unsigned b = 0; b < n_; ++b) {
        if (at(a, b) != i) continue;
        element_id q = at(b, j);
        if (!known(q)) continue;
        element_id r = at(a, q);
        if (known(r) && r != v) return false;
      }
    // (i, j) as the trailing pair of (a, i, j): compare (a*i)*j with a*(i*j).
    for (unsigned a = 0; a < n_; ++a) {
      element_id p = at(a, i);
      if (!known(p)) continue;
      element_id l = at(p, j);
      element_id r = at(a, v);
      if (known(l) && known(r) && l != r) return false;
    }
    // (i, j) as (a, b*y): for every (b, y) with b*y = j, compare (i*b)*y with v.
    for (unsigned b = 0; b < n_; ++b)
      for (unsigned y = 0; y < n_; ++y) {
        if (at(b, y) != j) continue;
        element_id p = at(i, b);
        if (!known(p)) continue;
        element_id l = at(p, y);
        if (known(l) && l != v) return false;
      }
    return true;
  }

  template <typename Emit>
  void descend(unsigned pos, Emit& emit) {
    if (pos == n_ * n_) {
      emit(tab_);
      return;
    }
    unsigned i = pos / n_;
    unsigned j = pos % n_;
    for (unsigned c = 0; c < n_; ++c) {
      tab_[pos] = static_cast<element_id>(c);
      if (still_associative(i, j)) descend(pos + 1, emit);
    }
    tab_[pos] = kNoElement;
  }

  unsigned n_;
  std::vector<element_id> tab_;
};

} // namespace detail

struct EnumOptions {
  bool up_to_iso = true;
  /// With up_to_iso, additionally collapse a class with the class of its
  /// transpose. Off by default: the transpose does NOT preserve Delta (it is
  /// defined through left multiplication), so consumers that enable this must
  /// evaluate both a representative and its transpose.
  bool anti_iso_dedup = false;
};

/// Streams semigroups of the given order in a fixed deterministic sequence:
/// the lexicographic order of their row-major tables. With up_to_iso, emits
/// exactly the canonical representative of each isomorphism class.
template <typename Visit>
void for_each_semigroup(unsigned order, const EnumOptions& opts, Visit&& visit) {
  if (order == 0 || order > kMaxEnumOrder)
    throw std::invalid_argument("for_each_semigroup: order must be in [1, " +
                                std::to_string(kMaxEnumOrder) + "]");
  detail::SemigroupEnumerator gen(order);
  gen.run([&](const std::vector<element_id>& tab) {
    CayleyTable t(order, tab);
    if (opts.up_to_iso) {
      if (canonical_key(t).bytes != tab) return;
      if (opts.anti_iso_dedup && canonical_key(t.transposed()).bytes < tab) return;
    }
    visit(t);
  });
}

inline std::vector<CayleyTable> all_semigroups(unsigned order,
                                               const EnumOptions& opts = {}) {
  std::vector<CayleyTable> out;
  for_each_semigroup(order, opts, [&](const CayleyTable& t) { out.push_back(t); });
  return out;
}

/// Streams partitions of {0,...,order-1} in restricted-growth-string order.
/// With exact_cells set, only partitions with that many cells are emitted;
/// otherwise cell counts 1..order are streamed in turn (Bell-number total).
template <typename Visit>
void for_each_partition(unsigned order, std::optional<unsigned> exact_cells,
                        Visit&& visit) {
  if (order == 0 || order > kMaxOrder)
    throw std::invalid_argument("for_each_partition: bad order");
  if (exact_cells && (*exact_cells == 0 || *exact_cells > order))
    throw std::invalid_argument("for_each_partition: cell count out of range");
  std::vector<unsigned> labels(order, 0);
  auto emit_for = [&](unsigned want) {
    auto rec = [&](auto&& self, unsigned pos, unsigned maxlab) -> void {
      if (pos == order) {
        if (maxlab + 1 == want) visit(Partition::from_code(labels));
        return;
      }
      unsigned cap = std::min(maxlab + 1, want - 1);
      for (unsigned l = 0; l <= cap; ++l) {
        labels[pos] = l;
        self(self, pos + 1, std::max(maxlab, l));
      }
    };
    rec(rec, 1, 0);
  };
  if (exact_cells) {
    emit_for(*exact_cells);
  } else {
    for (unsigned want = 1; want <= order; ++want) emit_for(want);
  }
}

inline std::vector<Partition> all_partitions(
    unsigned order, std::optional<unsigned> exact_cells = std::nullopt) {
  std::vector<Partition> out;
  for_each_partition(order, exact_cells, [&](const Partition& p) { out.push_back(p); });
  return out;
}

} // namespace semicover
