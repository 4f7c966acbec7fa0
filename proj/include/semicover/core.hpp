#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace semicover {

using element_id = std::uint16_t;

/// Sentinel for "no element" in partial maps and optional element slots.
inline constexpr element_id kNoElement = 0xFFFF;

/// Largest supported semigroup order. Tables beyond this are rejected at
/// construction time.
inline constexpr unsigned kMaxOrder = 4096;

/// Subset of a fixed universe {0, ..., universe-1}, stored as a bit mask.
/// Universes of at most 64 elements live in a single inline word; larger
/// universes spill into a heap-allocated word array. Bits above the universe
/// size are always zero.
class SubsetMask {
 public:
  SubsetMask() = default;

  explicit SubsetMask(unsigned universe) : universe_(universe) {
    if (universe > kMaxOrder)
      throw std::invalid_argument("SubsetMask: universe exceeds kMaxOrder");
    if (word_count() > 1) spill_.assign(word_count(), 0);
  }

  static SubsetMask full(unsigned universe) {
    SubsetMask m(universe);
    auto* w = m.data();
    for (unsigned i = 0; i < m.word_count(); ++i) w[i] = ~std::uint64_t{0};
    m.clear_tail();
    return m;
  }

  static SubsetMask single(unsigned universe, unsigned x) {
    SubsetMask m(universe);
    m.add(x);
    return m;
  }

  static SubsetMask of(unsigned universe, std::initializer_list<unsigned> xs) {
    SubsetMask m(universe);
    for (unsigned x : xs) m.add(x);
    return m;
  }

  unsigned universe() const { return universe_; }

  bool contains(unsigned x) const {
    if (x >= universe_) return false;
    return (data()[x >> 6] >> (x & 63)) & 1u;
  }

  void add(unsigned x) {
    check_element(x);
    data()[x >> 6] |= std::uint64_t{1} << (x & 63);
  }

  void remove(unsigned x) {
    check_element(x);
    data()[x >> 6] &= ~(std::uint64_t{1} << (x & 63));
  }

  void clear() {
    auto* w = data();
    for (unsigned i = 0; i < word_count(); ++i) w[i] = 0;
  }

  unsigned count() const {
    unsigned total = 0;
    const auto* w = data();
    for (unsigned i = 0; i < word_count(); ++i)
      total += static_cast<unsigned>(std::popcount(w[i]));
    return total;
  }

  bool empty() const {
    const auto* w = data();
    for (unsigned i = 0; i < word_count(); ++i)
      if (w[i]) return false;
    return true;
  }

  /// Smallest element. Throws on the empty set.
  element_id first() const {
    const auto* w = data();
    for (unsigned i = 0; i < word_count(); ++i)
      if (w[i]) return static_cast<element_id>(i * 64 + std::countr_zero(w[i]));
    throw std::logic_error("SubsetMask::first on empty set");
  }

  bool intersects(const SubsetMask& o) const {
    check_universe(o);
    const auto* a = data();
    const auto* b = o.data();
    for (unsigned i = 0; i < word_count(); ++i)
      if (a[i] & b[i]) return true;
    return false;
  }

  bool is_subset_of(const SubsetMask& o) const {
    check_universe(o);
    const auto* a = data();
    const auto* b = o.data();
    for (unsigned i = 0; i < word_count(); ++i)
      if (a[i] & ~b[i]) return false;
    return true;
  }

  SubsetMask& operator|=(const SubsetMask& o) {
    check_universe(o);
    auto* a = data();
    const auto* b = o.data();
    for (unsigned i = 0; i < word_count(); ++i) a[i] |= b[i];
    return *this;
  }

  SubsetMask& operator&=(const SubsetMask& o) {
    check_universe(o);
    auto* a = data();
    const auto* b = o.data();
    for (unsigned i = 0; i < word_count(); ++i) a[i] &= b[i];
    return *this;
  }

  /// Removes every element of `o` from this set.
  SubsetMask& subtract(const SubsetMask& o) {
    check_universe(o);
    auto* a = data();
    const auto* b = o.data();
    for (unsigned i = 0; i < word_count(); ++i) a[i] &= ~b[i];
    return *this;
  }

  SubsetMask complement() const {
    SubsetMask r = full(universe_);
    r.subtract(*this);
    return r;
  }

  friend SubsetMask operator|(SubsetMask a, const SubsetMask& b) { return a |= b; }
  friend SubsetMask operator&(SubsetMask a, const SubsetMask& b) { return a &= b; }

  bool operator==(const SubsetMask& o) const {
    if (universe_ != o.universe_) return false;
    const auto* a = data();
    const auto* b = o.data();
    for (unsigned i = 0; i < word_count(); ++i)
      if (a[i] != b[i]) return false;
    return true;
  }

  /// Calls f(x) for each element in increasing order.
  template <typename F>
  void for_each(F&& f) const {
    const auto* w = data();
    for (unsigned i = 0; i < word_count(); ++i)
      for (std::uint64_t bits = w[i]; bits; bits &= bits - 1)
        f(static_cast<element_id>(i * 64 + std::countr_zero(bits)));
  }

  std::vector<element_id> elements() const {
    std::vector<element_id> out;
    out.reserve(count());
    for_each([&](element_id x) { out.push_back(x); });
    return out;
  }

  std::string to_string() const {
    std::string s = "{";
    bool sep = false;
    for_each([&](element_id x) {
      if (sep) s += ',';
      s += std::to_string(x);
      sep = true;
    });
    s += '}';
    return s;
  }

 private:
  unsigned word_count() const { return (universe_ + 63) / 64; }

  std::uint64_t* data() { return spill_.empty() ? &word0_ : spill_.data(); }
  const std::uint64_t* data() const {
    return spill_.empty() ? &word0_ : spill_.data();
  }

  void clear_tail() {
    unsigned tail = universe_ & 63;
    if (universe_ > 0 && tail != 0)
      data()[word_count() - 1] &= (std::uint64_t{1} << tail) - 1;
  }

  void check_element(unsigned x) const {
    if (x >= universe_)
      throw std::invalid_argument("SubsetMask: element " + std::to_string(x) +
                                  " outside universe of size " +
                                  std::to_string(universe_));
  }

  void check_universe(const SubsetMask& o) const {
    if (universe_ != o.universe_)
      throw std::invalid_argument("SubsetMask: universe mismatch");
  }

  unsigned universe_ = 0;
  std::uint64_t word0_ = 0;
  std::vector<std::uint64_t> spill_;
};

/// Compares two subsets as sorted element lists, lexicographically.
inline bool lex_less(const SubsetMask& a, const SubsetMask& b) {
  auto ea = a.elements();
  auto eb = b.elements();
  return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
}

/// Finite magma given by its multiplication table in row-major order:
/// product(i, j) is the entry in row i, column j. Associativity is not
/// assumed by the container itself; see validate_table.
class CayleyTable {
 public:
  CayleyTable(unsigned order, std::vector<element_id> products)
      : order_(order), products_(std::move(products)) {
    if (order_ == 0) throw std::invalid_argument("CayleyTable: order must be positive");
    if (order_ > kMaxOrder)
      throw std::invalid_argument("CayleyTable: order " + std::to_string(order_) +
                                  " exceeds limit " + std::to_string(kMaxOrder));
    if (products_.size() != static_cast<std::size_t>(order_) * order_)
      throw std::invalid_argument("CayleyTable: expected " +
                                  std::to_string(static_cast<std::size_t>(order_) * order_) +
                                  " products, got " + std::to_string(products_.size()));
    for (element_id p : products_)
      if (p >= order_)
        throw std::invalid_argument("CayleyTable: product " + std::to_string(p) +
                                    " out of range for order " + std::to_string(order_));
  }

  static CayleyTable from_rows(const std::vector<std::vector<unsigned>>& rows) {
    std::vector<element_id> flat;
    flat.reserve(rows.size() * rows.size());
    for (const auto& row : rows) {
      if (row.size() != rows.size())
        throw std::invalid_argument("CayleyTable: table is not square");
      for (unsigned v : row) flat.push_back(static_cast<element_id>(v));
    }
    return CayleyTable(static_cast<unsigned>(rows.size()), std::move(flat));
  }

  unsigned order() const { return order_; }

  element_id product(unsigned i, unsigned j) const {
    return products_[static_cast<std::size_t>(i) * order_ + j];
  }

  const std::vector<element_id>& products() const { return products_; }

  /// Table of the opposite magma: product'(i, j) = product(j, i).
  CayleyTable transposed() const {
    std::vector<element_id> flat(products_.size());
    for (unsigned i = 0; i < order_; ++i)
      for (unsigned j = 0; j < order_; ++j)
        flat[static_cast<std::size_t>(i) * order_ + j] = product(j, i);
    return CayleyTable(order_, std::move(flat));
  }

  SubsetMask full_mask() const { return SubsetMask::full(order_); }

  bool operator==(const CayleyTable&) const = default;

 private:
  unsigned order_;
  std::vector<element_id> products_;
};

/// Outcome of an associativity check. When ok is false, (a, b, c) is the
/// lexicographically first triple with (a*b)*c != a*(b*c).
struct TableCheck {
  bool ok = true;
  element_id a = 0;
  element_id b = 0;
  element_id c = 0;
  explicit operator bool() const { return ok; }
};

namespace detail {

inline TableCheck first_violation(const CayleyTable& t) {
  unsigned n = t.order();
  for (unsigned a = 0; a < n; ++a)
    for (unsigned b = 0; b < n; ++b) {
      element_id ab = t.product(a, b);
      for (unsigned c = 0; c < n; ++c)
        if (t.product(ab, c) != t.product(a, t.product(b, c)))
          return {false, static_cast<element_id>(a), static_cast<element_id>(b),
                  static_cast<element_id>(c)};
    }
  return {};
}

/// Closure of `gens` under right multiplication by `gens`. Built by
/// right-extension, which is the derivation order Light's test relies on.
inline SubsetMask right_closure(const CayleyTable& t,
                                const std::vector<element_id>& gens) {
  SubsetMask seen(t.order());
  std::vector<element_id> queue;
  for (element_id g : gens)
    if (!seen.contains(g)) {
      seen.add(g);
      queue.push_back(g);
    }
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (element_id g : gens) {
      element_id p = t.product(queue[head], g);
      if (!seen.contains(p)) {
        seen.add(p);
        queue.push_back(p);
      }
    }
  return seen;
}

} // namespace detail

/// Light's associativity test over the given generator set: checks
/// (x*g)*y == x*(g*y) for every generator g and all x, y. Sound whenever
/// `gens` generates the whole table under right-extension; callers must
/// ensure that (the hint overload below checks it). On failure the
/// full table is rescanned so the reported triple is the lexicographically
/// first violation.
inline TableCheck light_test(const CayleyTable& t,
                             const std::vector<element_id>& gens) {
  unsigned n = t.order();
  for (element_id g : gens)
    for (unsigned x = 0; x < n; ++x) {
      element_id xg = t.product(x, g);
      for (unsigned y = 0; y < n; ++y)
        if (t.product(xg, y) != t.product(x, t.product(g, y)))
          return detail::first_violation(t);
    }
  return {};
}

/// Associativity check over all elements.
inline TableCheck validate_table(const CayleyTable& t) {
  std::vector<element_id> all(t.order());
  for (unsigned i = 0; i < t.order(); ++i) all[i] = static_cast<element_id>(i);
  return light_test(t, all);
}

/// Associativity check with a generator hint. If the hint fails to generate
/// the whole table the check falls back to the cubic scan, so the result is
/// correct for any hint.
inline TableCheck validate_table(const CayleyTable& t,
                                 const std::vector<element_id>& generator_hint) {
  for (element_id g : generator_hint)
    if (g >= t.order())
      throw std::invalid_argument("validate_table: generator out of range");
  if (!generator_hint.empty() &&
      detail::right_closure(t, generator_hint) == t.full_mask())
    return light_test(t, generator_hint);
  return detail::first_violation(t);
}

/// a^-1 B = { x : a*x in B }.
inline SubsetMask left_quotient(element_id a, const SubsetMask& B,
                                const CayleyTable& t) {
  if (B.universe() != t.order())
    throw std::invalid_argument("left_quotient: universe mismatch");
  if (a >= t.order()) throw std::invalid_argument("left_quotient: element out of range");
  SubsetMask r(t.order());
  for (unsigned x = 0; x < t.order(); ++x)
    if (B.contains(t.product(a, x))) r.add(x);
  return r;
}

/// A^-1 B = union over a in A of a^-1 B.
inline SubsetMask set_quotient(const SubsetMask& A, const SubsetMask& B,
                               const CayleyTable& t) {
  SubsetMask r(t.order());
  A.for_each([&](element_id a) { r |= left_quotient(a, B, t); });
  return r;
}

/// A B = { a*b : a in A, b in B }.
inline SubsetMask subset_product(const SubsetMask& A, const SubsetMask& B,
                                 const CayleyTable& t) {
  if (A.universe() != t.order() || B.universe() != t.order())
    throw std::invalid_argument("subset_product: universe mismatch");
  SubsetMask r(t.order());
  A.for_each([&](element_id a) {
    B.for_each([&](element_id b) { r.add(t.product(a, b)); });
  });
  return r;
}

/// Elements a with a*x = a for all x.
inline SubsetMask find_left_zeros(const CayleyTable& t) {
  SubsetMask r(t.order());
  for (unsigned a = 0; a < t.order(); ++a) {
    bool zero = true;
    for (unsigned x = 0; x < t.order() && zero; ++x)
      zero = t.product(a, x) == a;
    if (zero) r.add(a);
  }
  return r;
}

/// Elements a with x*a = a for all x.
inline SubsetMask find_right_zeros(const CayleyTable& t) {
  SubsetMask r(t.order());
  for (unsigned a = 0; a < t.order(); ++a) {
    bool zero = true;
    for (unsigned x = 0; x < t.order() && zero; ++x)
      zero = t.product(x, a) == a;
    if (zero) r.add(a);
  }
  return r;
}

/// Elements e with e*e = e.
inline SubsetMask find_idempotents(const CayleyTable& t) {
  SubsetMask r(t.order());
  for (unsigned e = 0; e < t.order(); ++e)
    if (t.product(e, e) == e) r.add(e);
  return r;
}

/// Ordered partition of {0, ..., universe-1} into nonempty disjoint cells.
class Partition {
 public:
  static Partition from_cells(std::vector<SubsetMask> cells) {
    if (cells.empty()) throw std::invalid_argument("Partition: no cells");
    unsigned universe = cells.front().universe();
    SubsetMask seen(universe);
    for (const auto& c : cells) {
      if (c.universe() != universe)
        throw std::invalid_argument("Partition: cell universe mismatch");
      if (c.empty()) throw std::invalid_argument("Partition: empty cell");
      if (seen.intersects(c)) throw std::invalid_argument("Partition: cells overlap");
      seen |= c;
    }
    if (!(seen == SubsetMask::full(universe)))
      throw std::invalid_argument("Partition: cells do not cover the universe");
    return Partition(std::move(cells), universe);
  }

  /// Builds a partition from per-element labels and normalizes the labels to
  /// first-appearance order, so cell 0 contains element 0.
  static Partition from_code(const std::vector<unsigned>& labels) {
    if (labels.empty()) throw std::invalid_argument("Partition: empty code");
    unsigned universe = static_cast<unsigned>(labels.size());
    if (universe > kMaxOrder)
      throw std::invalid_argument("Partition: code exceeds kMaxOrder");
    std::vector<unsigned> remap;
    std::vector<unsigned> normal(universe);
    for (unsigned x = 0; x < universe; ++x) {
      unsigned lab = labels[x];
      unsigned idx = 0;
      while (idx < remap.size() && remap[idx] != lab) ++idx;
      if (idx == remap.size()) remap.push_back(lab);
      normal[x] = idx;
    }
    std::vector<SubsetMask> cells(remap.size(), SubsetMask(universe));
    for (unsigned x = 0; x < universe; ++x) cells[normal[x]].add(x);
    return Partition(std::move(cells), universe);
  }

  static Partition singletons(unsigned universe) {
    std::vector<unsigned> labels(universe);
    for (unsigned x = 0; x < universe; ++x) labels[x] = x;
    return from_code(labels);
  }

  static Partition whole(unsigned universe) {
    return from_code(std::vector<unsigned>(universe, 0));
  }

  /// Number of cells.
  unsigned size() const { return static_cast<unsigned>(cells_.size()); }
  unsigned universe() const { return universe_; }
  const SubsetMask& cell(unsigned i) const { return cells_.at(i); }
  const std::vector<SubsetMask>& cells() const { return cells_; }

  /// Per-element cell labels, in cell order.
  std::vector<unsigned> code() const {
    std::vector<unsigned> labels(universe_);
    for (unsigned i = 0; i < cells_.size(); ++i)
      cells_[i].for_each([&](element_id x) { labels[x] = i; });
    return labels;
  }

  bool operator==(const Partition&) const = default;

 private:
  Partition(std::vector<SubsetMask> cells, unsigned universe)
      : cells_(std::move(cells)), universe_(universe) {}

  std::vector<SubsetMask> cells_;
  unsigned universe_;
};

} // namespace semicover
