#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "semicover/core.hpp"

namespace semicover {

/// Delta(A) = { x : xA meets A }. Always contains every idempotent of A and,
/// in particular, is nonempty whenever A is (in a group it equals A A^-1).
inline SubsetMask delta(const SubsetMask& A, const CayleyTable& t) {
  if (A.universe() != t.order())
    throw std::invalid_argument("delta: universe mismatch");
  SubsetMask r(t.order());
  for (unsigned x = 0; x < t.order(); ++x) {
    bool meets = false;
    A.for_each([&](element_id a) {
      if (!meets && A.contains(t.product(x, a))) meets = true;
    });
    if (meets) r.add(x);
  }
  return r;
}

/// Covering number of A: the least |X| with X^-1 A = S, together with the
/// lexicographically smallest minimum witness X. Defined only when
/// S^-1 A = S, i.e. every row of the table meets A somewhere; otherwise
/// `defined` is false and the optionals are empty.
struct CovResult {
  bool defined = false;
  std::optional<unsigned> value;
  std::optional<SubsetMask> witness;
};

enum class CovMode {
  Exact,       // branch-and-bound minimum plus lex-least witness
  GreedyUpper, // greedy cover only; value is an upper bound
};

namespace detail {

/// Set-cover instance: candidate k covers the elements of rows[k], and a
/// cover must hit every element of the (full) universe.
struct CoverRows {
  std::vector<SubsetMask> rows; // indexed by element id
  unsigned order = 0;
};

inline CoverRows cover_rows(const SubsetMask& A, const CayleyTable& t) {
  CoverRows cr;
  cr.order = t.order();
  cr.rows.reserve(cr.order);
  for (unsigned k = 0; k < cr.order; ++k)
    cr.rows.push_back(left_quotient(static_cast<element_id>(k), A, t));
  return cr;
}

/// Greedy cover; ties broken by smallest candidate id. Requires the instance
/// to be coverable.
inline std::vector<element_id> greedy_cover(const CoverRows& cr) {
  SubsetMask uncovered = SubsetMask::full(cr.order);
  std::vector<element_id> chosen;
  while (!uncovered.empty()) {
    unsigned best_gain = 0;
    unsigned best_k = cr.order;
    for (unsigned k = 0; k < cr.order; ++k) {
      unsigned gain = (cr.rows[k] & uncovered).count();
      if (gain > best_gain) {
        best_gain = gain;
        best_k = k;
      }
    }
    if (best_k == cr.order)
      throw std::logic_error("greedy_cover: instance is not coverable");
    chosen.push_back(static_cast<element_id>(best_k));
    uncovered.subtract(cr.rows[best_k]);
  }
  return chosen;
}

/// Branch-and-bound minimum cover size. Branches on the uncovered element
/// with the fewest covering candidates; prunes with the bound
/// depth + ceil(|uncovered| / max residual row size).
class CoverSolver {
 public:
  explicit CoverSolver(const CoverRows& cr) : cr_(cr) {
    coverers_.assign(cr.order, SubsetMask(cr.order));
    for (unsigned k = 0; k < cr.order; ++k)
      cr.rows[k].for_each([&](element_id x) { coverers_[x].add(k); });
  }

  unsigned minimum(unsigned upper_bound) {
    best_ = upper_bound;
    descend(SubsetMask(cr_.order), 0, 0);
    return best_;
  }

  /// True when some cover of size at most `budget` exists using only
  /// candidates with id >= min_candidate, on top of `covered`.
  bool feasible(const SubsetMask& covered, unsigned budget, unsigned min_candidate) {
    best_ = budget + 1;
    descend(covered, 0, min_candidate);
    return best_ <= budget;
  }

 private:
  void descend(const SubsetMask& covered, unsigned depth, unsigned min_candidate) {
    if (depth >= best_) return;
    SubsetMask uncovered = covered.complement();
    if (uncovered.empty()) {
      best_ = depth;
      return;
    }
    unsigned remaining = uncovered.count();
    unsigned widest = 0;
    for (unsigned k = min_candidate; k < cr_.order; ++k) {
      unsigned gain = (cr_.rows[k] & uncovered).count();
      if (gain > widest) widest = gain;
    }
    if (widest == 0) return;
    unsigned lb = (remaining + widest - 1) / widest;
    if (depth + lb >= best_) return;

    unsigned branch_x = cr_.order;
    unsigned branch_n = cr_.order + 1;
    SubsetMask allowed(cr_.order);
    for (unsigned k = min_candidate; k < cr_.order; ++k) allowed.add(k);
    uncovered.for_each([&](element_id x) {
      unsigned n = (coverers_[x] & allowed).count();
      if (n < branch_n) {
        branch_n = n;
        branch_x = x;
      }
    });
    if (branch_n == 0) return; // some element has no remaining coverer
    (coverers_[branch_x] & allowed).for_each([&](element_id k) {
      descend(covered | cr_.rows[k], depth + 1, min_candidate);
    });
  }

  const CoverRows& cr_;
  std::vector<SubsetMask> coverers_; // coverers_[x] = candidates whose row contains x
  unsigned best_ = 0;
};

/// Lexicographically least minimum cover, as a sorted candidate list. The
/// prefix is grown greedily; each choice is validated by an exact feasibility
/// query restricted to strictly larger candidate ids, which is what makes the
/// grown prefix the set's smallest elements.
inline std::vector<element_id> lex_min_cover(const CoverRows& cr, unsigned size) {
  CoverSolver solver(cr);
  std::vector<element_id> chosen;
  SubsetMask covered(cr.order);
  unsigned from = 0;
  for (unsigned slot = 0; slot < size; ++slot) {
    bool placed = false;
    for (unsigned k = from; k < cr.order && !placed; ++k) {
      SubsetMask next = covered | cr.rows[k];
      if (next.complement().empty() || solver.feasible(next, size - slot - 1, k + 1)) {
        chosen.push_back(static_cast<element_id>(k));
        covered = next;
        from = k + 1;
        placed = true;
      }
    }
    if (!placed) throw std::logic_error("lex_min_cover: no completion at claimed size");
    if (covered.complement().empty()) break;
  }
  if (!covered.complement().empty())
    throw std::logic_error("lex_min_cover: cover incomplete at claimed size");
  return chosen;
}

} // namespace detail

inline CovResult cov(const SubsetMask& A, const CayleyTable& t,
                     CovMode mode = CovMode::Exact) {
  if (A.universe() != t.order()) throw std::invalid_argument("cov: universe mismatch");
  CovResult res;
  if (A.empty()) return res;
  detail::CoverRows cr = detail::cover_rows(A, t);
  SubsetMask reach(t.order());
  for (const auto& row : cr.rows) reach |= row;
  if (!(reach == t.full_mask())) return res; // S^-1 A != S: cov undefined
  res.defined = true;

  std::vector<element_id> greedy = detail::greedy_cover(cr);
  if (mode == CovMode::GreedyUpper) {
    SubsetMask w(t.order());
    for (element_id k : greedy) w.add(k);
    res.value = static_cast<unsigned>(greedy.size());
    res.witness = std::move(w);
    return res;
  }

  detail::CoverSolver solver(cr);
  unsigned optimum = solver.minimum(static_cast<unsigned>(greedy.size()));
  std::vector<element_id> lex = detail::lex_min_cover(cr, optimum);
  SubsetMask w(t.order());
  for (element_id k : lex) w.add(k);
  res.value = optimum;
  res.witness = std::move(w);
  return res;
}

/// Which construction produced a cover witness. Certificates are
/// self-contained: checking one never reruns the producing construction.
enum class Provenance {
  Theorem1,    // iterated quotient-chain construction (doubly exponential bound)
  Theorem2,    // minimal right ideal + group transfer (bound: cell count)
  Theorem3,    // one-element witness from a left or right zero
  ExactSolver,
  External,
};

inline const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Theorem1: return "theorem1";
    case Provenance::Theorem2: return "theorem2";
    case Provenance::Theorem3: return "theorem3";
    case Provenance::ExactSolver: return "exact-solver";
    case Provenance::External: return "external";
  }
  return "unknown";
}

inline std::optional<Provenance> provenance_from_name(const std::string& s) {
  for (Provenance p : {Provenance::Theorem1, Provenance::Theorem2,
                       Provenance::Theorem3, Provenance::ExactSolver,
                       Provenance::External})
    if (s == provenance_name(p)) return p;
  return std::nullopt;
}

/// Claim: for cell `cell_index` of some partition, K^-1 Delta(cell) = S and
/// |K| <= bound_claimed.
struct CoverCertificate {
  unsigned cell_index = 0;
  std::vector<element_id> witness;
  std::uint64_t bound_claimed = 0;
  Provenance provenance = Provenance::External;

  bool operator==(const CoverCertificate&) const = default;
};

/// Outcome of checking a certificate. On failure `reason` says what broke and
/// `uncovered` (when set) is an element outside K^-1 Delta(A).
struct CoverCheck {
  bool ok = true;
  std::string reason;
  std::optional<element_id> uncovered;
  explicit operator bool() const { return ok; }
};

/// Checks K^-1 Delta(A) = S and |K| <= bound directly from the table.
inline CoverCheck verify_cover_subset(const std::vector<element_id>& K,
                                      std::uint64_t bound, const SubsetMask& A,
                                      const CayleyTable& t) {
  if (A.universe() != t.order()) return {false, "universe mismatch", std::nullopt};
  if (A.empty()) return {false, "empty target set", std::nullopt};
  if (K.empty()) return {false, "empty witness", std::nullopt};
  if (K.size() > bound)
    return {false, "witness larger than claimed bound", std::nullopt};
  for (element_id k : K)
    if (k >= t.order()) return {false, "witness element out of range", std::nullopt};
  SubsetMask D = delta(A, t);
  SubsetMask covered(t.order());
  for (element_id k : K) covered |= left_quotient(k, D, t);
  if (!(covered == t.full_mask())) {
    SubsetMask missing = covered.complement();
    return {false, "witness does not cover", missing.first()};
  }
  return {};
}

inline CoverCheck verify_cover(const CoverCertificate& cert, const Partition& P,
                               const CayleyTable& t) {
  if (cert.cell_index >= P.size())
    return {false, "cell index out of range", std::nullopt};
  return verify_cover_subset(cert.witness, cert.bound_claimed,
                             P.cell(cert.cell_index), t);
}

/// Exact cov of Delta(cell) for every cell, plus the best (smallest) defined
/// value and the first cell attaining it.
struct CellCovSummary {
  std::vector<CovResult> per_cell;
  std::optional<unsigned> best_cell;
  std::optional<unsigned> best_value;
};

inline CellCovSummary min_cov_over_cells(const Partition& P, const CayleyTable& t) {
  CellCovSummary s;
  s.per_cell.reserve(P.size());
  for (unsigned i = 0; i < P.size(); ++i) {
    CovResult r = cov(delta(P.cell(i), t), t);
    if (r.defined && (!s.best_value || *r.value < *s.best_value)) {
      s.best_value = *r.value;
      s.best_cell = i;
    }
    s.per_cell.push_back(std::move(r));
  }
  return s;
}

} // namespace semicover
