#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "semicover/core.hpp"
#include "semicover/delta.hpp"
#include "semicover/structure.hpp"

namespace semicover {

using Bignum = boost::multiprecision::cpp_int;

/// Witness-size bound for the quotient-chain construction:
/// f(1, m) = m, f(k+1, m) = f(k, m + m^2). Doubly exponential, hence the
/// arbitrary-precision value.
struct FBound {
  unsigned n = 1;
  Bignum m = 1;
  Bignum value = 1;
};

/// 2^(2^(n-1)-1) * m^(2^(n-1)), the closed-form cap on f(n, m).
/// Supported for n <= 32 (beyond that the exponent alone overflows memory).
inline Bignum f_bound_cap(unsigned n, const Bignum& m) {
  if (n == 0 || n > 32)
    throw std::invalid_argument("f_bound_cap: n out of supported range");
  unsigned e = (1u << (n - 1)) - 1;
  Bignum cap = Bignum(1) << e;
  cap *= pow(m, e + 1);
  return cap;
}

inline FBound f_bound(unsigned n, const Bignum& m) {
  if (n == 0) throw std::invalid_argument("f_bound: n must be positive");
  if (m <= 0) throw std::invalid_argument("f_bound: m must be positive");
  FBound fb;
  fb.n = n;
  fb.m = m;
  fb.value = m;
  for (unsigned k = 1; k < n; ++k) fb.value += fb.value * fb.value;
  if (n <= 32 && fb.value > f_bound_cap(n, m))
    throw std::logic_error("f_bound: value exceeds its closed-form cap");
  return fb;
}

/// Saturating conversion for certificate bounds; exact values beyond 2^64-1
/// stay available through the trace's claimed_bound.
inline std::uint64_t to_saturated_u64(const Bignum& v) {
  static const Bignum kMax = (Bignum(1) << 64) - 1;
  if (v >= kMax) return ~std::uint64_t{0};
  return static_cast<std::uint64_t>(v);
}

enum class TraceCase { Base, Case1, Case2 };

inline const char* trace_case_name(TraceCase c) {
  switch (c) {
    case TraceCase::Base: return "base";
    case TraceCase::Case1: return "case1";
    case TraceCase::Case2: return "case2";
  }
  return "unknown";
}

inline std::optional<TraceCase> trace_case_from_name(const std::string& s) {
  for (TraceCase c : {TraceCase::Base, TraceCase::Case1, TraceCase::Case2})
    if (s == trace_case_name(c)) return c;
  return std::nullopt;
}

/// One step of the quotient-chain recursion. g is the chosen shift for case1
/// and kNoElement otherwise; sizes refer to the working witness set F.
struct TraceStep {
  TraceCase kind = TraceCase::Base;
  element_id g = kNoElement;
  std::uint64_t f_size_before = 0;
  std::uint64_t f_size_after = 0;

  bool operator==(const TraceStep&) const = default;
};

/// Full audit trail of a quotient-chain run: the steps taken, the certificate
/// they end in, and the exact f(n, |F0|) bound the construction promises.
struct WitnessTrace {
  std::vector<TraceStep> steps;
  CoverCertificate certificate;
  Bignum claimed_bound = 0;
};

namespace detail {

inline SubsetMask union_of(const std::vector<SubsetMask>& cells, unsigned from,
                           unsigned universe) {
  SubsetMask u(universe);
  for (unsigned i = from; i < cells.size(); ++i) u |= cells[i];
  return u;
}

/// F' = F union { h*g*f : h, f in F }. Element-level because
/// (h*g*f)^-1 B = f^-1 g^-1 h^-1 B, so growing F this way is exactly
/// composing quotient chains.
inline SubsetMask grow_case1(const SubsetMask& F, element_id g,
                             const CayleyTable& t) {
  SubsetMask out = F;
  F.for_each([&](element_id h) {
    element_id hg = t.product(h, g);
    F.for_each([&](element_id f) { out.add(t.product(hg, f)); });
  });
  return out;
}

/// Smallest g with g * cell subset of Q, or kNoElement.
inline element_id find_case1_shift(const SubsetMask& cell, const SubsetMask& Q,
                                   const CayleyTable& t) {
  for (unsigned g = 0; g < t.order(); ++g) {
    bool inside = true;
    cell.for_each([&](element_id a) {
      if (inside && !Q.contains(t.product(static_cast<element_id>(g), a)))
        inside = false;
    });
    if (inside) return static_cast<element_id>(g);
  }
  return kNoElement;
}

} // namespace detail

/// Quotient-chain construction over an ordered cell list, generalized to an
/// arbitrary starting witness set F0 (size m). Precondition, checked:
/// S = F0^-1 (union of cells). Maintains that invariant while consuming
/// cells in order:
///   - single cell left: S = F^-1 A, which already forces S = F^-1 Delta(A)
///     (for any x and a in A, the solver of f*(x*a) in A shows f*x in
///     Delta(A)); return (that cell, F).
///   - case 1: some g has g*A1 inside F^-1(rest); then
///     F' = F + F g F re-establishes S = F'^-1 (rest) and we drop A1.
///     |F'| <= |F| + |F|^2, which is where the f recursion comes from.
///   - case 2: no such g; then every x has x*A1 meeting F^-1 A1, so
///     S = F^-1 Delta(A1) already; return (first remaining cell, F).
/// The certificate is verified before returning; |K| <= f(#cells, |F0|).
inline WitnessTrace witness_star(const SubsetMask& F0,
                                 const std::vector<SubsetMask>& cells,
                                 const CayleyTable& t) {
  if (cells.empty()) throw std::invalid_argument("witness_star: no cells");
  if (F0.universe() != t.order() || F0.empty())
    throw std::invalid_argument("witness_star: bad starting set");
  for (const auto& c : cells) {
    if (c.universe() != t.order())
      throw std::invalid_argument("witness_star: cell universe mismatch");
    if (c.empty()) throw std::invalid_argument("witness_star: empty cell");
  }

  WitnessTrace trace;
  trace.claimed_bound =
      f_bound(static_cast<unsigned>(cells.size()), Bignum(F0.count())).value;

  SubsetMask F = F0;
  const SubsetMask full = t.full_mask();
  unsigned idx = 0;
  unsigned final_cell = 0;
  for (;;) {
    // Entry invariant: S = F^-1 (union of remaining cells).
    SubsetMask remaining = detail::union_of(cells, idx, t.order());
    if (!(set_quotient(F, remaining, t) == full)) {
      if (idx == 0)
        throw std::invalid_argument(
            "witness_star: S != F0^-1 (union of cells)");
      throw std::logic_error("witness_star: recursion invariant lost");
    }

    if (idx + 1 == cells.size()) {
      trace.steps.push_back(
          {TraceCase::Base, kNoElement, F.count(), F.count()});
      final_cell = idx;
      break;
    }

    SubsetMask tail = detail::union_of(cells, idx + 1, t.order());
    SubsetMask Q = set_quotient(F, tail, t);
    element_id g = detail::find_case1_shift(cells[idx], Q, t);
    if (g != kNoElement) {
      std::uint64_t before = F.count();
      F = detail::grow_case1(F, g, t);
      if (F.count() > before + before * before)
        throw std::logic_error("witness_star: case1 growth bound violated");
      trace.steps.push_back({TraceCase::Case1, g, before, F.count()});
      ++idx;
    } else {
      trace.steps.push_back(
          {TraceCase::Case2, kNoElement, F.count(), F.count()});
      final_cell = idx;
      break;
    }
  }

  trace.certificate.cell_index = final_cell;
  trace.certificate.witness = F.elements();
  trace.certificate.bound_claimed = to_saturated_u64(trace.claimed_bound);
  trace.certificate.provenance = Provenance::Theorem1;
  if (Bignum(F.count()) > trace.claimed_bound)
    throw std::logic_error("witness_star: |K| exceeds f bound");
  CoverCheck check = verify_cover_subset(trace.certificate.witness,
                                         trace.certificate.bound_claimed,
                                         cells[final_cell], t);
  if (!check)
    throw std::logic_error("witness_star: certificate failed verification: " +
                           check.reason);
  return trace;
}

/// Quotient-chain witness for a partition: always succeeds on a valid finite
/// table, returning a verified certificate with |K| <= f(n, 1) where n is the
/// cell count. Starting set is {0}; cells are consumed in partition order.
inline WitnessTrace witness_theorem1(const Partition& P, const CayleyTable& t) {
  if (P.universe() != t.order())
    throw std::invalid_argument("witness_theorem1: partition/table mismatch");
  return witness_star(SubsetMask::single(t.order(), 0), P.cells(), t);
}

/// Replays a trace against its inputs: re-checks the entry invariant, each
/// step's guard (case1: recorded g works and is smallest; case2: no shift
/// exists), the F growth, and that the final certificate matches. Returns
/// false with a reason on any mismatch.
struct TraceCheck {
  bool ok = true;
  std::string reason;
  explicit operator bool() const { return ok; }
};

inline TraceCheck verify_trace(const WitnessTrace& trace, const SubsetMask& F0,
                               const std::vector<SubsetMask>& cells,
                               const CayleyTable& t) {
  auto fail = [](std::string r) { return TraceCheck{false, std::move(r)}; };
  if (trace.steps.empty()) return fail("empty trace");
  SubsetMask F = F0;
  const SubsetMask full = t.full_mask();
  unsigned idx = 0;
  for (std::size_t s = 0; s < trace.steps.size(); ++s) {
    const TraceStep& step = trace.steps[s];
    if (idx >= cells.size()) return fail("trace longer than cell list");
    if (!(set_quotient(F, detail::union_of(cells, idx, t.order()), t) == full))
      return fail("entry invariant fails at step " + std::to_string(s));
    if (step.f_size_before != F.count())
      return fail("size-before mismatch at step " + std::to_string(s));
    bool last = s + 1 == trace.steps.size();
    SubsetMask tail = detail::union_of(cells, idx + 1, t.order());
    element_id smallest =
        idx + 1 == cells.size()
            ? kNoElement
            : detail::find_case1_shift(cells[idx], set_quotient(F, tail, t), t);
    switch (step.kind) {
      case TraceCase::Base:
        if (!last) return fail("base step before end of trace");
        if (idx + 1 != cells.size()) return fail("base step with cells left");
        if (step.f_size_after != F.count()) return fail("base size mismatch");
        break;
      case TraceCase::Case1: {
        if (last) return fail("trace ends on case1");
        if (idx + 1 == cells.size()) return fail("case1 on final cell");
        if (step.g != smallest) return fail("case1 shift is not the smallest admissible g");
        std::uint64_t before = F.count();
        F = detail::grow_case1(F, step.g, t);
        if (step.f_size_after != F.count()) return fail("case1 size mismatch");
        if (F.count() > before + before * before) return fail("case1 growth bound violated");
        ++idx;
        break;
      }
      case TraceCase::Case2:
        if (!last) return fail("case2 step before end of trace");
        if (smallest != kNoElement) return fail("case2 recorded but a shift exists");
        if (step.f_size_after != F.count()) return fail("case2 size mismatch");
        break;
    }
  }
  const TraceStep& endstep = trace.steps.back();
  unsigned claimed_cell = trace.certificate.cell_index;
  if (endstep.kind == TraceCase::Case1) return fail("trace ends on case1");
  if (claimed_cell != idx) return fail("certificate cell does not match trace end");
  if (trace.certificate.witness != F.elements())
    return fail("certificate witness does not match final F");
  if (Bignum(F.count()) > trace.claimed_bound) return fail("final F exceeds claimed bound");
  CoverCheck cover = verify_cover_subset(trace.certificate.witness,
                                         trace.certificate.bound_claimed,
                                         cells[claimed_cell], t);
  if (!cover) return fail("certificate fails cover check: " + cover.reason);
  return {};
}

/// Ideal-transfer witness for a partition of a finite semigroup: a verified
/// certificate with |K| <= n (the cell count). Pipeline: take the minimal
/// right ideal R with r its smallest element, decompose R as group H x
/// right-zero E, intersect cells with H, pick the largest trace B_j, pack
/// disjoint left translates of B_j greedily into H, invert the translate
/// representatives to get a cover of H, and lift it back to S through r.
inline CoverCertificate witness_theorem2(const Partition& P,
                                         const CayleyTable& t) {
  if (P.universe() != t.order())
    throw std::invalid_argument("witness_theorem2: partition/table mismatch");
  SubsetMask R = minimal_right_ideal(t);
  RightGroupDecomposition d = decompose_right_group(R, t);

  // Traces of the cells on H. H is inside S = union of cells, so some trace
  // is nonempty; j maximizes |B_j| (ties to the smallest cell index).
  unsigned j = P.size();
  unsigned best_size = 0;
  unsigned nonempty = 0;
  for (unsigned i = 0; i < P.size(); ++i) {
    unsigned sz = (P.cell(i) & d.H).count();
    if (sz > 0) ++nonempty;
    if (sz > best_size) {
      best_size = sz;
      j = i;
    }
  }
  if (j == P.size())
    throw std::logic_error("witness_theorem2: no cell meets H");
  SubsetMask Bj = P.cell(j) & d.H;

  // Greedy disjoint translates: h joins F when h*B_j avoids every translate
  // already taken. Maximality means every translate of B_j meets some taken
  // one, which is exactly H = F^-1-inverses covering Delta_H(B_j); disjointness
  // caps |F| at |H|/|B_j| <= (number of nonempty traces) <= n.
  SubsetMask taken(t.order());
  std::vector<element_id> F;
  d.H.for_each([&](element_id h) {
    SubsetMask trans = subset_product(SubsetMask::single(t.order(), h), Bj, t);
    if (!trans.intersects(taken)) {
      F.push_back(h);
      taken |= trans;
    }
  });
  if (F.empty()) throw std::logic_error("witness_theorem2: empty translate packing");
  if (F.size() > nonempty)
    throw std::logic_error("witness_theorem2: translate packing exceeds pigeonhole cap");

  // K_H = inverses of the representatives; lift through r into S. For any
  // x in S, r*x lands in R and absorption turns the H-cover into an S-cover.
  SubsetMask K(t.order());
  for (element_id f : F) K.add(t.product(d.inverse[f], d.r));

  CoverCertificate cert;
  cert.cell_index = j;
  cert.witness = K.elements();
  cert.bound_claimed = P.size();
  cert.provenance = Provenance::Theorem2;
  if (cert.witness.size() > P.size())
    throw std::logic_error("witness_theorem2: |K| exceeds cell count");
  CoverCheck check = verify_cover(cert, P, t);
  if (!check)
    throw std::logic_error("witness_theorem2: certificate failed verification: " +
                           check.reason);
  return cert;
}

/// Zero-element witness for a subset: cov Delta(A) = 1 whenever A contains a
/// left zero a (then S = a^-1 Delta(A)) or a right zero (then Delta(A) = S
/// and any singleton covers; element 0 is used). Returns nothing when A has
/// no zero of either kind. cell_index is left at 0; the partition overload
/// fills it in.
inline std::optional<CoverCertificate> witness_theorem3(const SubsetMask& A,
                                                        const CayleyTable& t) {
  if (A.universe() != t.order())
    throw std::invalid_argument("witness_theorem3: universe mismatch");
  if (A.empty()) throw std::invalid_argument("witness_theorem3: empty subset");
  CoverCertificate cert;
  cert.bound_claimed = 1;
  cert.provenance = Provenance::Theorem3;
  SubsetMask left = find_left_zeros(t) & A;
  if (!left.empty()) {
    cert.witness = {left.first()};
  } else {
    SubsetMask right = find_right_zeros(t) & A;
    if (right.empty()) return std::nullopt;
    cert.witness = {0};
  }
  CoverCheck check = verify_cover_subset(cert.witness, 1, A, t);
  if (!check)
    throw std::logic_error("witness_theorem3: certificate failed verification: " +
                           check.reason);
  return cert;
}

/// Zero-element witness over a partition: the first cell (in order)
/// containing a left or right zero yields the certificate.
inline std::optional<CoverCertificate> witness_theorem3(const Partition& P,
                                                        const CayleyTable& t) {
  if (P.universe() != t.order())
    throw std::invalid_argument("witness_theorem3: partition/table mismatch");
  SubsetMask zeros = find_left_zeros(t) | find_right_zeros(t);
  for (unsigned i = 0; i < P.size(); ++i) {
    if (!P.cell(i).intersects(zeros)) continue;
    auto cert = witness_theorem3(P.cell(i), t);
    if (!cert) throw std::logic_error("witness_theorem3: zero vanished");
    cert->cell_index = i;
    return cert;
  }
  return std::nullopt;
}

} // namespace semicover
