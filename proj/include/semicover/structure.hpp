#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "semicover/core.hpp"

namespace semicover {

/// Signals that a claimed structural fact about a table failed its direct
/// check. Raised by decompose_right_group when its input is not in fact a
/// minimal right ideal of a valid finite semigroup, and used throughout as a
/// soundness tripwire.
class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {x} union x S: the smallest right ideal containing x.
inline SubsetMask principal_right_ideal(element_id x, const CayleyTable& t) {
  if (x >= t.order())
    throw std::invalid_argument("principal_right_ideal: element out of range");
  SubsetMask r(t.order());
  r.add(x);
  for (unsigned s = 0; s < t.order(); ++s) r.add(t.product(x, s));
  return r;
}

/// An inclusion-minimal principal right ideal. In a finite semigroup every
/// minimal right ideal is principal, so scanning principal ideals finds one.
/// Deterministic choice: smallest cardinality, then lexicographically
/// smallest element list.
inline SubsetMask minimal_right_ideal(const CayleyTable& t) {
  std::vector<SubsetMask> principal;
  principal.reserve(t.order());
  for (unsigned x = 0; x < t.order(); ++x)
    principal.push_back(principal_right_ideal(static_cast<element_id>(x), t));
  const SubsetMask* best = &principal[0];
  for (const auto& cand : principal) {
    if (cand.count() < best->count() ||
        (cand.count() == best->count() && lex_less(cand, *best)))
      best = &cand;
  }
  return *best;
}

/// Result of a group test on a closed subset: when is_group holds, identity
/// is the two-sided identity and inverse[x] the two-sided inverse for each
/// member x (kNoElement outside the subset).
struct GroupCheck {
  bool is_group = false;
  element_id identity = kNoElement;
  std::vector<element_id> inverse;
};

/// Tests whether the subset H, which must be closed under the product
/// (checked; throws std::invalid_argument otherwise), is a group.
inline GroupCheck is_group(const SubsetMask& H, const CayleyTable& t) {
  if (H.universe() != t.order())
    throw std::invalid_argument("is_group: universe mismatch");
  if (H.empty()) throw std::invalid_argument("is_group: empty subset");
  bool closed = true;
  H.for_each([&](element_id x) {
    H.for_each([&](element_id y) {
      if (!H.contains(t.product(x, y))) closed = false;
    });
  });
  if (!closed) throw std::invalid_argument("is_group: subset is not closed");

  GroupCheck gc;
  gc.inverse.assign(t.order(), kNoElement);
  element_id identity = kNoElement;
  H.for_each([&](element_id e) {
    if (identity != kNoElement) return;
    bool works = true;
    H.for_each([&](element_id x) {
      if (t.product(e, x) != x || t.product(x, e) != x) works = false;
    });
    if (works) identity = e;
  });
  if (identity == kNoElement) return gc;

  bool all_invertible = true;
  H.for_each([&](element_id x) {
    element_id inv = kNoElement;
    H.for_each([&](element_id y) {
      if (inv == kNoElement && t.product(x, y) == identity &&
          t.product(y, x) == identity)
        inv = y;
    });
    if (inv == kNoElement)
      all_invertible = false;
    else
      gc.inverse[x] = inv;
  });
  if (!all_invertible) {
    gc.inverse.assign(t.order(), kNoElement);
    return gc;
  }
  gc.is_group = true;
  gc.identity = identity;
  return gc;
}

/// Group test over the whole table.
inline GroupCheck is_group(const CayleyTable& t) {
  return is_group(t.full_mask(), t);
}

/// A minimal right ideal R of a finite semigroup is a right group: it splits
/// as (group H) x (right-zero semigroup E). All fields are verified by direct
/// check at construction.
struct RightGroupDecomposition {
  SubsetMask R;
  element_id r = kNoElement; // smallest element of R
  SubsetMask E;              // idempotents of R, a right-zero subsemigroup
  element_id a = kNoElement; // smallest idempotent
  SubsetMask H;              // R * {a}, a group with identity a
  element_id identity = kNoElement;
  std::vector<element_id> inverse; // two-sided inverses, valid on H
  std::vector<element_id> e_of;    // x -> the unique e in E with x*e = x, valid on R
};

/// Decomposes a minimal right ideal into group x right-zero form. Every
/// structural claim is checked against the table; any failure throws
/// StructureError naming the violated fact, so this doubles as a validator
/// for "R really is a minimal right ideal of an associative table".
inline RightGroupDecomposition decompose_right_group(const SubsetMask& R,
                                                     const CayleyTable& t) {
  if (R.universe() != t.order())
    throw std::invalid_argument("decompose_right_group: universe mismatch");
  if (R.empty()) throw StructureError("decompose: R is empty");

  bool ideal = true;
  R.for_each([&](element_id x) {
    for (unsigned s = 0; s < t.order() && ideal; ++s)
      if (!R.contains(t.product(x, s))) ideal = false;
  });
  if (!ideal) throw StructureError("decompose: R is not a right ideal");

  RightGroupDecomposition d;
  d.R = R;
  d.r = R.first();
  d.E = find_idempotents(t) & R;
  if (d.E.empty()) throw StructureError("decompose: R has no idempotent");

  bool right_zero = true;
  d.E.for_each([&](element_id e) {
    d.E.for_each([&](element_id f) {
      if (t.product(e, f) != f) right_zero = false;
    });
  });
  if (!right_zero)
    throw StructureError("decompose: idempotents of R are not right-zero");

  d.a = d.E.first();
  d.H = subset_product(R, SubsetMask::single(t.order(), d.a), t);
  if (!d.H.is_subset_of(R)) throw StructureError("decompose: H escapes R");

  GroupCheck gc;
  try {
    gc = is_group(d.H, t);
  } catch (const std::invalid_argument&) {
    throw StructureError("decompose: H is not closed");
  }
  if (!gc.is_group) throw StructureError("decompose: H is not a group");
  if (gc.identity != d.a)
    throw StructureError("decompose: identity of H differs from chosen idempotent");
  d.identity = gc.identity;
  d.inverse = std::move(gc.inverse);

  // The unique idempotent fixing each x on the right; uniqueness is part of
  // the product structure R = H x E.
  d.e_of.assign(t.order(), kNoElement);
  bool unique_e = true;
  R.for_each([&](element_id x) {
    unsigned hits = 0;
    d.E.for_each([&](element_id e) {
      if (t.product(x, e) == x) {
        ++hits;
        d.e_of[x] = e;
      }
    });
    if (hits != 1) unique_e = false;
  });
  if (!unique_e)
    throw StructureError("decompose: some x in R lacks a unique idempotent with x*e = x");

  // Bijection R -> H x E via x -> (x*a, e_x), product-compatible.
  if (d.R.count() != d.H.count() * d.E.count())
    throw StructureError("decompose: |R| != |H| * |E|");
  std::vector<char> seen(static_cast<std::size_t>(t.order()) * t.order(), 0);
  bool injective = true;
  R.for_each([&](element_id x) {
    element_id h = t.product(x, d.a);
    if (!d.H.contains(h)) injective = false;
    std::size_t slot = static_cast<std::size_t>(h) * t.order() + d.e_of[x];
    if (seen[slot]) injective = false;
    seen[slot] = 1;
  });
  if (!injective)
    throw StructureError("decompose: x -> (x*a, e_x) is not injective into H x E");

  bool hom = true;
  R.for_each([&](element_id x) {
    R.for_each([&](element_id y) {
      element_id xy = t.product(x, y);
      if (t.product(xy, d.a) != t.product(t.product(x, d.a), t.product(y, d.a)))
        hom = false;
      if (d.e_of[xy] != d.e_of[y]) hom = false;
    });
  });
  if (!hom)
    throw StructureError("decompose: x -> (x*a, e_x) does not respect the product");

  // Absorption x*u = (x*a)*u for x in R, u in H: the identity that lets a
  // group cover in H transfer back to all of R.
  bool absorbs = true;
  R.for_each([&](element_id x) {
    d.H.for_each([&](element_id u) {
      if (t.product(x, u) != t.product(t.product(x, d.a), u)) absorbs = false;
    });
  });
  if (!absorbs) throw StructureError("decompose: x*u != (x*a)*u on R x H");

  // Left translation by any h permutes H (disjoint-translate covers rely on
  // translates having full size).
  bool permutes = true;
  d.H.for_each([&](element_id h) {
    SubsetMask image(t.order());
    d.H.for_each([&](element_id u) { image.add(t.product(h, u)); });
    if (!(image == d.H)) permutes = false;
  });
  if (!permutes)
    throw StructureError("decompose: left translation does not permute H");

  return d;
}

} // namespace semicover
