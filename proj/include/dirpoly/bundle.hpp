#pragma once

#include <vector>

#include "dirpoly/common.hpp"
#include "dirpoly/dir.hpp"
#include "dirpoly/finset.hpp"
#include "dirpoly/poly.hpp"

namespace dirpoly {

// A function total -> base regarded as a base-indexed family of fibers.
struct Bundle {
  FinFunction proj;
  FinSet total() const { return proj.dom; }
  FinSet base() const { return proj.cod; }
  bool operator==(const Bundle&) const = default;
};

bool is_valid(const Bundle& b);

// Fibers as increasing element lists, one per base point.
std::vector<std::vector<int>> fibers(const Bundle& b);
// For each total element, its index within its own fiber.
std::vector<int> fiber_local_index(const Bundle& b);

// Canonical representative of an isomorphism class: fibers ordered by
// decreasing size (ties by original base point) and laid out as consecutive
// blocks of the total set.
bool is_canonical(const Bundle& b);
struct Canonicalization {
  Bundle canonical;
  FinFunction base_perm;   // original base  -> canonical base
  FinFunction total_perm;  // original total -> canonical total
};
Canonicalization canonicalize(const Bundle& b);

// A commuting square over the two projections. The fiberwise map toward the
// pulled-back bundle is recoverable from the square, so this presentation
// composes by plain function composition.
struct BunMorphism {
  Bundle source;
  Bundle target;
  FinFunction total_map;
  FinFunction base_map;
  bool operator==(const BunMorphism&) const = default;
};

// A base map together with fiberwise maps running backwards, stored in
// fiber-local coordinates: pull_maps[j] sends the target fiber over
// base_map(j) to the source fiber over j.
struct ContMorphism {
  Bundle source;
  Bundle target;
  FinFunction base_map;
  std::vector<FinFunction> pull_maps;
  bool operator==(const ContMorphism&) const = default;
};

bool is_valid(const BunMorphism& m);
bool is_valid(const ContMorphism& m);
BunMorphism identity_bun(const Bundle& b);
ContMorphism identity_cont(const Bundle& b);
BunMorphism compose(const BunMorphism& n, const BunMorphism& m);
ContMorphism compose(const ContMorphism& n, const ContMorphism& m);

// Pointwise coproduct of bundles: (s+s') -> (t+t').
Bundle coproduct_bundle(const Bundle& a, const Bundle& b);

// Cartesianness: for a square, the induced map into the pullback of the
// target projection along the base map is a bijection; for a container
// morphism, all pull maps are bijections.
bool is_cartesian(const BunMorphism& m);
bool is_cartesian(const ContMorphism& m);

// Vertical/cartesian factorization through the pulled-back bundle:
// m = cartesian o vertical with the vertical part over the identity base.
struct BunFactorization {
  Bundle middle;  // the pullback of target.proj along m.base_map, over source.base
  BunMorphism vertical;
  BunMorphism cartesian;
};
BunFactorization factorize(const BunMorphism& m);

// Enumerated hom-set of bundle morphisms source -> target. A morphism
// factors into one independent choice per base point j: a target base point
// b' together with a map fiber(j) -> fiber'(b'). Choices are ordered by
// (b' ascending, map lexicographic) and combined mixed-radix with base
// point 0 most significant.
class BunHomSet {
 public:
  BunHomSet(Bundle source, Bundle target);

  const Bundle& source() const { return source_; }
  const Bundle& target() const { return target_; }
  const Nat& size() const { return size_; }
  std::size_t checked_count(std::size_t budget = default_budget) const;

  BunMorphism element(std::size_t rank) const;
  std::size_t index_of(const BunMorphism& m) const;

 private:
  Bundle source_;
  Bundle target_;
  std::vector<std::vector<int>> source_fibers_;
  std::vector<std::vector<int>> target_fibers_;
  // Per source base point: cumulative offsets of the per-target-point
  // choice counts, plus the total choice count.
  std::vector<std::vector<std::size_t>> choice_offsets_;
  std::vector<std::size_t> choices_;
  Nat size_ = 1;
};

// Same structure for container morphisms: the choice at j is a target base
// point b' with a map fiber'(b') -> fiber(j).
class ContHomSet {
 public:
  ContHomSet(Bundle source, Bundle target);

  const Bundle& source() const { return source_; }
  const Bundle& target() const { return target_; }
  const Nat& size() const { return size_; }
  std::size_t checked_count(std::size_t budget = default_budget) const;

  ContMorphism element(std::size_t rank) const;
  std::size_t index_of(const ContMorphism& m) const;

 private:
  Bundle source_;
  Bundle target_;
  std::vector<std::vector<int>> source_fibers_;
  std::vector<std::vector<int>> target_fibers_;
  std::vector<std::vector<std::size_t>> choice_offsets_;
  std::vector<std::size_t> choices_;
  Nat size_ = 1;
};

Nat bun_hom_count(const Bundle& source, const Bundle& target);
Nat cont_hom_count(const Bundle& source, const Bundle& target);
std::vector<BunMorphism> enumerate_bun(const Bundle& source,
                                       const Bundle& target,
                                       std::size_t budget = default_budget);
std::vector<ContMorphism> enumerate_cont(const Bundle& source,
                                         const Bundle& target,
                                         std::size_t budget = default_budget);

// The transform swapping exponents and bases; mutually inverse bijections
// on objects.
Dir dirichlet_transform(const Poly& p);
Poly inverse_transform(const Dir& d);

// Bundle <-> polynomial correspondences through fiber multisets.
Dir dir_of_bundle(const Bundle& b);
Poly poly_of_bundle(const Bundle& b);
Bundle bundle_of_dir(const Dir& d);
Bundle bundle_of_poly(const Poly& p);
// The projection D(1) -> D(0) packaged as a bundle; agrees with
// bundle_of_dir on the nose.
Bundle pi(const Dir& d);

// The equivalence on morphisms: a square between bundles induces a map of
// Dirichlet polynomials between the fiber multisets, via the canonical
// ordering of each side.
DirMorphism functor_D(const BunMorphism& m);
BunMorphism functor_D_inverse(const DirMorphism& n);
// Variant that checks the caller's bundles really are the canonical
// representatives of the morphism's endpoints.
BunMorphism functor_D_inverse(const DirMorphism& n, const Bundle& source,
                              const Bundle& target);

PolyMorphism functor_P(const ContMorphism& m);
ContMorphism functor_P_inverse(const PolyMorphism& n);
ContMorphism functor_P_inverse(const PolyMorphism& n, const Bundle& source,
                               const Bundle& target);

// Passage between the four pictures of a cartesian morphism, keeping the
// base map. Throws not_cartesian_error when the input is not cartesian.
ContMorphism to_cont_cart(const BunMorphism& m);
BunMorphism to_bun_cart(const ContMorphism& m);
DirMorphism to_dir_cart(const PolyMorphism& m);
PolyMorphism to_poly_cart(const DirMorphism& m);

}  // namespace dirpoly
