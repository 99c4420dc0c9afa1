#pragma once

#include <vector>

#include "dirpoly/bundle.hpp"
#include "dirpoly/common.hpp"

namespace dirpoly {

// Finite limits and colimits of bundles, computed levelwise on totals and
// bases. Elements of a level of a limit are ordered as in the finset
// constructions (pairing order for products, lexicographic tuples for
// pullbacks, increasing members for equalizers).

Bundle terminal_bundle();  // 1 -> 1
Bundle initial_bundle();   // 0 -> 0
BunMorphism to_terminal(const Bundle& b);
BunMorphism from_initial(const Bundle& b);

struct BundleProduct {
  Bundle object;
  BunMorphism proj_left;
  BunMorphism proj_right;
};
BundleProduct product_bun(const Bundle& a, const Bundle& b);
// The unique pairing map z -> a x b of a cone (f, g).
BunMorphism pair_bun(const BundleProduct& prod, const BunMorphism& f,
                     const BunMorphism& g);

struct BundleCoproduct {
  Bundle object;
  BunMorphism inj_left;
  BunMorphism inj_right;
};
BundleCoproduct coproduct_bun(const Bundle& a, const Bundle& b);

struct BundlePullback {
  Bundle object;
  BunMorphism to_left;
  BunMorphism to_right;
};
BundlePullback pullback_bun(const BunMorphism& m, const BunMorphism& n);

struct BundleEqualizer {
  Bundle object;
  BunMorphism include;
};
BundleEqualizer equalizer_bun(const BunMorphism& m, const BunMorphism& n);

// The exponential E^F: total set is the bundle hom-set Bun(F,E) in its
// enumeration order, base set is Fin(base_F, base_E) in lexicographic
// order, and the projection restricts a morphism to its base map.
struct BundleExponential {
  Bundle object;
  BunMorphism eval;  // product_bun(object, F) -> E
};
BundleExponential exponential(const Bundle& e, const Bundle& f,
                              std::size_t budget = default_budget);

// Currying bijection for the exponential. curry turns G x F -> E into
// G -> E^F; uncurry inverts it. Shapes are checked.
BunMorphism curry(const BunMorphism& m, const Bundle& g, const Bundle& f,
                  std::size_t budget = default_budget);
BunMorphism uncurry(const BunMorphism& n, const Bundle& g, const Bundle& f,
                    const Bundle& e, std::size_t budget = default_budget);

// The subobject classifier: total = {now, later, never} over
// base = {true, false}, projecting [0,0,1]; truth picks (now, true).
struct Classifier {
  Bundle omega;
  BunMorphism truth;  // terminal -> omega
};
Classifier omega();

// A subobject in canonical form: an inclusion square whose components are
// increasing enumerations of a total subset S and a base subset T with
// proj(S) contained in T.
struct SubobjectWitness {
  BunMorphism inclusion;
  bool operator==(const SubobjectWitness&) const = default;

  std::vector<int> total_subset() const { return inclusion.total_map.map; }
  std::vector<int> base_subset() const { return inclusion.base_map.map; }
};

SubobjectWitness make_subobject(const Bundle& into,
                                const std::vector<int>& total_subset,
                                const std::vector<int>& base_subset);
bool is_mono(const BunMorphism& m);
// The canonical witness of the subobject an arbitrary mono carries.
SubobjectWitness canonicalize_mono(const BunMorphism& m);

std::vector<SubobjectWitness> enumerate_subobjects(
    const Bundle& f, std::size_t budget = default_budget);

// The classifying map of a subobject: on bases, true exactly on the image;
// on totals, now on the image, later off the image but over a true base
// point, never otherwise.
BunMorphism classify(const SubobjectWitness& s);
// Pullback of truth along a map into omega, i.e. the subobject it
// classifies.
SubobjectWitness subobject_of(const BunMorphism& chi);

// Whether a candidate (omega, truth) classifies subobjects of every bundle
// with levels <= max_level: pulling truth back is a bijection
// Bun(F, omega) -> Sub(F) for each such F.
bool classifies_subobjects(const Bundle& omega_candidate,
                           const BunMorphism& truth_candidate, int max_level,
                           std::size_t budget = default_budget);

}  // namespace dirpoly
