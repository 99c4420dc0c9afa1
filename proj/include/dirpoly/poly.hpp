#pragma once

#include <span>
#include <utility>
#include <vector>

#include "dirpoly/common.hpp"
#include "dirpoly/finset.hpp"

namespace dirpoly {

// A polynomial functor Fin -> Fin in canonical form: the multiset of its
// exponents, kept sorted descending. Sum of y^{e} over the entries; the
// empty multiset is the zero polynomial. Two polynomials are isomorphic as
// functors exactly when they are equal as values.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<int> exponents);

  static Poly representable(int k);     // y^k
  static Poly copies(int count, int k); // count many y^k
  static Poly y() { return representable(1); }
  static Poly one() { return representable(0); }

  const std::vector<int>& exponents() const { return exponents_; }
  int positions() const { return static_cast<int>(exponents_.size()); }  // P(1)
  int constants() const;                                                 // P(0)
  int exponent(int i) const { return exponents_[i]; }
  bool is_zero() const { return exponents_.empty(); }

  bool operator==(const Poly&) const = default;

 private:
  std::vector<int> exponents_;  // descending
};

// |P(X)| as an exact count.
Nat eval_count(const Poly& p, FinSet x);

// The set P(X), elements being pairs (term index i, map exp_i -> X), in
// (term, lexicographic) order. Elements are addressed by index and decoded
// on demand; construction fails if |P(X)| exceeds the budget.
class PolyTable {
 public:
  PolyTable(Poly p, FinSet x, std::size_t budget = default_budget);

  FinSet value() const { return FinSet{static_cast<int>(size_)}; }
  std::size_t size() const { return size_; }
  const Poly& poly() const { return poly_; }
  FinSet point() const { return x_; }

  int term_of(std::size_t index) const;
  std::pair<int, FinFunction> element(std::size_t index) const;
  // Digits of the map part, written into `digits` (length = exponent of the
  // term). Returns the term.
  int decode(std::size_t index, std::vector<int>& digits) const;
  std::size_t index_of(int term, std::span<const int> digits) const;
  std::size_t offset(int term) const { return offsets_[term]; }

 private:
  Poly poly_;
  FinSet x_;
  std::vector<std::size_t> offsets_;
  std::size_t size_ = 0;
};

PolyTable eval_obj(const Poly& p, FinSet x, std::size_t budget = default_budget);

// P(g) : P(X) -> P(Y) for g : X -> Y, acting by postcomposition on the map
// part of each element.
FinFunction eval_map(const Poly& p, const FinFunction& g,
                     std::size_t budget = default_budget);

// A natural transformation P -> Q, stored per the product formula for
// hom-sets: a position map f : P(1) -> Q(1), and for each position i of P a
// direction map q_{f(i)} -> exp_i running backwards.
struct PolyMorphism {
  Poly source;
  Poly target;
  FinFunction on_positions;
  std::vector<FinFunction> on_directions;
  bool operator==(const PolyMorphism&) const = default;
};

bool is_valid(const PolyMorphism& m);
PolyMorphism identity_morphism(const Poly& p);
// n after m. Positions compose forwards, directions backwards.
PolyMorphism compose(const PolyMorphism& n, const PolyMorphism& m);
// The X-component source(X) -> target(X): (i,h) |-> (f(i), h o f#_i).
FinFunction morphism_component(const PolyMorphism& m, FinSet x,
                               std::size_t budget = default_budget);
// True iff every direction map is a bijection.
bool is_cartesian(const PolyMorphism& m);

// The hom-set Poly(P,Q) = prod_i Q(exp_i), with a deterministic mixed-radix
// enumeration (position 0 most significant, each digit running through the
// evaluation table of Q at that exponent).
class PolyHomSet {
 public:
  PolyHomSet(Poly source, Poly target, std::size_t budget = default_budget);

  const Poly& source() const { return source_; }
  const Poly& target() const { return target_; }
  const Nat& size() const { return size_; }
  std::size_t checked_count(std::size_t budget = default_budget) const;

  PolyMorphism element(std::size_t rank) const;
  std::size_t index_of(const PolyMorphism& m) const;
  const PolyTable& table(int position) const { return tables_[position]; }

 private:
  Poly source_;
  Poly target_;
  std::vector<PolyTable> tables_;  // Q(exp_i) per position of P
  Nat size_ = 1;
};

Nat hom_count(const Poly& p, const Poly& q);
std::vector<PolyMorphism> hom_enumerate(const Poly& p, const Poly& q,
                                        std::size_t budget = default_budget);

// Sum and product agree with coproduct and product of functors.
Poly add(const Poly& p, const Poly& q);
Poly multiply(const Poly& p, const Poly& q);

// Composition product (P o Q)(X) = P(Q(X)).
Poly substitute(const Poly& p, const Poly& q,
                std::size_t budget = default_budget);

// Dirichlet product: exponents multiply pairwise.
Poly tensor(const Poly& p, const Poly& q);

// Internal hom for the Dirichlet product: [A,Q] = prod_i Q o (a_i y).
Poly internal_hom(const Poly& a, const Poly& q,
                  std::size_t budget = default_budget);

// Cartesian exponential Q^A = prod_i Q o (a_i + y).
Poly power(const Poly& q, const Poly& a, std::size_t budget = default_budget);

// Global sections: prod_i exp_i = |Poly(P, y)|.
Nat global_sections(const Poly& p);

// P as the sum of its representable parts, one per position.
std::vector<std::pair<int, Poly>> decompose(const Poly& p);

// Pullback of f : P -> H, g : Q -> H. Positions are the pullback of the
// position maps; the direction set at (i,j) is the pushout of the two
// direction maps out of H's exponent.
struct PolyPullback {
  Poly object;
  PolyMorphism to_left;
  PolyMorphism to_right;
};
PolyPullback pullback(const PolyMorphism& f, const PolyMorphism& g);

// ---- Provenance-indexed constructions ------------------------------------
//
// The canonical form above forgets where a position of a composite came
// from. The indexed variants remember, which is what the explicit
// adjunction bijections need.

// Binary position grid for multiply/tensor. Canonical positions are sorted
// by (exponent desc, (left,right) lex asc). For multiply, the direction set
// at (i,j) is the coproduct exp_i + exp_j with the left block first; for
// tensor it is the product exp_i * exp_j with pairing (x,y) -> x*exp_j + y.
struct IndexedPairs {
  Poly left;
  Poly right;
  Poly object;
  std::vector<std::pair<int, int>> pairs;  // canonical position -> (i,j)
  std::vector<int> lookup;                 // i*right.positions()+j -> position

  int position_of(int i, int j) const {
    return lookup[static_cast<std::size_t>(i) * right.positions() + j];
  }
};
IndexedPairs multiply_indexed(const Poly& p, const Poly& q);
IndexedPairs tensor_indexed(const Poly& p, const Poly& q);

// Sum with stable provenance: on equal exponents, earlier summands first.
struct IndexedSum {
  std::vector<Poly> summands;
  Poly object;
  std::vector<std::pair<int, int>> sources;  // position -> (summand, position)
  std::vector<std::vector<int>> injections;  // summand -> positions in object
};
IndexedSum sum_indexed(std::span<const Poly> summands);

// P o Q with positions (i, w : exp_i -> Q(1)); the direction set at such a
// position is the coproduct over d < exp_i of Q's exponent at w(d), blocks
// in d order.
struct IndexedSubstitute {
  Poly outer;
  Poly inner;
  Poly object;
  struct Pos {
    int outer_position;
    FinFunction assignment;  // w : exp_i -> Q(1)
  };
  std::vector<Pos> positions;          // by canonical position
  std::vector<int> lookup;             // mixed-radix rank -> canonical position
  std::vector<std::size_t> rank_base;  // per outer position, offset into lookup

  int position_of(int outer_position, const FinFunction& assignment) const;
  std::vector<int> block_offsets(int position) const;
};
IndexedSubstitute substitute_indexed(const Poly& p, const Poly& q,
                                     std::size_t budget = default_budget);

// n-ary product with provenance; direction sets are coproducts of the
// factors' direction sets in factor order.
struct IndexedProduct {
  std::vector<Poly> factors;
  Poly object;
  std::vector<std::vector<int>> tuples;  // canonical position -> factor positions
  std::vector<int> lookup;               // mixed-radix rank -> canonical position

  int position_of(std::span<const int> tuple) const;
  std::vector<int> block_offsets(int position) const;
};
IndexedProduct product_indexed(std::vector<Poly> factors,
                               std::size_t budget = default_budget);

// t tensored / multiplied with the identity of a: the morphism from
// tensor(P', a) to tensor(P, a) (resp. multiply) induced by t : P' -> P.
// Used when checking naturality of the closed-structure bijections.
PolyMorphism tensor_with_identity(const PolyMorphism& t, const Poly& a);
PolyMorphism multiply_with_identity(const PolyMorphism& t, const Poly& a);

}  // namespace dirpoly
