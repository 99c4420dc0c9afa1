#pragma once

#include <span>
#include <utility>
#include <vector>

#include "dirpoly/common.hpp"
#include "dirpoly/finset.hpp"

namespace dirpoly {

// A Dirichlet polynomial Fin^op -> Fin in canonical form: the multiset of
// its bases, sorted descending. Sum of d^y over the entries; the empty
// multiset is the initial object (which the one-term 0^y is not).
class Dir {
 public:
  Dir() = default;
  explicit Dir(std::vector<int> bases);

  static Dir representable(int d);      // d^y
  static Dir copies(int count, int d);  // count many d^y
  static Dir one() { return representable(1); }  // the constant functor 1

  const std::vector<int>& bases() const { return bases_; }
  int term_count() const { return static_cast<int>(bases_.size()); }  // D(0)
  int sum_of_bases() const;                                            // D(1)
  int zero_content() const;  // multiplicity of the base 0
  int base(int i) const { return bases_[i]; }
  bool is_zero() const { return bases_.empty(); }

  bool operator==(const Dir&) const = default;

 private:
  std::vector<int> bases_;  // descending
};

// |D(X)| as an exact count.
Nat eval_count(const Dir& d, FinSet x);

// The set D(X), elements being pairs (term index i, map X -> base_i), in
// (term, lexicographic) order.
class DirTable {
 public:
  DirTable(Dir d, FinSet x, std::size_t budget = default_budget);

  FinSet value() const { return FinSet{static_cast<int>(size_)}; }
  std::size_t size() const { return size_; }
  const Dir& dir() const { return dir_; }
  FinSet point() const { return x_; }

  int term_of(std::size_t index) const;
  std::pair<int, FinFunction> element(std::size_t index) const;
  int decode(std::size_t index, std::vector<int>& digits) const;
  std::size_t index_of(int term, std::span<const int> digits) const;
  std::size_t offset(int term) const { return offsets_[term]; }

 private:
  Dir dir_;
  FinSet x_;
  std::vector<std::size_t> offsets_;
  std::size_t size_ = 0;
};

DirTable eval_obj(const Dir& d, FinSet x, std::size_t budget = default_budget);

// D(g) : D(X') -> D(X) for g : X -> X', acting by precomposition.
FinFunction eval_map(const Dir& d, const FinFunction& g,
                     std::size_t budget = default_budget);

// The raw projection D(1) -> D(0), i.e. D applied to the unique map 0 -> 1.
FinFunction projection_map(const Dir& d);

// A natural transformation D -> E: a term map f : D(0) -> E(0), and for
// each term i of D a base map base_i -> e_{f(i)} running forwards.
struct DirMorphism {
  Dir source;
  Dir target;
  FinFunction on_terms;
  std::vector<FinFunction> on_bases;
  bool operator==(const DirMorphism&) const = default;
};

bool is_valid(const DirMorphism& m);
DirMorphism identity_morphism(const Dir& d);
DirMorphism compose(const DirMorphism& n, const DirMorphism& m);
// The X-component source(X) -> target(X): (i, h) |-> (f(i), f#_i o h).
FinFunction morphism_component(const DirMorphism& m, FinSet x,
                               std::size_t budget = default_budget);
// True iff every base map is a bijection. The law checker verifies this
// agrees with the projection square being a pullback and with all small
// naturality squares being pullbacks.
bool is_cartesian(const DirMorphism& m);

// The hom-set Dir(D,E) = prod_i E(base_i), mixed-radix enumerated.
class DirHomSet {
 public:
  DirHomSet(Dir source, Dir target, std::size_t budget = default_budget);

  const Dir& source() const { return source_; }
  const Dir& target() const { return target_; }
  const Nat& size() const { return size_; }
  std::size_t checked_count(std::size_t budget = default_budget) const;

  DirMorphism element(std::size_t rank) const;
  std::size_t index_of(const DirMorphism& m) const;
  const DirTable& table(int term) const { return tables_[term]; }

 private:
  Dir source_;
  Dir target_;
  std::vector<DirTable> tables_;  // E(base_i) per term of D
  Nat size_ = 1;
};

Nat hom_count(const Dir& d, const Dir& e);
std::vector<DirMorphism> hom_enumerate(const Dir& d, const Dir& e,
                                       std::size_t budget = default_budget);

Dir add(const Dir& d, const Dir& e);
Dir multiply(const Dir& d, const Dir& e);  // bases multiply pairwise

// D as the sum of its representable parts, one per term.
std::vector<std::pair<int, Dir>> decompose(const Dir& d);

// Binary position grid for multiply, with the pairing convention
// (x, y) -> x * e_j + y on bases, so that an element X -> d_i * e_j splits
// componentwise into maps X -> d_i and X -> e_j.
struct DirIndexedPairs {
  Dir left;
  Dir right;
  Dir object;
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> lookup;

  int position_of(int i, int j) const {
    return lookup[static_cast<std::size_t>(i) * right.term_count() + j];
  }
};
DirIndexedPairs multiply_indexed(const Dir& d, const Dir& e);

// Sum with stable provenance, as for Poly.
struct DirIndexedSum {
  std::vector<Dir> summands;
  Dir object;
  std::vector<std::pair<int, int>> sources;
  std::vector<std::vector<int>> injections;
};
DirIndexedSum sum_indexed(std::span<const Dir> summands);

// n-ary product with provenance; the base at a tuple is the product of the
// factor bases, mixed-radix encoded in factor order.
struct DirIndexedProduct {
  std::vector<Dir> factors;
  Dir object;
  std::vector<std::vector<int>> tuples;
  std::vector<int> lookup;

  int position_of(std::span<const int> tuple) const;
};
DirIndexedProduct product_indexed(std::vector<Dir> factors,
                                  std::size_t budget = default_budget);

}  // namespace dirpoly
