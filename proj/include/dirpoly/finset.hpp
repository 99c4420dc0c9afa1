#pragma once

#include <span>
#include <vector>

#include "dirpoly/common.hpp"

namespace dirpoly {

// The skeletal category of finite sets. An object is {0,...,size-1};
// equality of objects is equality of sizes. Anything user-facing displays
// elements 1-indexed, storage is 0-indexed throughout.
struct FinSet {
  int size = 0;
  bool operator==(const FinSet&) const = default;
};

// A total map dom -> cod, tabulated. map[x] is the image of x.
struct FinFunction {
  FinSet dom;
  FinSet cod;
  std::vector<int> map;
  bool operator==(const FinFunction&) const = default;
};

bool is_valid(const FinFunction& f);
bool is_injective(const FinFunction& f);
bool is_surjective(const FinFunction& f);
bool is_bijective(const FinFunction& f);

FinFunction identity(FinSet n);
FinFunction constant_map(FinSet dom, FinSet cod, int value);
FinFunction bang(FinSet x);  // the unique map x -> 1
FinFunction inverse(const FinFunction& f);  // f must be bijective

// g after f. Throws mismatch_error unless f.cod == g.dom.
FinFunction compose(const FinFunction& g, const FinFunction& f);

// All of Fin(a,b) in lexicographic order of the map sequence (first entry
// most significant). Throws budget_exceeded if b^a > budget.
std::vector<FinFunction> enumerate_maps(FinSet a, FinSet b,
                                        std::size_t budget = default_budget);
Nat map_count(FinSet a, FinSet b);  // b^a

// Rank within the lexicographic enumeration, and its inverse.
std::size_t map_rank(const FinFunction& f);
FinFunction map_from_rank(FinSet a, FinSet b, std::size_t rank);

// The fiber f^{-1}(y), returned as its increasing embedding into f.dom.
// Throws mismatch_error if y is out of range.
FinFunction fiber(const FinFunction& f, int y);
std::vector<int> fiber_sizes(const FinFunction& f);

struct ProductSet {
  FinSet object;  // size a*b, element (x,y) stored as x*b + y
  FinFunction proj_left;
  FinFunction proj_right;
};
ProductSet product(FinSet a, FinSet b);
inline int pair_index(int x, int y, FinSet b) { return x * b.size + y; }

struct CoproductSet {
  FinSet object;  // size a+b, a-block first
  FinFunction inj_left;
  FinFunction inj_right;
};
CoproductSet coproduct(FinSet a, FinSet b);

// Limit of legs f_i : A_i -> C over a common codomain. The apex lists the
// agreeing tuples (x_1,...,x_k) in lexicographic order; projections[i]
// extracts the i-th coordinate. Throws mismatch_error on an empty leg list
// or unequal codomains.
struct WidePullback {
  FinSet apex;
  std::vector<FinFunction> projections;
};
WidePullback wide_pullback(std::span<const FinFunction> legs);

// Colimit of legs f_i : C -> B_i over a common domain: the coproduct of the
// codomains modulo leg_i(x) ~ leg_j(x), computed by union-find. Classes are
// numbered by increasing least member.
struct WidePushout {
  FinSet object;
  std::vector<FinFunction> injections;
};
WidePushout wide_pushout(std::span<const FinFunction> legs);

// Whether the commuting square
//
//        top
//      A ---> B
// left |      | right
//      v      v
//      C ---> D
//       bottom
//
// is a pullback, i.e. the induced map A -> C x_D B is a bijection.
// Throws mismatch_error if the square does not commute.
bool is_pullback_square(const FinFunction& top, const FinFunction& left,
                        const FinFunction& right, const FinFunction& bottom);

}  // namespace dirpoly
