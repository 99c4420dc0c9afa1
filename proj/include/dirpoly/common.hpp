#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace dirpoly {

// Counts that routinely overflow machine integers: hom-set sizes,
// evaluations, products of fibers.
using Nat = boost::multiprecision::cpp_int;

// Cap on anything that gets materialized element by element (map lists,
// evaluation tables, morphism enumerations, subobject lattices).
inline constexpr std::size_t default_budget = 1'000'000;

struct budget_exceeded : std::runtime_error {
  Nat required;
  std::size_t budget;
  budget_exceeded(const std::string& what, Nat required_, std::size_t budget_)
      : std::runtime_error(what + ": needs " + required_.str() +
                           " elements, budget is " + std::to_string(budget_)),
        required(std::move(required_)),
        budget(budget_) {}
};

// Composability and shape violations (codomain/domain disagreements,
// morphisms between the wrong objects, ill-formed diagrams).
struct mismatch_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct syntax_error : std::runtime_error {
  std::size_t position;  // byte offset into the input text
  syntax_error(const std::string& what, std::size_t position_)
      : std::runtime_error(what + " (at position " +
                           std::to_string(position_) + ")"),
        position(position_) {}
};

// A polynomial factor (y^k) and a Dirichlet factor (k^y) in one expression.
struct mixed_kind_error : syntax_error {
  using syntax_error::syntax_error;
};

struct not_cartesian_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct not_mono_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct non_canonical_bundle_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline Nat nat_pow(const Nat& base, unsigned long exp) {
  Nat r = 1;
  Nat b = base;
  while (exp != 0) {
    if (exp & 1) r *= b;
    b *= b;
    exp >>= 1;
  }
  return r;
}

// Nat -> size_t, or throw if it does not fit under the budget.
inline std::size_t checked_size(const Nat& n, std::size_t budget,
                                const std::string& what) {
  if (n > budget) throw budget_exceeded(what, n, budget);
  return static_cast<std::size_t>(n);
}

}  // namespace dirpoly
