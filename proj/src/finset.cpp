#include "dirpoly/finset.hpp"

#include <algorithm>
#include <numeric>

namespace dirpoly {

bool is_valid(const FinFunction& f) {
  if (f.dom.size < 0 || f.cod.size < 0) return false;
  if (static_cast<int>(f.map.size()) != f.dom.size) return false;
  for (int v : f.map)
    if (v < 0 || v >= f.cod.size) return false;
  return true;
}

bool is_injective(const FinFunction& f) {
  std::vector<char> seen(f.cod.size, 0);
  for (int v : f.map) {
    if (seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

bool is_surjective(const FinFunction& f) {
  std::vector<char> seen(f.cod.size, 0);
  for (int v : f.map) seen[v] = 1;
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

bool is_bijective(const FinFunction& f) {
  return f.dom.size == f.cod.size && is_injective(f);
}

FinFunction identity(FinSet n) {
  FinFunction f{n, n, std::vector<int>(n.size)};
  std::iota(f.map.begin(), f.map.end(), 0);
  return f;
}

FinFunction constant_map(FinSet dom, FinSet cod, int value) {
  if (value < 0 || value >= cod.size)
    throw mismatch_error("constant_map: value outside codomain");
  return {dom, cod, std::vector<int>(dom.size, value)};
}

FinFunction bang(FinSet x) { return {x, FinSet{1}, std::vector<int>(x.size, 0)}; }

FinFunction inverse(const FinFunction& f) {
  if (!is_bijective(f)) throw mismatch_error("inverse: not a bijection");
  FinFunction g{f.cod, f.dom, std::vector<int>(f.dom.size)};
  for (int x = 0; x < f.dom.size; ++x) g.map[f.map[x]] = x;
  return g;
}

FinFunction compose(const FinFunction& g, const FinFunction& f) {
  if (f.cod != g.dom)
    throw mismatch_error("compose: codomain of the inner map (" +
                         std::to_string(f.cod.size) +
                         ") differs from domain of the outer (" +
                         std::to_string(g.dom.size) + ")");
  FinFunction h{f.dom, g.cod, std::vector<int>(f.dom.size)};
  for (int x = 0; x < f.dom.size; ++x) h.map[x] = g.map[f.map[x]];
  return h;
}

Nat map_count(FinSet a, FinSet b) { return nat_pow(b.size, a.size); }

std::vector<FinFunction> enumerate_maps(FinSet a, FinSet b, std::size_t budget) {
  Nat total = map_count(a, b);
  std::size_t n = checked_size(total, budget, "enumerate_maps");
  std::vector<FinFunction> out;
  out.reserve(n);
  if (n == 0) return out;
  std::vector<int> digits(a.size, 0);
  for (;;) {
    out.push_back({a, b, digits});
    int i = a.size - 1;
    while (i >= 0 && digits[i] == b.size - 1) digits[i--] = 0;
    if (i < 0) break;
    ++digits[i];
  }
  return out;
}

std::size_t map_rank(const FinFunction& f) {
  std::size_t r = 0;
  for (int v : f.map) r = r * static_cast<std::size_t>(f.cod.size) + v;
  return r;
}

FinFunction map_from_rank(FinSet a, FinSet b, std::size_t rank) {
  FinFunction f{a, b, std::vector<int>(a.size)};
  for (int i = a.size - 1; i >= 0; --i) {
    f.map[i] = static_cast<int>(rank % b.size);
    rank /= b.size;
  }
  return f;
}

FinFunction fiber(const FinFunction& f, int y) {
  if (y < 0 || y >= f.cod.size)
    throw mismatch_error("fiber: index outside the codomain");
  std::vector<int> members;
  for (int x = 0; x < f.dom.size; ++x)
    if (f.map[x] == y) members.push_back(x);
  FinSet fib{static_cast<int>(members.size())};
  return {fib, f.dom, std::move(members)};
}

std::vector<int> fiber_sizes(const FinFunction& f) {
  std::vector<int> sizes(f.cod.size, 0);
  for (int v : f.map) ++sizes[v];
  return sizes;
}

ProductSet product(FinSet a, FinSet b) {
  FinSet p{a.size * b.size};
  FinFunction pa{p, a, std::vector<int>(p.size)};
  FinFunction pb{p, b, std::vector<int>(p.size)};
  for (int x = 0; x < a.size; ++x)
    for (int y = 0; y < b.size; ++y) {
      pa.map[pair_index(x, y, b)] = x;
      pb.map[pair_index(x, y, b)] = y;
    }
  return {p, std::move(pa), std::move(pb)};
}

CoproductSet coproduct(FinSet a, FinSet b) {
  FinSet c{a.size + b.size};
  FinFunction ia{a, c, std::vector<int>(a.size)};
  FinFunction ib{b, c, std::vector<int>(b.size)};
  std::iota(ia.map.begin(), ia.map.end(), 0);
  std::iota(ib.map.begin(), ib.map.end(), a.size);
  return {c, std::move(ia), std::move(ib)};
}

WidePullback wide_pullback(std::span<const FinFunction> legs) {
  if (legs.empty()) throw mismatch_error("wide_pullback: empty leg list");
  FinSet c = legs[0].cod;
  for (const auto& leg : legs)
    if (leg.cod != c)
      throw mismatch_error("wide_pullback: legs disagree on the codomain");

  const std::size_t k = legs.size();
  // fibers[i][y] lists leg_i^{-1}(y) increasingly.
  std::vector<std::vector<std::vector<int>>> fibers(k);
  for (std::size_t i = 0; i < k; ++i) {
    fibers[i].resize(c.size);
    for (int x = 0; x < legs[i].dom.size; ++x)
      fibers[i][legs[i].map[x]].push_back(x);
  }

  // Tuples in lexicographic order: x_0 chooses the common value in c, the
  // remaining coordinates sweep the matching fibers in increasing order.
  std::vector<std::vector<int>> columns(k);
  std::vector<int> tuple(k);
  auto emit = [&](auto&& self, std::size_t depth, int value) -> void {
    if (depth == k) {
      for (std::size_t i = 0; i < k; ++i) columns[i].push_back(tuple[i]);
      return;
    }
    if (depth == 0) {
      for (int x = 0; x < legs[0].dom.size; ++x) {
        tuple[0] = x;
        self(self, 1, legs[0].map[x]);
      }
      return;
    }
    for (int x : fibers[depth][value]) {
      tuple[depth] = x;
      self(self, depth + 1, value);
    }
  };
  emit(emit, 0, 0);

  FinSet apex{static_cast<int>(columns.empty() ? 0 : columns[0].size())};
  WidePullback out;
  out.apex = apex;
  out.projections.reserve(k);
  for (std::size_t i = 0; i < k; ++i)
    out.projections.push_back({apex, legs[i].dom, std::move(columns[i])});
  return out;
}

namespace {
int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}
}  // namespace

WidePushout wide_pushout(std::span<const FinFunction> legs) {
  if (legs.empty()) throw mismatch_error("wide_pushout: empty leg list");
  FinSet c = legs[0].dom;
  for (const auto& leg : legs)
    if (leg.dom != c)
      throw mismatch_error("wide_pushout: legs disagree on the domain");

  std::vector<int> offset(legs.size());
  int total = 0;
  for (std::size_t i = 0; i < legs.size(); ++i) {
    offset[i] = total;
    total += legs[i].cod.size;
  }

  std::vector<int> parent(total);
  std::iota(parent.begin(), parent.end(), 0);
  for (int x = 0; x < c.size; ++x) {
    int anchor = find_root(parent, offset[0] + legs[0].map[x]);
    for (std::size_t i = 1; i < legs.size(); ++i) {
      int r = find_root(parent, offset[i] + legs[i].map[x]);
      // Glue toward the smaller representative so numbering stays canonical.
      if (r < anchor) std::swap(r, anchor);
      parent[r] = anchor;
    }
  }

  // Classes numbered by increasing least member.
  std::vector<int> class_index(total, -1);
  int classes = 0;
  for (int x = 0; x < total; ++x) {
    int r = find_root(parent, x);
    if (class_index[r] < 0) class_index[r] = classes++;
  }

  FinSet q{classes};
  WidePushout out;
  out.object = q;
  out.injections.reserve(legs.size());
  for (std::size_t i = 0; i < legs.size(); ++i) {
    FinFunction inj{legs[i].cod, q, std::vector<int>(legs[i].cod.size)};
    for (int b = 0; b < legs[i].cod.size; ++b)
      inj.map[b] = class_index[find_root(parent, offset[i] + b)];
    out.injections.push_back(std::move(inj));
  }
  return out;
}

bool is_pullback_square(const FinFunction& top, const FinFunction& left,
                        const FinFunction& right, const FinFunction& bottom) {
  if (top.dom != left.dom || top.cod != right.dom || left.cod != bottom.dom ||
      right.cod != bottom.cod)
    throw mismatch_error("is_pullback_square: corners do not line up");
  if (compose(right, top) != compose(bottom, left))
    throw mismatch_error("is_pullback_square: square does not commute");

  // Pairs (c, b) with bottom(c) = right(b), keyed as c*|B| + b.
  const std::size_t bsize = static_cast<std::size_t>(right.dom.size);
  std::vector<char> in_pullback(static_cast<std::size_t>(bottom.dom.size) * bsize, 0);
  std::size_t pullback_size = 0;
  for (int cc = 0; cc < bottom.dom.size; ++cc)
    for (int b = 0; b < right.dom.size; ++b)
      if (bottom.map[cc] == right.map[b]) {
        in_pullback[cc * bsize + b] = 1;
        ++pullback_size;
      }

  if (static_cast<std::size_t>(top.dom.size) != pullback_size) return false;
  std::vector<char> hit(in_pullback.size(), 0);
  for (int a = 0; a < top.dom.size; ++a) {
    std::size_t key = static_cast<std::size_t>(left.map[a]) * bsize + top.map[a];
    if (hit[key]) return false;  // not injective
    hit[key] = 1;
  }
  return true;
}

}  // namespace dirpoly
