#include "dirpoly/poly.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace dirpoly {

Poly::Poly(std::vector<int> exponents) : exponents_(std::move(exponents)) {
  for (int e : exponents_)
    if (e < 0) throw mismatch_error("Poly: negative exponent");
  std::sort(exponents_.begin(), exponents_.end(), std::greater<>());
}

Poly Poly::representable(int k) { return Poly(std::vector<int>{k}); }

Poly Poly::copies(int count, int k) {
  if (count < 0) throw mismatch_error("Poly: negative coefficient");
  return Poly(std::vector<int>(count, k));
}

int Poly::constants() const {
  return static_cast<int>(
      std::count(exponents_.begin(), exponents_.end(), 0));
}

Nat eval_count(const Poly& p, FinSet x) {
  Nat total = 0;
  for (int e : p.exponents()) total += nat_pow(x.size, e);
  return total;
}

PolyTable::PolyTable(Poly p, FinSet x, std::size_t budget)
    : poly_(std::move(p)), x_(x) {
  Nat total = eval_count(poly_, x_);
  size_ = checked_size(total, budget, "eval_obj");
  offsets_.reserve(poly_.positions());
  std::size_t acc = 0;
  for (int e : poly_.exponents()) {
    offsets_.push_back(acc);
    acc += static_cast<std::size_t>(nat_pow(x_.size, e));
  }
}

int PolyTable::term_of(std::size_t index) const {
  int term = static_cast<int>(offsets_.size()) - 1;
  while (term > 0 && offsets_[term] > index) --term;
  return term;
}

int PolyTable::decode(std::size_t index, std::vector<int>& digits) const {
  int term = term_of(index);
  int e = poly_.exponent(term);
  digits.resize(e);
  std::size_t r = index - offsets_[term];
  for (int d = e - 1; d >= 0; --d) {
    digits[d] = static_cast<int>(r % x_.size);
    r /= x_.size;
  }
  return term;
}

std::pair<int, FinFunction> PolyTable::element(std::size_t index) const {
  std::vector<int> digits;
  int term = decode(index, digits);
  return {term,
          FinFunction{FinSet{poly_.exponent(term)}, x_, std::move(digits)}};
}

std::size_t PolyTable::index_of(int term, std::span<const int> digits) const {
  std::size_t r = 0;
  for (int v : digits) r = r * x_.size + v;
  return offsets_[term] + r;
}

PolyTable eval_obj(const Poly& p, FinSet x, std::size_t budget) {
  return PolyTable(p, x, budget);
}

FinFunction eval_map(const Poly& p, const FinFunction& g, std::size_t budget) {
  PolyTable from(p, g.dom, budget);
  PolyTable to(p, g.cod, budget);
  FinFunction out{from.value(), to.value(), std::vector<int>(from.size())};
  std::vector<int> digits;
  for (std::size_t idx = 0; idx < from.size(); ++idx) {
    int term = from.decode(idx, digits);
    for (int& v : digits) v = g.map[v];
    out.map[idx] = static_cast<int>(to.index_of(term, digits));
  }
  return out;
}

bool is_valid(const PolyMorphism& m) {
  const auto& f = m.on_positions;
  if (f.dom.size != m.source.positions() || f.cod.size != m.target.positions())
    return false;
  if (!is_valid(f)) return false;
  if (static_cast<int>(m.on_directions.size()) != m.source.positions())
    return false;
  for (int i = 0; i < m.source.positions(); ++i) {
    const auto& d = m.on_directions[i];
    if (d.dom.size != m.target.exponent(f.map[i])) return false;
    if (d.cod.size != m.source.exponent(i)) return false;
    if (!is_valid(d)) return false;
  }
  return true;
}

PolyMorphism identity_morphism(const Poly& p) {
  PolyMorphism m{p, p, identity(FinSet{p.positions()}), {}};
  m.on_directions.reserve(p.positions());
  for (int e : p.exponents()) m.on_directions.push_back(identity(FinSet{e}));
  return m;
}

PolyMorphism compose(const PolyMorphism& n, const PolyMorphism& m) {
  if (m.target != n.source)
    throw mismatch_error("compose: middle polynomial differs");
  PolyMorphism out{m.source, n.target,
                   compose(n.on_positions, m.on_positions),
                   {}};
  out.on_directions.reserve(m.source.positions());
  for (int i = 0; i < m.source.positions(); ++i)
    out.on_directions.push_back(
        compose(m.on_directions[i], n.on_directions[m.on_positions.map[i]]));
  return out;
}

FinFunction morphism_component(const PolyMorphism& m, FinSet x,
                               std::size_t budget) {
  PolyTable from(m.source, x, budget);
  PolyTable to(m.target, x, budget);
  FinFunction out{from.value(), to.value(), std::vector<int>(from.size())};
  std::vector<int> digits, image;
  for (std::size_t idx = 0; idx < from.size(); ++idx) {
    int i = from.decode(idx, digits);
    int j = m.on_positions.map[i];
    const auto& pull = m.on_directions[i];  // exp_target(j) -> exp_source(i)
    image.resize(pull.map.size());
    for (std::size_t d = 0; d < pull.map.size(); ++d)
      image[d] = digits[pull.map[d]];
    out.map[idx] = static_cast<int>(to.index_of(j, image));
  }
  return out;
}

bool is_cartesian(const PolyMorphism& m) {
  return std::all_of(m.on_directions.begin(), m.on_directions.end(),
                     [](const FinFunction& d) { return is_bijective(d); });
}

PolyHomSet::PolyHomSet(Poly source, Poly target, std::size_t budget)
    : source_(std::move(source)), target_(std::move(target)) {
  tables_.reserve(source_.positions());
  for (int e : source_.exponents()) {
    tables_.emplace_back(target_, FinSet{e}, budget);
    size_ *= tables_.back().size();
  }
}

std::size_t PolyHomSet::checked_count(std::size_t budget) const {
  return checked_size(size_, budget, "hom_enumerate");
}

PolyMorphism PolyHomSet::element(std::size_t rank) const {
  const int n = source_.positions();
  std::vector<std::size_t> digit(n);
  for (int i = n - 1; i >= 0; --i) {
    digit[i] = rank % tables_[i].size();
    rank /= tables_[i].size();
  }
  PolyMorphism m{source_, target_,
                 FinFunction{FinSet{n}, FinSet{target_.positions()},
                             std::vector<int>(n)},
                 {}};
  m.on_directions.reserve(n);
  for (int i = 0; i < n; ++i) {
    auto [term, map] = tables_[i].element(digit[i]);
    m.on_positions.map[i] = term;
    m.on_directions.push_back(std::move(map));
  }
  return m;
}

std::size_t PolyHomSet::index_of(const PolyMorphism& m) const {
  std::size_t rank = 0;
  for (int i = 0; i < source_.positions(); ++i) {
    std::size_t digit = tables_[i].index_of(
        m.on_positions.map[i], std::span<const int>(m.on_directions[i].map));
    rank = rank * tables_[i].size() + digit;
  }
  return rank;
}

Nat hom_count(const Poly& p, const Poly& q) {
  Nat total = 1;
  for (int e : p.exponents()) total *= eval_count(q, FinSet{e});
  return total;
}

std::vector<PolyMorphism> hom_enumerate(const Poly& p, const Poly& q,
                                        std::size_t budget) {
  PolyHomSet homs(p, q, budget);
  std::size_t n = homs.checked_count(budget);
  std::vector<PolyMorphism> out;
  out.reserve(n);
  for (std::size_t r = 0; r < n; ++r) out.push_back(homs.element(r));
  return out;
}

Poly add(const Poly& p, const Poly& q) {
  std::vector<int> exps = p.exponents();
  exps.insert(exps.end(), q.exponents().begin(), q.exponents().end());
  return Poly(std::move(exps));
}

Poly multiply(const Poly& p, const Poly& q) {
  std::vector<int> exps;
  exps.reserve(static_cast<std::size_t>(p.positions()) * q.positions());
  for (int a : p.exponents())
    for (int b : q.exponents()) exps.push_back(a + b);
  return Poly(std::move(exps));
}

Poly tensor(const Poly& p, const Poly& q) {
  std::vector<int> exps;
  exps.reserve(static_cast<std::size_t>(p.positions()) * q.positions());
  for (int a : p.exponents())
    for (int b : q.exponents()) exps.push_back(a * b);
  return Poly(std::move(exps));
}

Poly substitute(const Poly& p, const Poly& q, std::size_t budget) {
  // Positions of P o Q are pairs (i, w : exp_i -> Q(1)); the exponent at
  // (i, w) is the total size of the direction sets glued along w.
  Nat terms = 0;
  for (int e : p.exponents()) terms += nat_pow(q.positions(), e);
  std::size_t total = checked_size(terms, budget, "substitute");

  std::vector<int> exps;
  exps.reserve(total);
  for (int e : p.exponents()) {
    if (q.positions() == 0) {
      if (e == 0) exps.push_back(0);
      continue;
    }
    std::vector<int> w(e, 0);
    for (;;) {
      int exponent = 0;
      for (int d = 0; d < e; ++d) exponent += q.exponent(w[d]);
      exps.push_back(exponent);
      int d = e - 1;
      while (d >= 0 && w[d] == q.positions() - 1) w[d--] = 0;
      if (d < 0) break;
      ++w[d];
    }
  }
  return Poly(std::move(exps));
}

Poly internal_hom(const Poly& a, const Poly& q, std::size_t budget) {
  Poly acc = Poly::one();
  for (int coeff : a.exponents()) {
    Poly factor = substitute(q, Poly::copies(coeff, 1), budget);
    checked_size(Nat(acc.positions()) * factor.positions(), budget,
                 "internal_hom");
    acc = multiply(acc, factor);
  }
  return acc;
}

Poly power(const Poly& q, const Poly& a, std::size_t budget) {
  Poly acc = Poly::one();
  for (int coeff : a.exponents()) {
    Poly factor =
        substitute(q, add(Poly::copies(coeff, 0), Poly::y()), budget);
    checked_size(Nat(acc.positions()) * factor.positions(), budget, "power");
    acc = multiply(acc, factor);
  }
  return acc;
}

Nat global_sections(const Poly& p) {
  Nat total = 1;
  for (int e : p.exponents()) total *= e;
  return total;
}

std::vector<std::pair<int, Poly>> decompose(const Poly& p) {
  std::vector<std::pair<int, Poly>> parts;
  parts.reserve(p.positions());
  for (int i = 0; i < p.positions(); ++i)
    parts.emplace_back(i, Poly::representable(p.exponent(i)));
  return parts;
}

PolyPullback pullback(const PolyMorphism& f, const PolyMorphism& g) {
  if (f.target != g.target)
    throw mismatch_error("pullback: morphisms must share a target");
  const Poly& p = f.source;
  const Poly& q = g.source;

  struct Part {
    int exponent;
    int i, j;
    FinFunction into_left;   // exp_i -> glued directions
    FinFunction into_right;  // exp_j -> glued directions
  };
  std::vector<Part> parts;
  for (int i = 0; i < p.positions(); ++i)
    for (int j = 0; j < q.positions(); ++j) {
      if (f.on_positions.map[i] != g.on_positions.map[j]) continue;
      std::vector<FinFunction> legs{f.on_directions[i], g.on_directions[j]};
      auto po = wide_pushout(legs);
      parts.push_back(
          {po.object.size, i, j, po.injections[0], po.injections[1]});
    }
  std::stable_sort(
      parts.begin(), parts.end(),
      [](const Part& a, const Part& b) { return a.exponent > b.exponent; });

  std::vector<int> exps;
  exps.reserve(parts.size());
  for (auto& part : parts) exps.push_back(part.exponent);
  Poly object(std::move(exps));

  const int n = static_cast<int>(parts.size());
  PolyPullback out{
      object,
      PolyMorphism{object, p,
                   FinFunction{FinSet{n}, FinSet{p.positions()},
                               std::vector<int>(n)},
                   {}},
      PolyMorphism{object, q,
                   FinFunction{FinSet{n}, FinSet{q.positions()},
                               std::vector<int>(n)},
                   {}}};
  for (int k = 0; k < n; ++k) {
    out.to_left.on_positions.map[k] = parts[k].i;
    out.to_right.on_positions.map[k] = parts[k].j;
    out.to_left.on_directions.push_back(parts[k].into_left);
    out.to_right.on_directions.push_back(parts[k].into_right);
  }
  return out;
}

namespace {

IndexedPairs pairs_indexed(const Poly& p, const Poly& q,
                           const std::function<int(int, int)>& exp_of) {
  IndexedPairs out;
  out.left = p;
  out.right = q;
  struct Entry {
    int exponent;
    int i, j;
  };
  std::vector<Entry> entries;
  entries.reserve(static_cast<std::size_t>(p.positions()) * q.positions());
  for (int i = 0; i < p.positions(); ++i)
    for (int j = 0; j < q.positions(); ++j)
      entries.push_back({exp_of(p.exponent(i), q.exponent(j)), i, j});
  std::stable_sort(
      entries.begin(), entries.end(),
      [](const Entry& a, const Entry& b) { return a.exponent > b.exponent; });
  std::vector<int> exps;
  exps.reserve(entries.size());
  out.pairs.reserve(entries.size());
  out.lookup.assign(entries.size(), -1);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    exps.push_back(entries[k].exponent);
    out.pairs.emplace_back(entries[k].i, entries[k].j);
    out.lookup[static_cast<std::size_t>(entries[k].i) * q.positions() +
               entries[k].j] = static_cast<int>(k);
  }
  out.object = Poly(std::move(exps));
  return out;
}

}  // namespace

IndexedPairs multiply_indexed(const Poly& p, const Poly& q) {
  return pairs_indexed(p, q, [](int a, int b) { return a + b; });
}

IndexedPairs tensor_indexed(const Poly& p, const Poly& q) {
  return pairs_indexed(p, q, [](int a, int b) { return a * b; });
}

IndexedSum sum_indexed(std::span<const Poly> summands) {
  IndexedSum out;
  out.summands.assign(summands.begin(), summands.end());
  struct Entry {
    int exponent;
    int summand, position;
  };
  std::vector<Entry> entries;
  for (std::size_t s = 0; s < summands.size(); ++s)
    for (int i = 0; i < summands[s].positions(); ++i)
      entries.push_back({summands[s].exponent(i), static_cast<int>(s), i});
  std::stable_sort(
      entries.begin(), entries.end(),
      [](const Entry& a, const Entry& b) { return a.exponent > b.exponent; });
  std::vector<int> exps;
  out.injections.resize(summands.size());
  for (std::size_t s = 0; s < summands.size(); ++s)
    out.injections[s].resize(summands[s].positions());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    exps.push_back(entries[k].exponent);
    out.sources.emplace_back(entries[k].summand, entries[k].position);
    out.injections[entries[k].summand][entries[k].position] =
        static_cast<int>(k);
  }
  out.object = Poly(std::move(exps));
  return out;
}

int IndexedSubstitute::position_of(int outer_position,
                                   const FinFunction& assignment) const {
  std::size_t rank = rank_base[outer_position] + map_rank(assignment);
  return lookup[rank];
}

std::vector<int> IndexedSubstitute::block_offsets(int position) const {
  const Pos& pos = positions[position];
  std::vector<int> offsets;
  offsets.reserve(pos.assignment.map.size() + 1);
  int acc = 0;
  for (int r : pos.assignment.map) {
    offsets.push_back(acc);
    acc += inner.exponent(r);
  }
  offsets.push_back(acc);
  return offsets;
}

IndexedSubstitute substitute_indexed(const Poly& p, const Poly& q,
                                     std::size_t budget) {
  Nat terms = 0;
  for (int e : p.exponents()) terms += nat_pow(q.positions(), e);
  checked_size(terms, budget, "substitute");

  IndexedSubstitute out;
  out.outer = p;
  out.inner = q;

  struct Entry {
    int exponent;
    int outer;
    FinFunction assignment;
  };
  std::vector<Entry> entries;
  out.rank_base.reserve(p.positions());
  std::size_t base = 0;
  for (int i = 0; i < p.positions(); ++i) {
    out.rank_base.push_back(base);
    int e = p.exponent(i);
    base += static_cast<std::size_t>(nat_pow(q.positions(), e));
    for (auto& w : enumerate_maps(FinSet{e}, FinSet{q.positions()}, budget)) {
      int exponent = 0;
      for (int r : w.map) exponent += q.exponent(r);
      entries.push_back({exponent, i, w});
    }
  }
  std::stable_sort(
      entries.begin(), entries.end(),
      [](const Entry& a, const Entry& b) { return a.exponent > b.exponent; });
  std::vector<int> exps;
  exps.reserve(entries.size());
  out.positions.reserve(entries.size());
  out.lookup.assign(base, -1);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    exps.push_back(entries[k].exponent);
    out.lookup[out.rank_base[entries[k].outer] +
               map_rank(entries[k].assignment)] = static_cast<int>(k);
    out.positions.push_back(
        {entries[k].outer, std::move(entries[k].assignment)});
  }
  out.object = Poly(std::move(exps));
  return out;
}

int IndexedProduct::position_of(std::span<const int> tuple) const {
  std::size_t rank = 0;
  for (std::size_t u = 0; u < factors.size(); ++u)
    rank = rank * factors[u].positions() + tuple[u];
  return lookup[rank];
}

std::vector<int> IndexedProduct::block_offsets(int position) const {
  const auto& tuple = tuples[position];
  std::vector<int> offsets;
  offsets.reserve(tuple.size() + 1);
  int acc = 0;
  for (std::size_t u = 0; u < tuple.size(); ++u) {
    offsets.push_back(acc);
    acc += factors[u].exponent(tuple[u]);
  }
  offsets.push_back(acc);
  return offsets;
}

IndexedProduct product_indexed(std::vector<Poly> factors, std::size_t budget) {
  Nat terms = 1;
  for (const Poly& f : factors) terms *= f.positions();
  std::size_t total = checked_size(terms, budget, "product");

  IndexedProduct out;
  out.factors = std::move(factors);
  struct Entry {
    int exponent;
    std::vector<int> tuple;
  };
  std::vector<Entry> entries;
  entries.reserve(total);
  std::vector<int> tuple(out.factors.size(), 0);
  if (total > 0) {
    for (;;) {
      int exponent = 0;
      for (std::size_t u = 0; u < out.factors.size(); ++u)
        exponent += out.factors[u].exponent(tuple[u]);
      entries.push_back({exponent, tuple});
      int u = static_cast<int>(out.factors.size()) - 1;
      while (u >= 0 && tuple[u] == out.factors[u].positions() - 1)
        tuple[u--] = 0;
      if (u < 0) break;
      ++tuple[u];
    }
  }
  std::stable_sort(
      entries.begin(), entries.end(),
      [](const Entry& a, const Entry& b) { return a.exponent > b.exponent; });
  std::vector<int> exps;
  exps.reserve(entries.size());
  out.tuples.reserve(entries.size());
  out.lookup.assign(total, -1);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    exps.push_back(entries[k].exponent);
    std::size_t rank = 0;
    for (std::size_t u = 0; u < out.factors.size(); ++u)
      rank = rank * out.factors[u].positions() + entries[k].tuple[u];
    out.lookup[rank] = static_cast<int>(k);
    out.tuples.push_back(std::move(entries[k].tuple));
  }
  out.object = Poly(std::move(exps));
  return out;
}

PolyMorphism tensor_with_identity(const PolyMorphism& t, const Poly& a) {
  IndexedPairs src = tensor_indexed(t.source, a);
  IndexedPairs dst = tensor_indexed(t.target, a);
  const int n = src.object.positions();
  PolyMorphism out{src.object, dst.object,
                   FinFunction{FinSet{n}, FinSet{dst.object.positions()},
                               std::vector<int>(n)},
                   {}};
  out.on_directions.reserve(n);
  for (int k = 0; k < n; ++k) {
    auto [i, u] = src.pairs[k];
    int ti = t.on_positions.map[i];
    int dk = dst.position_of(ti, u);
    out.on_positions.map[k] = dk;
    const auto& pull = t.on_directions[i];  // exp_target(ti) -> exp_source(i)
    int au = a.exponent(u);
    FinFunction dir{FinSet{dst.object.exponent(dk)},
                    FinSet{src.object.exponent(k)},
                    std::vector<int>(dst.object.exponent(dk))};
    for (int x = 0; x < pull.dom.size; ++x)
      for (int y = 0; y < au; ++y) dir.map[x * au + y] = pull.map[x] * au + y;
    out.on_directions.push_back(std::move(dir));
  }
  return out;
}

PolyMorphism multiply_with_identity(const PolyMorphism& t, const Poly& a) {
  IndexedPairs src = multiply_indexed(t.source, a);
  IndexedPairs dst = multiply_indexed(t.target, a);
  const int n = src.object.positions();
  PolyMorphism out{src.object, dst.object,
                   FinFunction{FinSet{n}, FinSet{dst.object.positions()},
                               std::vector<int>(n)},
                   {}};
  out.on_directions.reserve(n);
  for (int k = 0; k < n; ++k) {
    auto [i, u] = src.pairs[k];
    int ti = t.on_positions.map[i];
    int dk = dst.position_of(ti, u);
    out.on_positions.map[k] = dk;
    const auto& pull = t.on_directions[i];
    int au = a.exponent(u);
    int left_block = t.source.exponent(i);
    FinFunction dir{FinSet{dst.object.exponent(dk)},
                    FinSet{src.object.exponent(k)},
                    std::vector<int>(dst.object.exponent(dk))};
    for (int x = 0; x < pull.dom.size; ++x) dir.map[x] = pull.map[x];
    for (int y = 0; y < au; ++y) dir.map[pull.dom.size + y] = left_block + y;
    out.on_directions.push_back(std::move(dir));
  }
  return out;
}

}  // namespace dirpoly
