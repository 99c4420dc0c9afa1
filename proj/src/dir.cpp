#include "dirpoly/dir.hpp"

#include <algorithm>
#include <functional>

namespace dirpoly {

Dir::Dir(std::vector<int> bases) : bases_(std::move(bases)) {
  for (int b : bases_)
    if (b < 0) throw mismatch_error("Dir: negative base");
  std::sort(bases_.begin(), bases_.end(), std::greater<>());
}

Dir Dir::representable(int d) { return Dir(std::vector<int>{d}); }

Dir Dir::copies(int count, int d) {
  if (count < 0) throw mismatch_error("Dir: negative coefficient");
  return Dir(std::vector<int>(count, d));
}

int Dir::sum_of_bases() const {
  int total = 0;
  for (int b : bases_) total += b;
  return total;
}

int Dir::zero_content() const {
  return static_cast<int>(std::count(bases_.begin(), bases_.end(), 0));
}

Nat eval_count(const Dir& d, FinSet x) {
  Nat total = 0;
  for (int b : d.bases()) total += nat_pow(b, x.size);
  return total;
}

DirTable::DirTable(Dir d, FinSet x, std::size_t budget)
    : dir_(std::move(d)), x_(x) {
  Nat total = eval_count(dir_, x_);
  size_ = checked_size(total, budget, "eval_obj");
  offsets_.reserve(dir_.term_count());
  std::size_t acc = 0;
  for (int b : dir_.bases()) {
    offsets_.push_back(acc);
    acc += static_cast<std::size_t>(nat_pow(b, x_.size));
  }
}

int DirTable::term_of(std::size_t index) const {
  int term = static_cast<int>(offsets_.size()) - 1;
  while (term > 0 && offsets_[term] > index) --term;
  return term;
}

int DirTable::decode(std::size_t index, std::vector<int>& digits) const {
  int term = term_of(index);
  int b = dir_.base(term);
  digits.resize(x_.size);
  std::size_t r = index - offsets_[term];
  for (int d = x_.size - 1; d >= 0; --d) {
    digits[d] = static_cast<int>(r % b);
    r /= b;
  }
  return term;
}

std::pair<int, FinFunction> DirTable::element(std::size_t index) const {
  std::vector<int> digits;
  int term = decode(index, digits);
  return {term, FinFunction{x_, FinSet{dir_.base(term)}, std::move(digits)}};
}

std::size_t DirTable::index_of(int term, std::span<const int> digits) const {
  std::size_t r = 0;
  for (int v : digits) r = r * dir_.base(term) + v;
  return offsets_[term] + r;
}

DirTable eval_obj(const Dir& d, FinSet x, std::size_t budget) {
  return DirTable(d, x, budget);
}

FinFunction eval_map(const Dir& d, const FinFunction& g, std::size_t budget) {
  // Contravariant: a map g : X -> X' acts D(X') -> D(X).
  DirTable from(d, g.cod, budget);
  DirTable to(d, g.dom, budget);
  FinFunction out{from.value(), to.value(), std::vector<int>(from.size())};
  std::vector<int> digits, image(g.dom.size);
  for (std::size_t idx = 0; idx < from.size(); ++idx) {
    int term = from.decode(idx, digits);
    for (int v = 0; v < g.dom.size; ++v) image[v] = digits[g.map[v]];
    out.map[idx] = static_cast<int>(to.index_of(term, image));
  }
  return out;
}

FinFunction projection_map(const Dir& d) {
  return eval_map(d, FinFunction{FinSet{0}, FinSet{1}, {}},
                  std::max<std::size_t>(default_budget,
                                        static_cast<std::size_t>(
                                            d.sum_of_bases()) +
                                            d.term_count()));
}

bool is_valid(const DirMorphism& m) {
  const auto& f = m.on_terms;
  if (f.dom.size != m.source.term_count() ||
      f.cod.size != m.target.term_count())
    return false;
  if (!is_valid(f)) return false;
  if (static_cast<int>(m.on_bases.size()) != m.source.term_count())
    return false;
  for (int i = 0; i < m.source.term_count(); ++i) {
    const auto& b = m.on_bases[i];
    if (b.dom.size != m.source.base(i)) return false;
    if (b.cod.size != m.target.base(f.map[i])) return false;
    if (!is_valid(b)) return false;
  }
  return true;
}

DirMorphism identity_morphism(const Dir& d) {
  DirMorphism m{d, d, identity(FinSet{d.term_count()}), {}};
  m.on_bases.reserve(d.term_count());
  for (int b : d.bases()) m.on_bases.push_back(identity(FinSet{b}));
  return m;
}

DirMorphism compose(const DirMorphism& n, const DirMorphism& m) {
  if (m.target != n.source)
    throw mismatch_error("compose: middle Dirichlet polynomial differs");
  DirMorphism out{m.source, n.target, compose(n.on_terms, m.on_terms), {}};
  out.on_bases.reserve(m.source.term_count());
  for (int i = 0; i < m.source.term_count(); ++i)
    out.on_bases.push_back(
        compose(n.on_bases[m.on_terms.map[i]], m.on_bases[i]));
  return out;
}

FinFunction morphism_component(const DirMorphism& m, FinSet x,
                               std::size_t budget) {
  DirTable from(m.source, x, budget);
  DirTable to(m.target, x, budget);
  FinFunction out{from.value(), to.value(), std::vector<int>(from.size())};
  std::vector<int> digits, image(x.size);
  for (std::size_t idx = 0; idx < from.size(); ++idx) {
    int i = from.decode(idx, digits);
    int j = m.on_terms.map[i];
    const auto& push = m.on_bases[i];  // base_i -> base_target(j)
    for (int v = 0; v < x.size; ++v) image[v] = push.map[digits[v]];
    out.map[idx] = static_cast<int>(to.index_of(j, image));
  }
  return out;
}

bool is_cartesian(const DirMorphism& m) {
  return std::all_of(m.on_bases.begin(), m.on_bases.end(),
                     [](const FinFunction& b) { return is_bijective(b); });
}

DirHomSet::DirHomSet(Dir source, Dir target, std::size_t budget)
    : source_(std::move(source)), target_(std::move(target)) {
  tables_.reserve(source_.term_count());
  for (int b : source_.bases()) {
    tables_.emplace_back(target_, FinSet{b}, budget);
    size_ *= tables_.back().size();
  }
}

std::size_t DirHomSet::checked_count(std::size_t budget) const {
  return checked_size(size_, budget, "hom_enumerate");
}

DirMorphism DirHomSet::element(std::size_t rank) const {
  const int n = source_.term_count();
  std::vector<std::size_t> digit(n);
  for (int i = n - 1; i >= 0; --i) {
    digit[i] = rank % tables_[i].size();
    rank /= tables_[i].size();
  }
  DirMorphism m{source_, target_,
                FinFunction{FinSet{n}, FinSet{target_.term_count()},
                            std::vector<int>(n)},
                {}};
  m.on_bases.reserve(n);
  for (int i = 0; i < n; ++i) {
    auto [term, map] = tables_[i].element(digit[i]);
    m.on_terms.map[i] = term;
    m.on_bases.push_back(std::move(map));
  }
  return m;
}

std::size_t DirHomSet::index_of(const DirMorphism& m) const {
  std::size_t rank = 0;
  for (int i = 0; i < source_.term_count(); ++i) {
    std::size_t digit = tables_[i].index_of(
        m.on_terms.map[i], std::span<const int>(m.on_bases[i].map));
    rank = rank * tables_[i].size() + digit;
  }
  return rank;
}

Nat hom_count(const Dir& d, const Dir& e) {
  Nat total = 1;
  for (int b : d.bases()) total *= eval_count(e, FinSet{b});
  return total;
}

std::vector<DirMorphism> hom_enumerate(const Dir& d, const Dir& e,
                                       std::size_t budget) {
  DirHomSet homs(d, e, budget);
  std::size_t n = homs.checked_count(budget);
  std::vector<DirMorphism> out;
  out.reserve(n);
  for (std::size_t r = 0; r < n; ++r) out.push_back(homs.element(r));
  return out;
}

Dir add(const Dir& d, const Dir& e) {
  std::vector<int> bases = d.bases();
  bases.insert(bases.end(), e.bases().begin(), e.bases().end());
  return Dir(std::move(bases));
}

Dir multiply(const Dir& d, const Dir& e) {
  std::vector<int> bases;
  bases.reserve(static_cast<std::size_t>(d.term_count()) * e.term_count());
  for (int a : d.bases())
    for (int b : e.bases()) bases.push_back(a * b);
  return Dir(std::move(bases));
}

std::vector<std::pair<int, Dir>> decompose(const Dir& d) {
  std::vector<std::pair<int, Dir>> parts;
  parts.reserve(d.term_count());
  for (int i = 0; i < d.term_count(); ++i)
    parts.emplace_back(i, Dir::representable(d.base(i)));
  return parts;
}

DirIndexedPairs multiply_indexed(const Dir& d, const Dir& e) {
  DirIndexedPairs out;
  out.left = d;
  out.right = e;
  struct Entry {
    int base;
    int i, j;
  };
  std::vector<Entry> entries;
  entries.reserve(static_cast<std::size_t>(d.term_count()) * e.term_count());
  for (int i = 0; i < d.term_count(); ++i)
    for (int j = 0; j < e.term_count(); ++j)
      entries.push_back({d.base(i) * e.base(j), i, j});
  std::stable_sort(
      entries.begin(), entries.end(),
      [](const Entry& a, const Entry& b) { return a.base > b.base; });
  std::vector<int> bases;
  bases.reserve(entries.size());
  out.lookup.assign(entries.size(), -1);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    bases.push_back(entries[k].base);
    out.pairs.emplace_back(entries[k].i, entries[k].j);
    out.lookup[static_cast<std::size_t>(entries[k].i) * e.term_count() +
               entries[k].j] = static_cast<int>(k);
  }
  out.object = Dir(std::move(bases));
  return out;
}

DirIndexedSum sum_indexed(std::span<const Dir> summands) {
  DirIndexedSum out;
  out.summands.assign(summands.begin(), summands.end());
  struct Entry {
    int base;
    int summand, position;
  };
  std::vector<Entry> entries;
  for (std::size_t s = 0; s < summands.size(); ++s)
    for (int i = 0; i < summands[s].term_count(); ++i)
      entries.push_back({summands[s].base(i), static_cast<int>(s), i});
  std::stable_sort(
      entries.begin(), entries.end(),
      [](const Entry& a, const Entry& b) { return a.base > b.base; });
  std::vector<int> bases;
  out.injections.resize(summands.size());
  for (std::size_t s = 0; s < summands.size(); ++s)
    out.injections[s].resize(summands[s].term_count());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    bases.push_back(entries[k].base);
    out.sources.emplace_back(entries[k].summand, entries[k].position);
    out.injections[entries[k].summand][entries[k].position] =
        static_cast<int>(k);
  }
  out.object = Dir(std::move(bases));
  return out;
}

int DirIndexedProduct::position_of(std::span<const int> tuple) const {
  std::size_t rank = 0;
  for (std::size_t u = 0; u < factors.size(); ++u)
    rank = rank * factors[u].term_count() + tuple[u];
  return lookup[rank];
}

DirIndexedProduct product_indexed(std::vector<Dir> factors,
                                  std::size_t budget) {
  Nat terms = 1;
  for (const Dir& f : factors) terms *= f.term_count();
  std::size_t total = checked_size(terms, budget, "product");

  DirIndexedProduct out;
  out.factors = std::move(factors);
  struct Entry {
    int base;
    std::vector<int> tuple;
  };
  std::vector<Entry> entries;
  entries.reserve(total);
  std::vector<int> tuple(out.factors.size(), 0);
  if (total > 0) {
    for (;;) {
      int base = 1;
      for (std::size_t u = 0; u < out.factors.size(); ++u)
        base *= out.factors[u].base(tuple[u]);
      entries.push_back({base, tuple});
      int u = static_cast<int>(out.factors.size()) - 1;
      while (u >= 0 && tuple[u] == out.factors[u].term_count() - 1)
        tuple[u--] = 0;
      if (u < 0) break;
      ++tuple[u];
    }
  }
  std::stable_sort(
      entries.begin(), entries.end(),
      [](const Entry& a, const Entry& b) { return a.base > b.base; });
  std::vector<int> bases;
  bases.reserve(entries.size());
  out.tuples.reserve(entries.size());
  out.lookup.assign(total, -1);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    bases.push_back(entries[k].base);
    std::size_t rank = 0;
    for (std::size_t u = 0; u < out.factors.size(); ++u)
      rank = rank * out.factors[u].term_count() + entries[k].tuple[u];
    out.lookup[rank] = static_cast<int>(k);
    out.tuples.push_back(std::move(entries[k].tuple));
  }
  out.object = Dir(std::move(bases));
  return out;
}

}  // namespace dirpoly
