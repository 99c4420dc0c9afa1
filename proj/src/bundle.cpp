#include "dirpoly/bundle.hpp"

#include <algorithm>
#include <numeric>

namespace dirpoly {

bool is_valid(const Bundle& b) { return is_valid(b.proj); }

std::vector<std::vector<int>> fibers(const Bundle& b) {
  std::vector<std::vector<int>> out(b.base().size);
  for (int x = 0; x < b.total().size; ++x) out[b.proj.map[x]].push_back(x);
  return out;
}

std::vector<int> fiber_local_index(const Bundle& b) {
  std::vector<int> seen(b.base().size, 0);
  std::vector<int> local(b.total().size);
  for (int x = 0; x < b.total().size; ++x) local[x] = seen[b.proj.map[x]]++;
  return local;
}

bool is_canonical(const Bundle& b) {
  if (!std::is_sorted(b.proj.map.begin(), b.proj.map.end())) return false;
  auto sizes = fiber_sizes(b.proj);
  return std::is_sorted(sizes.begin(), sizes.end(), std::greater<>());
}

Canonicalization canonicalize(const Bundle& b) {
  auto sizes = fiber_sizes(b.proj);
  std::vector<int> order(b.base().size);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return sizes[i] > sizes[j]; });

  FinFunction base_perm{b.base(), b.base(), std::vector<int>(b.base().size)};
  for (int rank = 0; rank < b.base().size; ++rank)
    base_perm.map[order[rank]] = rank;

  std::vector<int> offset(b.base().size, 0);
  {
    int acc = 0;
    for (int rank = 0; rank < b.base().size; ++rank) {
      offset[order[rank]] = acc;
      acc += sizes[order[rank]];
    }
  }

  auto local = fiber_local_index(b);
  FinFunction total_perm{b.total(), b.total(), std::vector<int>(b.total().size)};
  FinFunction proj{b.total(), b.base(), std::vector<int>(b.total().size)};
  for (int x = 0; x < b.total().size; ++x) {
    int image = offset[b.proj.map[x]] + local[x];
    total_perm.map[x] = image;
    proj.map[image] = base_perm.map[b.proj.map[x]];
  }
  return {Bundle{std::move(proj)}, std::move(base_perm), std::move(total_perm)};
}

bool is_valid(const BunMorphism& m) {
  if (!is_valid(m.source) || !is_valid(m.target)) return false;
  if (m.total_map.dom != m.source.total() ||
      m.total_map.cod != m.target.total())
    return false;
  if (m.base_map.dom != m.source.base() || m.base_map.cod != m.target.base())
    return false;
  if (!is_valid(m.total_map) || !is_valid(m.base_map)) return false;
  return compose(m.target.proj, m.total_map) ==
         compose(m.base_map, m.source.proj);
}

bool is_valid(const ContMorphism& m) {
  if (!is_valid(m.source) || !is_valid(m.target)) return false;
  if (m.base_map.dom != m.source.base() || m.base_map.cod != m.target.base())
    return false;
  if (!is_valid(m.base_map)) return false;
  if (static_cast<int>(m.pull_maps.size()) != m.source.base().size)
    return false;
  auto src_sizes = fiber_sizes(m.source.proj);
  auto tgt_sizes = fiber_sizes(m.target.proj);
  for (int j = 0; j < m.source.base().size; ++j) {
    const auto& pull = m.pull_maps[j];
    if (pull.dom.size != tgt_sizes[m.base_map.map[j]]) return false;
    if (pull.cod.size != src_sizes[j]) return false;
    if (!is_valid(pull)) return false;
  }
  return true;
}

BunMorphism identity_bun(const Bundle& b) {
  return {b, b, identity(b.total()), identity(b.base())};
}

ContMorphism identity_cont(const Bundle& b) {
  ContMorphism m{b, b, identity(b.base()), {}};
  for (int size : fiber_sizes(b.proj))
    m.pull_maps.push_back(identity(FinSet{size}));
  return m;
}

BunMorphism compose(const BunMorphism& n, const BunMorphism& m) {
  if (m.target != n.source)
    throw mismatch_error("compose: middle bundle differs");
  return {m.source, n.target, compose(n.total_map, m.total_map),
          compose(n.base_map, m.base_map)};
}

ContMorphism compose(const ContMorphism& n, const ContMorphism& m) {
  if (m.target != n.source)
    throw mismatch_error("compose: middle bundle differs");
  ContMorphism out{m.source, n.target, compose(n.base_map, m.base_map), {}};
  out.pull_maps.reserve(m.pull_maps.size());
  for (int j = 0; j < m.source.base().size; ++j)
    out.pull_maps.push_back(
        compose(m.pull_maps[j], n.pull_maps[m.base_map.map[j]]));
  return out;
}

Bundle coproduct_bundle(const Bundle& a, const Bundle& b) {
  FinFunction proj{FinSet{a.total().size + b.total().size},
                   FinSet{a.base().size + b.base().size},
                   std::vector<int>(a.total().size + b.total().size)};
  for (int x = 0; x < a.total().size; ++x) proj.map[x] = a.proj.map[x];
  for (int x = 0; x < b.total().size; ++x)
    proj.map[a.total().size + x] = a.base().size + b.proj.map[x];
  return Bundle{std::move(proj)};
}

bool is_cartesian(const BunMorphism& m) {
  // Induced map x -> (proj(x), total(x)) into the pullback of the target
  // projection along the base map must be a bijection.
  auto tgt = fibers(m.target);
  Nat pullback_size = 0;
  for (int j = 0; j < m.source.base().size; ++j)
    pullback_size += static_cast<int>(tgt[m.base_map.map[j]].size());
  if (pullback_size != m.source.total().size) return false;

  if (m.source.total().size == 0) return true;
  std::vector<char> hit(
      static_cast<std::size_t>(m.source.base().size) * m.target.total().size,
      0);
  for (int x = 0; x < m.source.total().size; ++x) {
    std::size_t key =
        static_cast<std::size_t>(m.source.proj.map[x]) * m.target.total().size +
        m.total_map.map[x];
    if (hit[key]) return false;
    hit[key] = 1;
  }
  return true;
}

bool is_cartesian(const ContMorphism& m) {
  return std::all_of(m.pull_maps.begin(), m.pull_maps.end(),
                     [](const FinFunction& f) { return is_bijective(f); });
}

BunFactorization factorize(const BunMorphism& m) {
  if (!is_valid(m)) throw mismatch_error("factorize: ill-formed square");
  // Middle object: pairs (j, y) with target.proj(y) = base_map(j), ordered
  // lexicographically.
  std::vector<std::pair<int, int>> elements;
  for (int j = 0; j < m.source.base().size; ++j)
    for (int y = 0; y < m.target.total().size; ++y)
      if (m.target.proj.map[y] == m.base_map.map[j]) elements.emplace_back(j, y);

  std::vector<int> key(
      static_cast<std::size_t>(m.source.base().size) * m.target.total().size,
      -1);
  FinSet mid{static_cast<int>(elements.size())};
  FinFunction proj{mid, m.source.base(), std::vector<int>(mid.size)};
  FinFunction to_target{mid, m.target.total(), std::vector<int>(mid.size)};
  for (int e = 0; e < mid.size; ++e) {
    auto [j, y] = elements[e];
    proj.map[e] = j;
    to_target.map[e] = y;
    key[static_cast<std::size_t>(j) * m.target.total().size + y] = e;
  }
  Bundle middle{std::move(proj)};

  FinFunction induced{m.source.total(), mid,
                      std::vector<int>(m.source.total().size)};
  for (int x = 0; x < m.source.total().size; ++x)
    induced.map[x] = key[static_cast<std::size_t>(m.source.proj.map[x]) *
                             m.target.total().size +
                         m.total_map.map[x]];

  BunMorphism vertical{m.source, middle, std::move(induced),
                       identity(m.source.base())};
  BunMorphism cartesian{middle, m.target, std::move(to_target), m.base_map};
  return {std::move(middle), std::move(vertical), std::move(cartesian)};
}

BunHomSet::BunHomSet(Bundle source, Bundle target)
    : source_(std::move(source)), target_(std::move(target)) {
  source_fibers_ = fibers(source_);
  target_fibers_ = fibers(target_);
  const int t = source_.base().size;
  choice_offsets_.resize(t);
  choices_.resize(t);
  for (int j = 0; j < t; ++j) {
    std::size_t acc = 0;
    choice_offsets_[j].reserve(target_.base().size + 1);
    for (int b = 0; b < target_.base().size; ++b) {
      choice_offsets_[j].push_back(acc);
      Nat c = nat_pow(static_cast<int>(target_fibers_[b].size()),
                      source_fibers_[j].size());
      acc += static_cast<std::size_t>(c);
    }
    choice_offsets_[j].push_back(acc);
    choices_[j] = acc;
    size_ *= acc;
  }
}

std::size_t BunHomSet::checked_count(std::size_t budget) const {
  return checked_size(size_, budget, "enumerate_bun");
}

BunMorphism BunHomSet::element(std::size_t rank) const {
  const int t = source_.base().size;
  std::vector<std::size_t> digit(t);
  for (int j = t - 1; j >= 0; --j) {
    digit[j] = rank % choices_[j];
    rank /= choices_[j];
  }
  BunMorphism m{source_, target_,
                FinFunction{source_.total(), target_.total(),
                            std::vector<int>(source_.total().size)},
                FinFunction{source_.base(), target_.base(),
                            std::vector<int>(t)}};
  for (int j = 0; j < t; ++j) {
    int b = target_.base().size - 1;
    while (b > 0 && choice_offsets_[j][b] > digit[j]) --b;
    m.base_map.map[j] = b;
    std::size_t r = digit[j] - choice_offsets_[j][b];
    const auto& src = source_fibers_[j];
    const auto& tgt = target_fibers_[b];
    for (int v = static_cast<int>(src.size()) - 1; v >= 0; --v) {
      m.total_map.map[src[v]] = tgt[r % tgt.size()];
      r /= tgt.size();
    }
  }
  return m;
}

std::size_t BunHomSet::index_of(const BunMorphism& m) const {
  auto local = fiber_local_index(target_);
  std::size_t rank = 0;
  for (int j = 0; j < source_.base().size; ++j) {
    int b = m.base_map.map[j];
    const auto& src = source_fibers_[j];
    std::size_t r = 0;
    for (int x : src)
      r = r * target_fibers_[b].size() + local[m.total_map.map[x]];
    rank = rank * choices_[j] + (choice_offsets_[j][b] + r);
  }
  return rank;
}

ContHomSet::ContHomSet(Bundle source, Bundle target)
    : source_(std::move(source)), target_(std::move(target)) {
  source_fibers_ = fibers(source_);
  target_fibers_ = fibers(target_);
  const int t = source_.base().size;
  choice_offsets_.resize(t);
  choices_.resize(t);
  for (int j = 0; j < t; ++j) {
    std::size_t acc = 0;
    choice_offsets_[j].reserve(target_.base().size + 1);
    for (int b = 0; b < target_.base().size; ++b) {
      choice_offsets_[j].push_back(acc);
      Nat c = nat_pow(static_cast<int>(source_fibers_[j].size()),
                      target_fibers_[b].size());
      acc += static_cast<std::size_t>(c);
    }
    choice_offsets_[j].push_back(acc);
    choices_[j] = acc;
    size_ *= acc;
  }
}

std::size_t ContHomSet::checked_count(std::size_t budget) const {
  return checked_size(size_, budget, "enumerate_cont");
}

ContMorphism ContHomSet::element(std::size_t rank) const {
  const int t = source_.base().size;
  std::vector<std::size_t> digit(t);
  for (int j = t - 1; j >= 0; --j) {
    digit[j] = rank % choices_[j];
    rank /= choices_[j];
  }
  ContMorphism m{source_, target_,
                 FinFunction{source_.base(), target_.base(),
                             std::vector<int>(t)},
                 {}};
  m.pull_maps.reserve(t);
  for (int j = 0; j < t; ++j) {
    int b = target_.base().size - 1;
    while (b > 0 && choice_offsets_[j][b] > digit[j]) --b;
    m.base_map.map[j] = b;
    std::size_t r = digit[j] - choice_offsets_[j][b];
    const int k_src = static_cast<int>(source_fibers_[j].size());
    const int k_tgt = static_cast<int>(target_fibers_[b].size());
    FinFunction pull{FinSet{k_tgt}, FinSet{k_src}, std::vector<int>(k_tgt)};
    for (int v = k_tgt - 1; v >= 0; --v) {
      pull.map[v] = static_cast<int>(r % k_src);
      r /= k_src;
    }
    m.pull_maps.push_back(std::move(pull));
  }
  return m;
}

std::size_t ContHomSet::index_of(const ContMorphism& m) const {
  std::size_t rank = 0;
  for (int j = 0; j < source_.base().size; ++j) {
    int b = m.base_map.map[j];
    std::size_t r = 0;
    for (int v : m.pull_maps[j].map)
      r = r * source_fibers_[j].size() + v;
    rank = rank * choices_[j] + (choice_offsets_[j][b] + r);
  }
  return rank;
}

Nat bun_hom_count(const Bundle& source, const Bundle& target) {
  Dir e = dir_of_bundle(target);
  Nat total = 1;
  for (auto& fib : fibers(source))
    total *= eval_count(e, FinSet{static_cast<int>(fib.size())});
  return total;
}

Nat cont_hom_count(const Bundle& source, const Bundle& target) {
  Poly q = poly_of_bundle(target);
  Nat total = 1;
  for (auto& fib : fibers(source))
    total *= eval_count(q, FinSet{static_cast<int>(fib.size())});
  return total;
}

std::vector<BunMorphism> enumerate_bun(const Bundle& source,
                                       const Bundle& target,
                                       std::size_t budget) {
  BunHomSet homs(source, target);
  std::size_t n = homs.checked_count(budget);
  std::vector<BunMorphism> out;
  out.reserve(n);
  for (std::size_t r = 0; r < n; ++r) out.push_back(homs.element(r));
  return out;
}

std::vector<ContMorphism> enumerate_cont(const Bundle& source,
                                         const Bundle& target,
                                         std::size_t budget) {
  ContHomSet homs(source, target);
  std::size_t n = homs.checked_count(budget);
  std::vector<ContMorphism> out;
  out.reserve(n);
  for (std::size_t r = 0; r < n; ++r) out.push_back(homs.element(r));
  return out;
}

Dir dirichlet_transform(const Poly& p) { return Dir(p.exponents()); }

Poly inverse_transform(const Dir& d) { return Poly(d.bases()); }

Dir dir_of_bundle(const Bundle& b) { return Dir(fiber_sizes(b.proj)); }

Poly poly_of_bundle(const Bundle& b) { return Poly(fiber_sizes(b.proj)); }

Bundle bundle_of_dir(const Dir& d) {
  FinFunction proj{FinSet{d.sum_of_bases()}, FinSet{d.term_count()},
                   std::vector<int>()};
  proj.map.reserve(d.sum_of_bases());
  for (int i = 0; i < d.term_count(); ++i)
    for (int v = 0; v < d.base(i); ++v) proj.map.push_back(i);
  return Bundle{std::move(proj)};
}

Bundle bundle_of_poly(const Poly& p) {
  return bundle_of_dir(dirichlet_transform(p));
}

Bundle pi(const Dir& d) { return Bundle{projection_map(d)}; }

DirMorphism functor_D(const BunMorphism& m) {
  if (!is_valid(m)) throw mismatch_error("functor_D: ill-formed square");
  auto src = canonicalize(m.source);
  auto tgt = canonicalize(m.target);
  Dir d = dir_of_bundle(m.source);
  Dir e = dir_of_bundle(m.target);

  auto src_order = inverse(src.base_perm);  // canonical term -> original base
  auto src_fib = fibers(m.source);
  auto tgt_local = fiber_local_index(m.target);

  DirMorphism out{d, e,
                  FinFunction{FinSet{d.term_count()}, FinSet{e.term_count()},
                              std::vector<int>(d.term_count())},
                  {}};
  out.on_bases.reserve(d.term_count());
  for (int i = 0; i < d.term_count(); ++i) {
    int j = src_order.map[i];
    int jt = m.base_map.map[j];
    out.on_terms.map[i] = tgt.base_perm.map[jt];
    FinFunction push{FinSet{d.base(i)}, FinSet{e.base(out.on_terms.map[i])},
                     std::vector<int>(d.base(i))};
    for (int v = 0; v < d.base(i); ++v)
      push.map[v] = tgt_local[m.total_map.map[src_fib[j][v]]];
    out.on_bases.push_back(std::move(push));
  }
  return out;
}

BunMorphism functor_D_inverse(const DirMorphism& n) {
  Bundle src = bundle_of_dir(n.source);
  Bundle tgt = bundle_of_dir(n.target);
  // Canonical bundles have consecutive fibers, so block offsets are sums.
  std::vector<int> src_offset(n.source.term_count() + 1, 0);
  for (int i = 0; i < n.source.term_count(); ++i)
    src_offset[i + 1] = src_offset[i] + n.source.base(i);
  std::vector<int> tgt_offset(n.target.term_count() + 1, 0);
  for (int i = 0; i < n.target.term_count(); ++i)
    tgt_offset[i + 1] = tgt_offset[i] + n.target.base(i);

  BunMorphism out{src, tgt,
                  FinFunction{src.total(), tgt.total(),
                              std::vector<int>(src.total().size)},
                  n.on_terms};
  for (int i = 0; i < n.source.term_count(); ++i)
    for (int v = 0; v < n.source.base(i); ++v)
      out.total_map.map[src_offset[i] + v] =
          tgt_offset[n.on_terms.map[i]] + n.on_bases[i].map[v];
  return out;
}

BunMorphism functor_D_inverse(const DirMorphism& n, const Bundle& source,
                              const Bundle& target) {
  if (source != bundle_of_dir(n.source) || target != bundle_of_dir(n.target))
    throw non_canonical_bundle_error(
        "functor_D_inverse: bundles are not the canonical representatives "
        "of the morphism's endpoints");
  return functor_D_inverse(n);
}

PolyMorphism functor_P(const ContMorphism& m) {
  if (!is_valid(m)) throw mismatch_error("functor_P: ill-formed morphism");
  auto src = canonicalize(m.source);
  auto tgt = canonicalize(m.target);
  Poly p = poly_of_bundle(m.source);
  Poly q = poly_of_bundle(m.target);

  auto src_order = inverse(src.base_perm);

  PolyMorphism out{p, q,
                   FinFunction{FinSet{p.positions()}, FinSet{q.positions()},
                               std::vector<int>(p.positions())},
                   {}};
  out.on_directions.reserve(p.positions());
  for (int i = 0; i < p.positions(); ++i) {
    int j = src_order.map[i];
    out.on_positions.map[i] = tgt.base_perm.map[m.base_map.map[j]];
    out.on_directions.push_back(m.pull_maps[j]);
  }
  return out;
}

ContMorphism functor_P_inverse(const PolyMorphism& n) {
  Bundle src = bundle_of_poly(n.source);
  Bundle tgt = bundle_of_poly(n.target);
  return ContMorphism{std::move(src), std::move(tgt), n.on_positions,
                      n.on_directions};
}

ContMorphism functor_P_inverse(const PolyMorphism& n, const Bundle& source,
                               const Bundle& target) {
  if (source != bundle_of_poly(n.source) || target != bundle_of_poly(n.target))
    throw non_canonical_bundle_error(
        "functor_P_inverse: bundles are not the canonical representatives "
        "of the morphism's endpoints");
  return functor_P_inverse(n);
}

ContMorphism to_cont_cart(const BunMorphism& m) {
  if (!is_cartesian(m))
    throw not_cartesian_error("to_cont_cart: morphism is not cartesian");
  auto src_fib = fibers(m.source);
  auto tgt_local = fiber_local_index(m.target);
  ContMorphism out{m.source, m.target, m.base_map, {}};
  out.pull_maps.reserve(src_fib.size());
  auto tgt_sizes = fiber_sizes(m.target.proj);
  for (int j = 0; j < m.source.base().size; ++j) {
    // The fiber restriction of the total map is a bijection; invert it.
    int k = static_cast<int>(src_fib[j].size());
    FinFunction restriction{FinSet{k}, FinSet{tgt_sizes[m.base_map.map[j]]},
                            std::vector<int>(k)};
    for (int v = 0; v < k; ++v)
      restriction.map[v] = tgt_local[m.total_map.map[src_fib[j][v]]];
    out.pull_maps.push_back(inverse(restriction));
  }
  return out;
}

BunMorphism to_bun_cart(const ContMorphism& m) {
  if (!is_cartesian(m))
    throw not_cartesian_error("to_bun_cart: morphism is not cartesian");
  auto src_fib = fibers(m.source);
  auto tgt_fib = fibers(m.target);
  BunMorphism out{m.source, m.target,
                  FinFunction{m.source.total(), m.target.total(),
                              std::vector<int>(m.source.total().size)},
                  m.base_map};
  for (int j = 0; j < m.source.base().size; ++j) {
    FinFunction up = inverse(m.pull_maps[j]);  // fiber(j) -> fiber'(f(j))
    for (int v = 0; v < up.dom.size; ++v)
      out.total_map.map[src_fib[j][v]] =
          tgt_fib[m.base_map.map[j]][up.map[v]];
  }
  return out;
}

DirMorphism to_dir_cart(const PolyMorphism& m) {
  if (!is_cartesian(m))
    throw not_cartesian_error("to_dir_cart: morphism is not cartesian");
  DirMorphism out{dirichlet_transform(m.source), dirichlet_transform(m.target),
                  m.on_positions, {}};
  out.on_bases.reserve(m.on_directions.size());
  for (const auto& dir : m.on_directions) out.on_bases.push_back(inverse(dir));
  return out;
}

PolyMorphism to_poly_cart(const DirMorphism& m) {
  if (!is_cartesian(m))
    throw not_cartesian_error("to_poly_cart: morphism is not cartesian");
  PolyMorphism out{inverse_transform(m.source), inverse_transform(m.target),
                   m.on_terms, {}};
  out.on_directions.reserve(m.on_bases.size());
  for (const auto& base : m.on_bases) out.on_directions.push_back(inverse(base));
  return out;
}

}  // namespace dirpoly
