#include "dirpoly/topos.hpp"

#include <algorithm>

namespace dirpoly {

Bundle terminal_bundle() {
  return Bundle{FinFunction{FinSet{1}, FinSet{1}, {0}}};
}

Bundle initial_bundle() {
  return Bundle{FinFunction{FinSet{0}, FinSet{0}, {}}};
}

BunMorphism to_terminal(const Bundle& b) {
  return {b, terminal_bundle(), bang(b.total()), bang(b.base())};
}

BunMorphism from_initial(const Bundle& b) {
  return {initial_bundle(), b, FinFunction{FinSet{0}, b.total(), {}},
          FinFunction{FinSet{0}, b.base(), {}}};
}

BundleProduct product_bun(const Bundle& a, const Bundle& b) {
  auto totals = product(a.total(), b.total());
  auto bases = product(a.base(), b.base());
  FinFunction proj{totals.object, bases.object,
                   std::vector<int>(totals.object.size)};
  for (int e = 0; e < totals.object.size; ++e)
    proj.map[e] = pair_index(a.proj.map[totals.proj_left.map[e]],
                             b.proj.map[totals.proj_right.map[e]], b.base());
  Bundle object{std::move(proj)};
  BunMorphism left{object, a, totals.proj_left, bases.proj_left};
  BunMorphism right{object, b, totals.proj_right, bases.proj_right};
  return {std::move(object), std::move(left), std::move(right)};
}

BunMorphism pair_bun(const BundleProduct& prod, const BunMorphism& f,
                     const BunMorphism& g) {
  if (f.source != g.source)
    throw mismatch_error("pair_bun: cone legs have different sources");
  if (f.target != prod.proj_left.target || g.target != prod.proj_right.target)
    throw mismatch_error("pair_bun: cone legs do not match the product");
  const Bundle& z = f.source;
  FinSet tb = prod.proj_right.target.base();
  FinSet tt = prod.proj_right.target.total();
  BunMorphism out{z, prod.object,
                  FinFunction{z.total(), prod.object.total(),
                              std::vector<int>(z.total().size)},
                  FinFunction{z.base(), prod.object.base(),
                              std::vector<int>(z.base().size)}};
  for (int x = 0; x < z.total().size; ++x)
    out.total_map.map[x] =
        pair_index(f.total_map.map[x], g.total_map.map[x], tt);
  for (int j = 0; j < z.base().size; ++j)
    out.base_map.map[j] =
        pair_index(f.base_map.map[j], g.base_map.map[j], tb);
  return out;
}

BundleCoproduct coproduct_bun(const Bundle& a, const Bundle& b) {
  Bundle object = coproduct_bundle(a, b);
  auto totals = coproduct(a.total(), b.total());
  auto bases = coproduct(a.base(), b.base());
  BunMorphism left{a, object, totals.inj_left, bases.inj_left};
  BunMorphism right{b, object, totals.inj_right, bases.inj_right};
  return {std::move(object), std::move(left), std::move(right)};
}

BundlePullback pullback_bun(const BunMorphism& m, const BunMorphism& n) {
  if (m.target != n.target)
    throw mismatch_error("pullback_bun: cospan legs disagree on the target");
  std::vector<FinFunction> total_legs{m.total_map, n.total_map};
  std::vector<FinFunction> base_legs{m.base_map, n.base_map};
  auto totals = wide_pullback(total_legs);
  auto bases = wide_pullback(base_legs);

  std::vector<int> key(
      static_cast<std::size_t>(m.source.base().size) * n.source.base().size,
      -1);
  for (int e = 0; e < bases.apex.size; ++e)
    key[static_cast<std::size_t>(bases.projections[0].map[e]) *
            n.source.base().size +
        bases.projections[1].map[e]] = e;

  FinFunction proj{totals.apex, bases.apex,
                   std::vector<int>(totals.apex.size)};
  for (int e = 0; e < totals.apex.size; ++e) {
    int jl = m.source.proj.map[totals.projections[0].map[e]];
    int jr = n.source.proj.map[totals.projections[1].map[e]];
    proj.map[e] =
        key[static_cast<std::size_t>(jl) * n.source.base().size + jr];
  }
  Bundle object{std::move(proj)};
  BunMorphism left{object, m.source, totals.projections[0],
                   bases.projections[0]};
  BunMorphism right{object, n.source, totals.projections[1],
                    bases.projections[1]};
  return {std::move(object), std::move(left), std::move(right)};
}

BundleEqualizer equalizer_bun(const BunMorphism& m, const BunMorphism& n) {
  if (m.source != n.source || m.target != n.target)
    throw mismatch_error("equalizer_bun: maps are not parallel");
  std::vector<int> total_members, base_members;
  std::vector<int> base_index(m.source.base().size, -1);
  for (int j = 0; j < m.source.base().size; ++j)
    if (m.base_map.map[j] == n.base_map.map[j]) {
      base_index[j] = static_cast<int>(base_members.size());
      base_members.push_back(j);
    }
  for (int x = 0; x < m.source.total().size; ++x)
    if (m.total_map.map[x] == n.total_map.map[x]) total_members.push_back(x);

  FinSet total{static_cast<int>(total_members.size())};
  FinSet base{static_cast<int>(base_members.size())};
  FinFunction proj{total, base, std::vector<int>(total.size)};
  for (int e = 0; e < total.size; ++e)
    proj.map[e] = base_index[m.source.proj.map[total_members[e]]];
  Bundle object{std::move(proj)};
  BunMorphism include{object, m.source,
                      FinFunction{total, m.source.total(), total_members},
                      FinFunction{base, m.source.base(), base_members}};
  return {std::move(object), std::move(include)};
}

BundleExponential exponential(const Bundle& e, const Bundle& f,
                              std::size_t budget) {
  BunHomSet homs(f, e);
  std::size_t total = homs.checked_count(budget);
  std::size_t base =
      checked_size(map_count(f.base(), e.base()), budget, "exponential");

  FinFunction proj{FinSet{static_cast<int>(total)},
                   FinSet{static_cast<int>(base)}, std::vector<int>(total)};
  for (std::size_t r = 0; r < total; ++r)
    proj.map[r] = static_cast<int>(map_rank(homs.element(r).base_map));
  Bundle object{std::move(proj)};

  auto prod = product_bun(object, f);
  BunMorphism eval{prod.object, e,
                   FinFunction{prod.object.total(), e.total(),
                               std::vector<int>(prod.object.total().size)},
                   FinFunction{prod.object.base(), e.base(),
                               std::vector<int>(prod.object.base().size)}};
  for (int x = 0; x < prod.object.total().size; ++x) {
    int r = prod.proj_left.total_map.map[x];
    int xf = prod.proj_right.total_map.map[x];
    eval.total_map.map[x] = homs.element(r).total_map.map[xf];
  }
  for (int j = 0; j < prod.object.base().size; ++j) {
    auto g =
        map_from_rank(f.base(), e.base(), prod.proj_left.base_map.map[j]);
    eval.base_map.map[j] = g.map[prod.proj_right.base_map.map[j]];
  }
  return {std::move(object), std::move(eval)};
}

BunMorphism curry(const BunMorphism& m, const Bundle& g, const Bundle& f,
                  std::size_t budget) {
  auto prod = product_bun(g, f);
  if (m.source != prod.object)
    throw mismatch_error("curry: source is not the product of g and f");
  const Bundle& e = m.target;
  auto exp = exponential(e, f, budget);
  BunHomSet homs(f, e);

  BunMorphism out{g, exp.object,
                  FinFunction{g.total(), exp.object.total(),
                              std::vector<int>(g.total().size)},
                  FinFunction{g.base(), exp.object.base(),
                              std::vector<int>(g.base().size)}};
  for (int j = 0; j < g.base().size; ++j) {
    FinFunction slice{f.base(), e.base(), std::vector<int>(f.base().size)};
    for (int jf = 0; jf < f.base().size; ++jf)
      slice.map[jf] = m.base_map.map[pair_index(j, jf, f.base())];
    out.base_map.map[j] = static_cast<int>(map_rank(slice));
  }
  for (int x = 0; x < g.total().size; ++x) {
    int j = g.proj.map[x];
    BunMorphism partial{f, e,
                        FinFunction{f.total(), e.total(),
                                    std::vector<int>(f.total().size)},
                        FinFunction{f.base(), e.base(),
                                    std::vector<int>(f.base().size)}};
    for (int xf = 0; xf < f.total().size; ++xf)
      partial.total_map.map[xf] =
          m.total_map.map[pair_index(x, xf, f.total())];
    for (int jf = 0; jf < f.base().size; ++jf)
      partial.base_map.map[jf] = m.base_map.map[pair_index(j, jf, f.base())];
    out.total_map.map[x] = static_cast<int>(homs.index_of(partial));
  }
  return out;
}

BunMorphism uncurry(const BunMorphism& n, const Bundle& g, const Bundle& f,
                    const Bundle& e, std::size_t budget) {
  auto exp = exponential(e, f, budget);
  if (n.source != g || n.target != exp.object)
    throw mismatch_error("uncurry: map does not land in the exponential");
  BunHomSet homs(f, e);
  auto prod = product_bun(g, f);

  BunMorphism out{prod.object, e,
                  FinFunction{prod.object.total(), e.total(),
                              std::vector<int>(prod.object.total().size)},
                  FinFunction{prod.object.base(), e.base(),
                              std::vector<int>(prod.object.base().size)}};
  for (int x = 0; x < prod.object.total().size; ++x) {
    int xg = prod.proj_left.total_map.map[x];
    int xf = prod.proj_right.total_map.map[x];
    out.total_map.map[x] =
        homs.element(n.total_map.map[xg]).total_map.map[xf];
  }
  for (int j = 0; j < prod.object.base().size; ++j) {
    int jg = prod.proj_left.base_map.map[j];
    int jf = prod.proj_right.base_map.map[j];
    auto slice = map_from_rank(f.base(), e.base(), n.base_map.map[jg]);
    out.base_map.map[j] = slice.map[jf];
  }
  return out;
}

Classifier omega() {
  Bundle om{FinFunction{FinSet{3}, FinSet{2}, {0, 0, 1}}};
  BunMorphism truth{terminal_bundle(), om,
                    FinFunction{FinSet{1}, FinSet{3}, {0}},
                    FinFunction{FinSet{1}, FinSet{2}, {0}}};
  return {std::move(om), std::move(truth)};
}

SubobjectWitness make_subobject(const Bundle& into,
                                const std::vector<int>& total_subset,
                                const std::vector<int>& base_subset) {
  if (!std::is_sorted(total_subset.begin(), total_subset.end()) ||
      std::adjacent_find(total_subset.begin(), total_subset.end()) !=
          total_subset.end())
    throw mismatch_error("make_subobject: total subset must be increasing");
  if (!std::is_sorted(base_subset.begin(), base_subset.end()) ||
      std::adjacent_find(base_subset.begin(), base_subset.end()) !=
          base_subset.end())
    throw mismatch_error("make_subobject: base subset must be increasing");

  std::vector<int> base_index(into.base().size, -1);
  for (std::size_t r = 0; r < base_subset.size(); ++r) {
    if (base_subset[r] < 0 || base_subset[r] >= into.base().size)
      throw mismatch_error("make_subobject: base subset out of range");
    base_index[base_subset[r]] = static_cast<int>(r);
  }

  FinSet total{static_cast<int>(total_subset.size())};
  FinSet base{static_cast<int>(base_subset.size())};
  FinFunction proj{total, base, std::vector<int>(total.size)};
  for (int v = 0; v < total.size; ++v) {
    int x = total_subset[v];
    if (x < 0 || x >= into.total().size)
      throw mismatch_error("make_subobject: total subset out of range");
    int j = base_index[into.proj.map[x]];
    if (j < 0)
      throw mismatch_error(
          "make_subobject: projection leaves the base subset");
    proj.map[v] = j;
  }
  Bundle sub{std::move(proj)};
  return SubobjectWitness{
      BunMorphism{std::move(sub), into,
                  FinFunction{total, into.total(), total_subset},
                  FinFunction{base, into.base(), base_subset}}};
}

bool is_mono(const BunMorphism& m) {
  return is_injective(m.total_map) && is_injective(m.base_map);
}

SubobjectWitness canonicalize_mono(const BunMorphism& m) {
  if (!is_mono(m)) throw not_mono_error("canonicalize_mono: not a mono");
  std::vector<int> total = m.total_map.map;
  std::vector<int> base = m.base_map.map;
  std::sort(total.begin(), total.end());
  std::sort(base.begin(), base.end());
  return make_subobject(m.target, total, base);
}

std::vector<SubobjectWitness> enumerate_subobjects(const Bundle& f,
                                                   std::size_t budget) {
  checked_size(nat_pow(2, f.total().size) * nat_pow(2, f.base().size), budget,
               "enumerate_subobjects");
  std::vector<SubobjectWitness> out;
  for (unsigned long smask = 0; smask < (1ul << f.total().size); ++smask) {
    unsigned long required = 0;
    std::vector<int> total_subset;
    for (int x = 0; x < f.total().size; ++x)
      if (smask & (1ul << x)) {
        total_subset.push_back(x);
        required |= 1ul << f.proj.map[x];
      }
    for (unsigned long tmask = 0; tmask < (1ul << f.base().size); ++tmask) {
      if ((tmask & required) != required) continue;
      std::vector<int> base_subset;
      for (int j = 0; j < f.base().size; ++j)
        if (tmask & (1ul << j)) base_subset.push_back(j);
      out.push_back(make_subobject(f, total_subset, base_subset));
    }
  }
  return out;
}

BunMorphism classify(const SubobjectWitness& s) {
  if (!is_mono(s.inclusion)) throw not_mono_error("classify: not a mono");
  const Bundle& f = s.inclusion.target;
  Classifier cls = omega();

  std::vector<char> in_total(f.total().size, 0), in_base(f.base().size, 0);
  for (int x : s.inclusion.total_map.map) in_total[x] = 1;
  for (int j : s.inclusion.base_map.map) in_base[j] = 1;

  BunMorphism chi{f, cls.omega,
                  FinFunction{f.total(), FinSet{3},
                              std::vector<int>(f.total().size)},
                  FinFunction{f.base(), FinSet{2},
                              std::vector<int>(f.base().size)}};
  for (int j = 0; j < f.base().size; ++j)
    chi.base_map.map[j] = in_base[j] ? 0 : 1;
  for (int x = 0; x < f.total().size; ++x) {
    if (in_total[x])
      chi.total_map.map[x] = 0;  // now
    else if (in_base[f.proj.map[x]])
      chi.total_map.map[x] = 1;  // later
    else
      chi.total_map.map[x] = 2;  // never
  }
  return chi;
}

SubobjectWitness subobject_of(const BunMorphism& chi) {
  Classifier cls = omega();
  if (chi.target != cls.omega)
    throw mismatch_error("subobject_of: map does not land in the classifier");
  std::vector<int> total_subset, base_subset;
  for (int x = 0; x < chi.source.total().size; ++x)
    if (chi.total_map.map[x] == cls.truth.total_map.map[0])
      total_subset.push_back(x);
  for (int j = 0; j < chi.source.base().size; ++j)
    if (chi.base_map.map[j] == cls.truth.base_map.map[0])
      base_subset.push_back(j);
  return make_subobject(chi.source, total_subset, base_subset);
}

bool classifies_subobjects(const Bundle& omega_candidate,
                           const BunMorphism& truth_candidate, int max_level,
                           std::size_t budget) {
  if (truth_candidate.source != terminal_bundle() ||
      truth_candidate.target != omega_candidate ||
      !is_valid(truth_candidate))
    return false;
  const int t0 = truth_candidate.total_map.map[0];
  const int b0 = truth_candidate.base_map.map[0];

  for (int base = 0; base <= max_level; ++base)
    for (int total = 0; total <= max_level; ++total)
      for (auto& proj : enumerate_maps(FinSet{total}, FinSet{base})) {
        Bundle f{proj};
        auto subs = enumerate_subobjects(f, budget);
        auto maps = enumerate_bun(f, omega_candidate, budget);
        if (subs.size() != maps.size()) return false;

        std::vector<std::pair<std::vector<int>, std::vector<int>>> classified;
        classified.reserve(maps.size());
        for (auto& chi : maps) {
          std::vector<int> total_subset, base_subset;
          std::vector<char> in_base(f.base().size, 0);
          for (int j = 0; j < f.base().size; ++j)
            if (chi.base_map.map[j] == b0) {
              in_base[j] = 1;
              base_subset.push_back(j);
            }
          for (int x = 0; x < f.total().size; ++x)
            if (chi.total_map.map[x] == t0) {
              // The pullback must be a genuine subobject.
              if (!in_base[f.proj.map[x]]) return false;
              total_subset.push_back(x);
            }
          classified.emplace_back(std::move(total_subset),
                                  std::move(base_subset));
        }
        std::sort(classified.begin(), classified.end());
        if (std::adjacent_find(classified.begin(), classified.end()) !=
            classified.end())
          return false;
      }
  return true;
}

}  // namespace dirpoly
