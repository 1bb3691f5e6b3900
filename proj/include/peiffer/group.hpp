#pragma once

// Finite groups as dense Cayley tables. Element 0 is always the identity.
// Every construction (closures, quotients, products, semidirect products)
// reduces to index arithmetic on these tables.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "constructions.hpp"
#include "error.hpp"

namespace peiffer {

using GroupElement = std::uint32_t;

class FiniteGroup {
public:
  /// The trivial group.
  FiniteGroup() : FiniteGroup(1, {0}, "1") {}

  std::size_t order() const { return d_->order; }
  const std::string& name() const { return d_->name; }

  GroupElement mul(GroupElement a, GroupElement b) const
  { return d_->table[static_cast<std::size_t>(a) * d_->order + b]; }

  GroupElement inv(GroupElement a) const { return d_->inverse[a]; }

  static constexpr GroupElement identity() { return 0; }

  /// a b a^-1 b^-1
  GroupElement commutator(GroupElement a, GroupElement b) const
  { return mul(mul(a, b), mul(inv(a), inv(b))); }

  /// a b a^-1
  GroupElement conjugate(GroupElement a, GroupElement b) const
  { return mul(mul(a, b), inv(a)); }

  bool same_as(const FiniteGroup& other) const { return d_ == other.d_; }
  /// Identity of the underlying table, for caches keyed by object.
  const void* id() const { return d_.get(); }

  const std::vector<GroupElement>& table() const { return d_->table; }

  /// Validating constructor from an explicit Cayley table.
  static FiniteGroup from_table(const std::vector<std::vector<long long>>& rows,
                                std::string name = {})
  {
    std::size_t n = rows.size();
    if (n == 0)
      throw Error(ErrorKind::BadSpec, "empty Cayley table");
    if (n > limits::group_order_cap())
      throw Error(ErrorKind::CapExceeded,
                  "table of order " + std::to_string(n) + " exceeds cap " +
                      std::to_string(limits::group_order_cap()));
    std::vector<GroupElement> table(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != n)
        throw Error(ErrorKind::BadSpec, "Cayley table row " + std::to_string(i) +
                                            " has wrong length");
      for (std::size_t j = 0; j < n; ++j) {
        long long v = rows[i][j];
        if (v < 0 || static_cast<std::size_t>(v) >= n)
          throw Error(ErrorKind::BadSpec, "table entry out of range at (" +
                                              std::to_string(i) + "," +
                                              std::to_string(j) + ")");
        table[i * n + j] = static_cast<GroupElement>(v);
      }
    }
    return from_flat(n, std::move(table), std::move(name), true);
  }

  /// The group generated by permutations of {0..deg-1}, indexed breadth-first
  /// by word order: identity first, then products w*g in generator order.
  static FiniteGroup from_permutations(
      const std::vector<std::vector<long long>>& generators, std::string name = {})
  {
    using Perm = std::vector<std::uint32_t>;
    std::size_t degree = generators.empty() ? 0 : generators.front().size();
    std::vector<Perm> gens;
    for (const auto& g : generators) {
      if (g.size() != degree)
        throw Error(ErrorKind::BadSpec, "permutations of different degree");
      Perm p(degree);
      std::vector<bool> seen(degree, false);
      for (std::size_t i = 0; i < degree; ++i) {
        if (g[i] < 0 || static_cast<std::size_t>(g[i]) >= degree ||
            seen[static_cast<std::size_t>(g[i])])
          throw Error(ErrorKind::BadSpec, "not a permutation");
        seen[static_cast<std::size_t>(g[i])] = true;
        p[i] = static_cast<std::uint32_t>(g[i]);
      }
      gens.push_back(std::move(p));
    }
    struct PermHash {
      std::size_t operator()(const Perm& p) const noexcept
      {
        std::size_t h = 1469598103934665603ull;
        for (auto x : p)
          h = (h ^ x) * 1099511628211ull;
        return h;
      }
    };
    // (a*b)(i) = a(b(i))
    auto compose = [degree](const Perm& a, const Perm& b) {
      Perm r(degree);
      for (std::size_t i = 0; i < degree; ++i)
        r[i] = a[b[i]];
      return r;
    };
    Perm id(degree);
    std::iota(id.begin(), id.end(), 0u);
    std::vector<Perm> elements{id};
    std::unordered_map<Perm, GroupElement, PermHash> index{{id, 0}};
    for (std::size_t i = 0; i < elements.size(); ++i) {
      for (const Perm& g : gens) {
        Perm next = compose(elements[i], g);
        if (index.count(next))
          continue;
        if (elements.size() + 1 > limits::group_order_cap())
          throw Error(ErrorKind::CapExceeded,
                      "permutation closure exceeds order cap " +
                          std::to_string(limits::group_order_cap()));
        index.emplace(next, static_cast<GroupElement>(elements.size()));
        elements.push_back(std::move(next));
      }
    }
    std::size_t n = elements.size();
    std::vector<GroupElement> table(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        table[a * n + b] = index.at(compose(elements[a], elements[b]));
    return from_flat(n, std::move(table), std::move(name), false);
  }

  /// Internal constructor for tables produced by the library's own
  /// constructions. `validate` runs the full axiom check.
  static FiniteGroup from_flat(std::size_t n, std::vector<GroupElement> table,
                               std::string name, bool validate)
  {
    if (n > limits::group_order_cap())
      throw Error(ErrorKind::CapExceeded, "order " + std::to_string(n) +
                                              " exceeds cap " +
                                              std::to_string(limits::group_order_cap()));
    return FiniteGroup(n, std::move(table), std::move(name), validate);
  }

private:
  struct Data {
    std::size_t order;
    std::vector<GroupElement> table;
    std::vector<GroupElement> inverse;
    std::string name;
  };

  FiniteGroup(std::size_t n, std::vector<GroupElement> table, std::string name,
              bool validate = false)
  {
    auto d = std::make_shared<Data>();
    d->order = n;
    d->table = std::move(table);
    d->name = std::move(name);
    if (validate)
      check_axioms(*d);
    d->inverse.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (d->table[a * n + b] == 0) {
          d->inverse[a] = static_cast<GroupElement>(b);
          break;
        }
    d_ = std::move(d);
  }

  static void check_axioms(const Data& d)
  {
    std::size_t n = d.order;
    auto at = [&](std::size_t a, std::size_t b) { return d.table[a * n + b]; };
    std::optional<std::size_t> neutral;
    for (std::size_t e = 0; e < n && !neutral; ++e) {
      bool ok = true;
      for (std::size_t a = 0; a < n && ok; ++a)
        ok = at(e, a) == a && at(a, e) == a;
      if (ok)
        neutral = e;
    }
    if (!neutral)
      throw Error(ErrorKind::AxiomViolation, "no two-sided identity");
    if (*neutral != 0)
      throw Error(ErrorKind::BadSpec, "identity must be element 0, found " +
                                          std::to_string(*neutral));
    for (std::size_t a = 0; a < n; ++a) {
      bool has_inverse = false;
      for (std::size_t b = 0; b < n && !has_inverse; ++b)
        has_inverse = at(a, b) == 0 && at(b, a) == 0;
      if (!has_inverse)
        throw Error(ErrorKind::AxiomViolation,
                    "element " + std::to_string(a) + " has no inverse",
                    std::to_string(a));
    }
    auto check = [&](std::size_t a, std::size_t b, std::size_t c) {
      if (at(at(a, b), c) != at(a, at(b, c)))
        throw Error(ErrorKind::AxiomViolation, "associativity fails",
                    "(" + std::to_string(a) + "," + std::to_string(b) + "," +
                        std::to_string(c) + ")");
    };
    if (n <= 64) {
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          for (std::size_t c = 0; c < n; ++c)
            check(a, b, c);
    } else {
      std::mt19937_64 rng(0x5eedu);
      for (int i = 0; i < 200000; ++i)
        check(rng() % n, rng() % n, rng() % n);
    }
  }

  std::shared_ptr<const Data> d_;
};

inline std::size_t cardinality(const FiniteGroup& g) { return g.order(); }

inline bool same_object(const FiniteGroup& a, const FiniteGroup& b) { return a.same_as(b); }

inline std::size_t element_order(const FiniteGroup& g, GroupElement x)
{
  std::size_t k = 1;
  for (GroupElement y = x; y != 0; y = g.mul(y, x))
    ++k;
  return k;
}

inline GroupElement power(const FiniteGroup& g, GroupElement x, std::size_t e)
{
  GroupElement r = 0;
  for (std::size_t i = 0; i < e; ++i)
    r = g.mul(r, x);
  return r;
}

inline FiniteGroup cyclic_group(std::size_t n)
{
  std::vector<GroupElement> t(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      t[a * n + b] = static_cast<GroupElement>((a + b) % n);
  return FiniteGroup::from_flat(n, std::move(t), "Z/" + std::to_string(n), false);
}

// ---------------------------------------------------------------------------
// Subgroups

/// Sorted element list; always contains the identity.
struct Subgroup {
  FiniteGroup ambient;
  std::vector<GroupElement> elements;

  std::size_t size() const { return elements.size(); }
  bool contains(GroupElement x) const
  { return std::binary_search(elements.begin(), elements.end(), x); }
};

inline bool operator==(const Subgroup& a, const Subgroup& b)
{
  return a.ambient.same_as(b.ambient) && a.elements == b.elements;
}

inline std::size_t cardinality(const Subgroup& s) { return s.size(); }

namespace detail {

inline void require_same(const FiniteGroup& a, const FiniteGroup& b)
{
  if (!a.same_as(b))
    throw Error(ErrorKind::AmbientMismatch, "subobjects of different groups");
}

inline Subgroup from_mask(const FiniteGroup& g, const std::vector<char>& mask)
{
  Subgroup s{g, {}};
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i])
      s.elements.push_back(static_cast<GroupElement>(i));
  return s;
}

inline std::vector<char> mask_of(const Subgroup& s)
{
  std::vector<char> m(s.ambient.order(), 0);
  for (GroupElement x : s.elements)
    m[x] = 1;
  return m;
}

/// Grows `elements`/`mask` to the subgroup generated by it and `extra`.
inline void close_under(const FiniteGroup& g, std::vector<GroupElement>& elements,
                        std::vector<char>& mask, std::vector<GroupElement>& gens,
                        GroupElement extra)
{
  if (mask[extra])
    return;
  gens.push_back(extra);
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (GroupElement s : gens) {
      GroupElement y = g.mul(elements[i], s);
      if (!mask[y]) {
        mask[y] = 1;
        elements.push_back(y);
      }
    }
}

} // namespace detail

inline Subgroup whole(const FiniteGroup& g)
{
  Subgroup s{g, std::vector<GroupElement>(g.order())};
  std::iota(s.elements.begin(), s.elements.end(), 0u);
  return s;
}

inline Subgroup trivial_subobject(const FiniteGroup& g) { return Subgroup{g, {0}}; }

inline bool is_trivial(const Subgroup& s) { return s.elements.size() == 1; }
inline bool is_whole(const Subgroup& s) { return s.elements.size() == s.ambient.order(); }

/// small <= big
inline bool includes(const Subgroup& big, const Subgroup& small)
{
  detail::require_same(big.ambient, small.ambient);
  return std::includes(big.elements.begin(), big.elements.end(), small.elements.begin(),
                       small.elements.end());
}

/// Smallest subgroup (normal=false) or normal subgroup (normal=true)
/// containing `gens`.
inline Subgroup generated_subobject(const FiniteGroup& g, std::span<const GroupElement> gens,
                                    bool normal)
{
  std::vector<char> mask(g.order(), 0);
  mask[0] = 1;
  std::vector<GroupElement> elements{0};
  std::vector<GroupElement> used;
  for (GroupElement s : gens) {
    if (s >= g.order())
      throw Error(ErrorKind::BadSpec, "element index " + std::to_string(s) + " out of range");
    detail::close_under(g, elements, mask, used, s);
  }
  if (normal) {
    // Saturate: a subgroup is normal iff its generators' conjugates lie in it.
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<GroupElement> current = used;
      for (GroupElement s : current)
        for (GroupElement h = 0; h < g.order(); ++h) {
          GroupElement c = g.conjugate(h, s);
          if (!mask[c]) {
            detail::close_under(g, elements, mask, used, c);
            grew = true;
          }
        }
    }
  }
  return detail::from_mask(g, mask);
}

inline bool is_normal(const Subgroup& s)
{
  const FiniteGroup& g = s.ambient;
  for (GroupElement h = 0; h < g.order(); ++h)
    for (GroupElement x : s.elements)
      if (!s.contains(g.conjugate(h, x)))
        return false;
  return true;
}

inline Subgroup normal_closure(const Subgroup& s)
{
  return generated_subobject(s.ambient, s.elements, true);
}

inline Subgroup meet(const Subgroup& m, const Subgroup& n)
{
  detail::require_same(m.ambient, n.ambient);
  Subgroup r{m.ambient, {}};
  std::set_intersection(m.elements.begin(), m.elements.end(), n.elements.begin(),
                        n.elements.end(), std::back_inserter(r.elements));
  return r;
}

inline Subgroup join(const Subgroup& m, const Subgroup& n)
{
  detail::require_same(m.ambient, n.ambient);
  std::vector<GroupElement> gens = m.elements;
  gens.insert(gens.end(), n.elements.begin(), n.elements.end());
  return generated_subobject(m.ambient, gens, false);
}

/// Subgroup generated by all commutators m n m^-1 n^-1.
inline Subgroup huq_commutator(const Subgroup& m, const Subgroup& n)
{
  detail::require_same(m.ambient, n.ambient);
  const FiniteGroup& g = m.ambient;
  std::vector<char> seen(g.order(), 0);
  std::vector<GroupElement> gens;
  for (GroupElement a : m.elements)
    for (GroupElement b : n.elements) {
      GroupElement c = g.commutator(a, b);
      if (!seen[c]) {
        seen[c] = 1;
        gens.push_back(c);
      }
    }
  return generated_subobject(g, gens, false);
}

/// A generating set from which every element-level formula can be evaluated.
/// For groups this is the full element list since the formulas are not
/// multiplicative.
inline const std::vector<GroupElement>& formula_elements(const Subgroup& s) { return s.elements; }

/// Greedy generating set: smallest element outside the span so far.
inline std::vector<GroupElement> small_generating_set(const Subgroup& s)
{
  const FiniteGroup& g = s.ambient;
  std::vector<char> mask(g.order(), 0);
  mask[0] = 1;
  std::vector<GroupElement> elements{0}, used;
  for (GroupElement x : s.elements)
    detail::close_under(g, elements, mask, used, x);
  return used;
}

// ---------------------------------------------------------------------------
// Homomorphisms

struct GroupHom {
  FiniteGroup domain;
  FiniteGroup codomain;
  std::vector<GroupElement> map;

  GroupElement operator()(GroupElement x) const { return map[x]; }
};

inline bool operator==(const GroupHom& a, const GroupHom& b)
{
  return a.domain.same_as(b.domain) && a.codomain.same_as(b.codomain) && a.map == b.map;
}

inline GroupElement apply(const GroupHom& f, GroupElement x) { return f.map[x]; }

/// Validating constructor.
inline GroupHom make_hom(const FiniteGroup& dom, const FiniteGroup& cod,
                         std::vector<GroupElement> map)
{
  if (map.size() != dom.order())
    throw Error(ErrorKind::BadSpec, "map has " + std::to_string(map.size()) +
                                        " entries, domain has order " +
                                        std::to_string(dom.order()));
  for (GroupElement y : map)
    if (y >= cod.order())
      throw Error(ErrorKind::BadSpec, "map value out of range");
  for (GroupElement a = 0; a < dom.order(); ++a)
    for (GroupElement b = 0; b < dom.order(); ++b)
      if (map[dom.mul(a, b)] != cod.mul(map[a], map[b]))
        throw Error(ErrorKind::AxiomViolation, "map is not a homomorphism",
                    "(" + std::to_string(a) + "," + std::to_string(b) + ")");
  return GroupHom{dom, cod, std::move(map)};
}

inline GroupHom identity_hom(const FiniteGroup& g)
{
  GroupHom h{g, g, std::vector<GroupElement>(g.order())};
  std::iota(h.map.begin(), h.map.end(), 0u);
  return h;
}

inline GroupHom zero_hom(const FiniteGroup& dom, const FiniteGroup& cod)
{
  return GroupHom{dom, cod, std::vector<GroupElement>(dom.order(), 0)};
}

/// g after f
inline GroupHom compose(const GroupHom& g, const GroupHom& f)
{
  detail::require_same(f.codomain, g.domain);
  GroupHom h{f.domain, g.codomain, std::vector<GroupElement>(f.domain.order())};
  for (std::size_t x = 0; x < f.map.size(); ++x)
    h.map[x] = g.map[f.map[x]];
  return h;
}

inline Subgroup image(const GroupHom& f, const Subgroup& s)
{
  detail::require_same(f.domain, s.ambient);
  std::vector<char> mask(f.codomain.order(), 0);
  for (GroupElement x : s.elements)
    mask[f.map[x]] = 1;
  return detail::from_mask(f.codomain, mask);
}

inline Subgroup image(const GroupHom& f) { return image(f, whole(f.domain)); }

inline Subgroup preimage(const GroupHom& f, const Subgroup& s)
{
  detail::require_same(f.codomain, s.ambient);
  std::vector<char> target = detail::mask_of(s);
  Subgroup r{f.domain, {}};
  for (GroupElement x = 0; x < f.domain.order(); ++x)
    if (target[f.map[x]])
      r.elements.push_back(x);
  return r;
}

inline Subgroup kernel(const GroupHom& f) { return preimage(f, trivial_subobject(f.codomain)); }

inline bool is_surjective(const GroupHom& f) { return is_whole(image(f)); }
inline bool is_injective(const GroupHom& f) { return is_trivial(kernel(f)); }
inline bool is_zero(const GroupHom& f)
{
  return std::all_of(f.map.begin(), f.map.end(), [](GroupElement y) { return y == 0; });
}

using GroupQuotient = Quotient<FiniteGroup, GroupHom>;
using GroupEmbedding = Embedding<FiniteGroup, GroupHom>;
using GroupProduct = Product<FiniteGroup, GroupHom>;
using GroupFiberedProduct = FiberedProduct<FiniteGroup, GroupHom>;
using GroupSemidirect = Semidirect<FiniteGroup, GroupHom>;

/// Cosets are indexed by their smallest element, in increasing order.
inline GroupQuotient quotient_by(const Subgroup& n)
{
  if (!is_normal(n))
    throw Error(ErrorKind::NotNormal, "quotient by a non-normal subgroup");
  const FiniteGroup& g = n.ambient;
  constexpr GroupElement unset = ~GroupElement{0};
  std::vector<GroupElement> coset(g.order(), unset);
  std::vector<GroupElement> reps;
  for (GroupElement x = 0; x < g.order(); ++x) {
    if (coset[x] != unset)
      continue;
    auto id = static_cast<GroupElement>(reps.size());
    reps.push_back(x);
    for (GroupElement k : n.elements)
      coset[g.mul(x, k)] = id;
  }
  std::size_t m = reps.size();
  std::vector<GroupElement> table(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      table[a * m + b] = coset[g.mul(reps[a], reps[b])];
  std::string name = g.name().empty() ? std::string{} : g.name() + "/N";
  FiniteGroup q = FiniteGroup::from_flat(m, std::move(table), std::move(name), false);
  return {q, GroupHom{g, q, std::move(coset)}};
}

/// Elements of `s` are reindexed in increasing order, so the identity stays 0.
inline GroupEmbedding as_object(const Subgroup& s)
{
  const FiniteGroup& g = s.ambient;
  std::size_t m = s.elements.size();
  std::vector<GroupElement> local(g.order(), 0);
  for (std::size_t i = 0; i < m; ++i)
    local[s.elements[i]] = static_cast<GroupElement>(i);
  std::vector<GroupElement> table(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      table[a * m + b] = local[g.mul(s.elements[a], s.elements[b])];
  FiniteGroup obj = FiniteGroup::from_flat(m, std::move(table), {}, false);
  return {obj, GroupHom{obj, g, s.elements}};
}

/// f viewed as a map into the embedded subobject; throws if f leaves it.
inline GroupHom corestrict(const GroupHom& f, const GroupEmbedding& e)
{
  detail::require_same(f.codomain, e.inclusion.codomain);
  std::vector<GroupElement> local(f.codomain.order(), ~GroupElement{0});
  for (std::size_t i = 0; i < e.inclusion.map.size(); ++i)
    local[e.inclusion.map[i]] = static_cast<GroupElement>(i);
  GroupHom r{f.domain, e.object, std::vector<GroupElement>(f.domain.order())};
  for (std::size_t x = 0; x < f.map.size(); ++x) {
    GroupElement y = local[f.map[x]];
    if (y == ~GroupElement{0})
      throw Error(ErrorKind::BadSpec, "map does not land in the subobject",
                  std::to_string(x));
    r.map[x] = y;
  }
  return r;
}

/// The unique h with h * epi = target, when ker(epi) <= ker(target).
/// `epi` must be surjective.
inline std::optional<GroupHom> factor_through(const GroupHom& target, const GroupHom& epi)
{
  detail::require_same(target.domain, epi.domain);
  constexpr GroupElement unset = ~GroupElement{0};
  GroupHom h{epi.codomain, target.codomain,
             std::vector<GroupElement>(epi.codomain.order(), unset)};
  for (std::size_t x = 0; x < epi.map.size(); ++x) {
    GroupElement& slot = h.map[epi.map[x]];
    if (slot == unset)
      slot = target.map[x];
    else if (slot != target.map[x])
      return std::nullopt;
  }
  for (GroupElement y : h.map)
    if (y == unset)
      throw Error(ErrorKind::NotSurjective, "factor_through needs a surjection");
  return h;
}

/// Pairs (a, c) indexed a + |A| c.
inline GroupProduct direct_product(const FiniteGroup& a, const FiniteGroup& c)
{
  std::size_t na = a.order(), nc = c.order();
  std::size_t n = na * nc;
  if (n > limits::group_order_cap())
    throw Error(ErrorKind::CapExceeded, "direct product of order " + std::to_string(n));
  std::vector<GroupElement> table(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      auto pa = a.mul(static_cast<GroupElement>(x % na), static_cast<GroupElement>(y % na));
      auto pc = c.mul(static_cast<GroupElement>(x / na), static_cast<GroupElement>(y / na));
      table[x * n + y] = static_cast<GroupElement>(pa + na * pc);
    }
  std::string name;
  if (!a.name().empty() && !c.name().empty())
    name = a.name() + " x " + c.name();
  FiniteGroup p = FiniteGroup::from_flat(n, std::move(table), std::move(name), false);
  GroupHom p1{p, a, std::vector<GroupElement>(n)}, p2{p, c, std::vector<GroupElement>(n)};
  for (std::size_t x = 0; x < n; ++x) {
    p1.map[x] = static_cast<GroupElement>(x % na);
    p2.map[x] = static_cast<GroupElement>(x / na);
  }
  return {p, p1, p2};
}

/// x -> (f x, g x)
inline GroupHom pair_into(const GroupProduct& p, const GroupHom& f, const GroupHom& g)
{
  detail::require_same(f.domain, g.domain);
  std::size_t na = p.first.codomain.order();
  GroupHom h{f.domain, p.object, std::vector<GroupElement>(f.domain.order())};
  for (std::size_t x = 0; x < h.map.size(); ++x)
    h.map[x] = static_cast<GroupElement>(f.map[x] + na * g.map[x]);
  return h;
}

/// {x : f x = g x}
inline Subgroup equalizer(const GroupHom& f, const GroupHom& g)
{
  detail::require_same(f.domain, g.domain);
  Subgroup s{f.domain, {}};
  for (GroupElement x = 0; x < f.domain.order(); ++x)
    if (f(x) == g(x))
      s.elements.push_back(x);
  return s;
}

inline GroupFiberedProduct fibered_product(const GroupHom& h, const GroupHom& j)
{
  detail::require_same(h.codomain, j.codomain);
  GroupProduct prod = direct_product(h.domain, j.domain);
  std::size_t na = h.domain.order();
  Subgroup s{prod.object, {}};
  for (GroupElement x = 0; x < prod.object.order(); ++x)
    if (h.map[x % na] == j.map[x / na])
      s.elements.push_back(x);
  GroupEmbedding e = as_object(s);
  return {e.object, compose(prod.first, e.inclusion), compose(prod.second, e.inclusion)};
}

// ---------------------------------------------------------------------------
// Actions

/// Action of `actor` on `acted` by automorphisms: table[b |X| + x] = b.x
struct GroupAction {
  FiniteGroup actor;
  FiniteGroup acted;
  std::vector<GroupElement> table;

  GroupElement operator()(GroupElement b, GroupElement x) const
  { return table[static_cast<std::size_t>(b) * acted.order() + x]; }
};

inline GroupElement act(const GroupAction& a, GroupElement b, GroupElement x) { return a(b, x); }

inline std::optional<std::string> action_violation(const GroupAction& a)
{
  std::size_t nb = a.actor.order(), nx = a.acted.order();
  if (a.table.size() != nb * nx)
    return "action table has wrong size";
  for (GroupElement v : a.table)
    if (v >= nx)
      return "action value out of range";
  for (GroupElement b = 0; b < nb; ++b) {
    std::vector<char> hit(nx, 0);
    for (GroupElement x = 0; x < nx; ++x)
      hit[a(b, x)] = 1;
    if (std::find(hit.begin(), hit.end(), 0) != hit.end())
      return "slice " + std::to_string(b) + " is not bijective";
    for (GroupElement x = 0; x < nx; ++x)
      for (GroupElement y = 0; y < nx; ++y)
        if (a(b, a.acted.mul(x, y)) != a.acted.mul(a(b, x), a(b, y)))
          return "slice " + std::to_string(b) + " is not a homomorphism";
  }
  for (GroupElement b = 0; b < nb; ++b)
    for (GroupElement c = 0; c < nb; ++c)
      for (GroupElement x = 0; x < nx; ++x)
        if (a(a.actor.mul(b, c), x) != a(b, a(c, x)))
          return "B -> Aut(X) is not a homomorphism at (" + std::to_string(b) + "," +
                 std::to_string(c) + ")";
  return std::nullopt;
}

inline GroupAction make_action(const FiniteGroup& actor, const FiniteGroup& acted,
                               std::vector<GroupElement> table)
{
  GroupAction a{actor, acted, std::move(table)};
  if (auto why = action_violation(a))
    throw Error(ErrorKind::ActionInvalid, *why);
  return a;
}

inline GroupAction trivial_action(const FiniteGroup& actor, const FiniteGroup& acted)
{
  GroupAction a{actor, acted, std::vector<GroupElement>(actor.order() * acted.order())};
  for (std::size_t b = 0; b < actor.order(); ++b)
    for (std::size_t x = 0; x < acted.order(); ++x)
      a.table[b * acted.order() + x] = static_cast<GroupElement>(x);
  return a;
}

inline GroupAction conjugation_action(const FiniteGroup& g)
{
  std::size_t n = g.order();
  GroupAction a{g, g, std::vector<GroupElement>(n * n)};
  for (GroupElement b = 0; b < n; ++b)
    for (GroupElement x = 0; x < n; ++x)
      a.table[b * n + x] = g.conjugate(b, x);
  return a;
}

/// f*(xi): the action of f's domain through f.
inline GroupAction pullback_action(const GroupAction& xi, const GroupHom& f)
{
  detail::require_same(f.codomain, xi.actor);
  std::size_t nx = xi.acted.order();
  GroupAction a{f.domain, xi.acted, std::vector<GroupElement>(f.domain.order() * nx)};
  for (std::size_t b = 0; b < f.domain.order(); ++b)
    for (std::size_t x = 0; x < nx; ++x)
      a.table[b * nx + x] = xi(f.map[b], static_cast<GroupElement>(x));
  return a;
}

inline bool is_stable(const GroupAction& xi, const Subgroup& s)
{
  detail::require_same(xi.acted, s.ambient);
  for (GroupElement b = 0; b < xi.actor.order(); ++b)
    for (GroupElement x : s.elements)
      if (!s.contains(xi(b, x)))
        return false;
  return true;
}

/// Smallest xi-stable subgroup (normal one if requested) containing `s`.
inline Subgroup stable_closure(const GroupAction& xi, const Subgroup& s, bool normal)
{
  Subgroup cur = s;
  for (;;) {
    std::vector<GroupElement> gens = cur.elements;
    for (GroupElement b = 0; b < xi.actor.order(); ++b)
      for (GroupElement x : cur.elements)
        gens.push_back(xi(b, x));
    Subgroup next = generated_subobject(cur.ambient, gens, normal);
    if (next == cur)
      return cur;
    cur = std::move(next);
  }
}

/// Action restricted to a stable subobject, in the embedded indexing.
inline GroupAction restrict_action(const GroupAction& xi, const GroupEmbedding& e)
{
  detail::require_same(xi.acted, e.inclusion.codomain);
  std::vector<GroupElement> local(xi.acted.order(), ~GroupElement{0});
  for (std::size_t i = 0; i < e.inclusion.map.size(); ++i)
    local[e.inclusion.map[i]] = static_cast<GroupElement>(i);
  std::size_t m = e.object.order();
  GroupAction a{xi.actor, e.object, std::vector<GroupElement>(xi.actor.order() * m)};
  for (GroupElement b = 0; b < xi.actor.order(); ++b)
    for (std::size_t i = 0; i < m; ++i) {
      GroupElement y = local[xi(b, e.inclusion.map[i])];
      if (y == ~GroupElement{0})
        throw Error(ErrorKind::StabilityViolation, "subobject is not stable under the action");
      a.table[b * m + i] = y;
    }
  return a;
}

/// Action induced on a quotient by a stable normal subobject.
inline GroupAction induced_action(const GroupAction& xi, const GroupQuotient& q)
{
  detail::require_same(xi.acted, q.projection.domain);
  std::size_t m = q.object.order();
  std::vector<GroupElement> rep(m, 0);
  for (GroupElement x = static_cast<GroupElement>(xi.acted.order()); x-- > 0;)
    rep[q.projection.map[x]] = x;
  GroupAction a{xi.actor, q.object, std::vector<GroupElement>(xi.actor.order() * m)};
  for (GroupElement b = 0; b < xi.actor.order(); ++b)
    for (std::size_t c = 0; c < m; ++c)
      a.table[b * m + c] = q.projection.map[xi(b, rep[c])];
  return a;
}

/// Componentwise action of B on a product of two B-groups.
inline GroupAction product_action(const GroupAction& a1, const GroupAction& a2,
                                  const GroupProduct& p)
{
  detail::require_same(a1.actor, a2.actor);
  std::size_t na = a1.acted.order(), n = p.object.order();
  GroupAction a{a1.actor, p.object, std::vector<GroupElement>(a1.actor.order() * n)};
  for (GroupElement b = 0; b < a1.actor.order(); ++b)
    for (std::size_t x = 0; x < n; ++x)
      a.table[b * n + x] = static_cast<GroupElement>(
          a1(b, static_cast<GroupElement>(x % na)) +
          na * a2(b, static_cast<GroupElement>(x / na)));
  return a;
}

/// Pairs (x, b) indexed x + |X| b with (x,b)(x',b') = (x . b.x', b b').
inline GroupSemidirect semidirect_product(const GroupAction& xi)
{
  if (auto why = action_violation(xi))
    throw Error(ErrorKind::ActionInvalid, *why);
  const FiniteGroup& x = xi.acted;
  const FiniteGroup& b = xi.actor;
  std::size_t nx = x.order(), nb = b.order(), n = nx * nb;
  if (n > limits::group_order_cap())
    throw Error(ErrorKind::CapExceeded, "semidirect product of order " + std::to_string(n));
  std::vector<GroupElement> table(n * n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      auto x1 = static_cast<GroupElement>(p % nx), b1 = static_cast<GroupElement>(p / nx);
      auto x2 = static_cast<GroupElement>(q % nx), b2 = static_cast<GroupElement>(q / nx);
      table[p * n + q] =
          static_cast<GroupElement>(x.mul(x1, xi(b1, x2)) + nx * b.mul(b1, b2));
    }
  FiniteGroup s = FiniteGroup::from_flat(n, std::move(table), {}, false);
  GroupSemidirect r{s, GroupHom{s, b, std::vector<GroupElement>(n)},
                    GroupHom{b, s, std::vector<GroupElement>(nb)},
                    GroupHom{x, s, std::vector<GroupElement>(nx)}};
  for (std::size_t p = 0; p < n; ++p)
    r.projection.map[p] = static_cast<GroupElement>(p / nx);
  for (std::size_t q = 0; q < nb; ++q)
    r.section.map[q] = static_cast<GroupElement>(q * nx);
  for (std::size_t q = 0; q < nx; ++q)
    r.inclusion.map[q] = static_cast<GroupElement>(q);
  return r;
}

/// (x, b) -> (f x, b) between semidirect products over the same B.
inline GroupHom semidirect_map(const GroupSemidirect& src, const GroupSemidirect& dst,
                               const GroupHom& f)
{
  std::size_t nx = src.inclusion.domain.order(), ny = dst.inclusion.domain.order();
  GroupHom h{src.object, dst.object, std::vector<GroupElement>(src.object.order())};
  for (std::size_t p = 0; p < h.map.size(); ++p)
    h.map[p] = static_cast<GroupElement>(f.map[p % nx] + ny * (p / nx));
  return h;
}

// ---------------------------------------------------------------------------
// Element formulas used by precrossed modules

inline GroupElement neutral(const FiniteGroup&) { return 0; }

/// First (b, x) with d(b.x) != b d(x) b^-1.
inline std::optional<std::string> equivariance_violation(const GroupHom& d, const GroupAction& xi)
{
  const FiniteGroup& b = xi.actor;
  for (GroupElement g = 0; g < b.order(); ++g)
    for (GroupElement x = 0; x < xi.acted.order(); ++x)
      if (d(xi(g, x)) != b.conjugate(g, d(x)))
        return "(" + std::to_string(g) + "," + std::to_string(x) + ")";
  return std::nullopt;
}

/// First (b, x) with f(b.x) != b.f(x).
inline std::optional<std::string> morphism_equivariance_violation(const GroupHom& f,
                                                                  const GroupAction& src,
                                                                  const GroupAction& dst)
{
  for (GroupElement g = 0; g < src.actor.order(); ++g)
    for (GroupElement x = 0; x < src.acted.order(); ++x)
      if (f(src(g, x)) != dst(g, f(x)))
        return "(" + std::to_string(g) + "," + std::to_string(x) + ")";
  return std::nullopt;
}

/// m n m^-1 (^{d m} n)^-1
inline GroupElement peiffer_element(const GroupHom& d, const GroupAction& xi, GroupElement m,
                                    GroupElement n)
{
  const FiniteGroup& x = xi.acted;
  return x.mul(x.conjugate(m, n), x.inv(xi(d(m), n)));
}

/// Peiffer commutators of groups are generated subgroups.
inline Subgroup peiffer_closure(const FiniteGroup& x, std::span<const GroupElement> gens)
{
  return generated_subobject(x, gens, false);
}

/// c(x, b) = d(x) b on the semidirect product.
inline GroupHom semidirect_codomain_map(const GroupSemidirect& s, const GroupHom& d)
{
  const FiniteGroup& b = d.codomain;
  std::size_t nx = d.domain.order();
  GroupHom c{s.object, b, std::vector<GroupElement>(s.object.order())};
  for (std::size_t p = 0; p < c.map.size(); ++p)
    c.map[p] = b.mul(d(static_cast<GroupElement>(p % nx)), static_cast<GroupElement>(p / nx));
  return c;
}

// ---------------------------------------------------------------------------
// Reporting

inline std::string render(const FiniteGroup&, GroupElement x) { return std::to_string(x); }

inline std::string render(const Subgroup& s)
{
  std::ostringstream out;
  out << "{";
  for (std::size_t i = 0; i < s.elements.size(); ++i)
    out << (i ? "," : "") << s.elements[i];
  out << "}";
  return out.str();
}

inline bool is_abelian(const FiniteGroup& g)
{
  for (GroupElement a = 0; a < g.order(); ++a)
    for (GroupElement b = a + 1; b < g.order(); ++b)
      if (g.mul(a, b) != g.mul(b, a))
        return false;
  return true;
}

/// Invariant factors d1 | d2 | ... of a finite abelian group.
inline std::vector<std::size_t> invariant_factors(const FiniteGroup& g)
{
  std::size_t n = g.order();
  std::vector<std::size_t> primes;
  for (std::size_t p = 2, m = n; m > 1; ++p)
    if (m % p == 0) {
      primes.push_back(p);
      while (m % p == 0)
        m /= p;
    }
  // Per prime: exponents of the cyclic p-factors, largest first.
  std::vector<std::vector<std::size_t>> per_prime;
  for (std::size_t p : primes) {
    auto log_p = [p](std::size_t v) {
      std::size_t e = 0;
      while (v > 1) {
        v /= p;
        ++e;
      }
      return e;
    };
    std::vector<std::size_t> rank_at{0}; // rank_at[k] = log_p |{x : x^(p^k) = 1}|
    for (std::size_t k = 1, pk = p;; ++k, pk *= p) {
      std::size_t count = 0;
      for (GroupElement x = 0; x < n; ++x)
        if (power(g, x, pk) == 0)
          ++count;
      rank_at.push_back(log_p(count));
      if (rank_at[k] == rank_at[k - 1])
        break;
    }
    std::vector<std::size_t> exps;
    for (std::size_t k = 1; k + 1 < rank_at.size(); ++k) {
      std::size_t at_least_k = rank_at[k] - rank_at[k - 1];
      std::size_t at_least_next = rank_at[k + 1] - rank_at[k];
      for (std::size_t i = 0; i < at_least_k - at_least_next; ++i)
        exps.push_back(k);
    }
    std::sort(exps.rbegin(), exps.rend());
    std::vector<std::size_t> factors;
    for (std::size_t e : exps) {
      std::size_t f = 1;
      for (std::size_t i = 0; i < e; ++i)
        f *= p;
      factors.push_back(f);
    }
    per_prime.push_back(std::move(factors));
  }
  std::size_t count = 0;
  for (const auto& v : per_prime)
    count = std::max(count, v.size());
  std::vector<std::size_t> result(count, 1);
  for (const auto& v : per_prime)
    for (std::size_t i = 0; i < v.size(); ++i)
      result[i] *= v[i];
  std::reverse(result.begin(), result.end());
  return result;
}

/// Isomorphism-type label: invariant factors when abelian, otherwise order,
/// exponent and conjugacy class sizes. Not a complete invariant.
inline std::string fingerprint(const FiniteGroup& g)
{
  std::ostringstream out;
  if (g.order() == 1)
    return "1";
  if (is_abelian(g)) {
    auto f = invariant_factors(g);
    for (std::size_t i = 0; i < f.size(); ++i)
      out << (i ? " x " : "") << "Z/" << f[i];
    return out.str();
  }
  std::size_t exponent = 1;
  for (GroupElement x = 0; x < g.order(); ++x)
    exponent = std::lcm(exponent, element_order(g, x));
  std::vector<char> seen(g.order(), 0);
  std::vector<std::size_t> classes;
  for (GroupElement x = 0; x < g.order(); ++x) {
    if (seen[x])
      continue;
    std::size_t size = 0;
    for (GroupElement h = 0; h < g.order(); ++h) {
      GroupElement c = g.conjugate(h, x);
      if (!seen[c]) {
        seen[c] = 1;
        ++size;
      }
    }
    classes.push_back(size);
  }
  std::sort(classes.begin(), classes.end());
  out << "nonabelian order=" << g.order() << " exponent=" << exponent << " classes=[";
  for (std::size_t i = 0; i < classes.size(); ++i)
    out << (i ? "," : "") << classes[i];
  // D4 and Q8 share the class equation; element orders separate them.
  std::map<std::size_t, std::size_t> orders;
  for (GroupElement x = 0; x < g.order(); ++x)
    ++orders[element_order(g, x)];
  out << "] orders=[";
  bool first = true;
  for (const auto& [o, c] : orders) {
    out << (first ? "" : ",") << o << ":" << c;
    first = false;
  }
  out << "]";
  return out.str();
}

} // namespace peiffer
