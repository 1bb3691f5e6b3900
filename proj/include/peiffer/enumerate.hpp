#pragma once

// Catalogs of small ambient objects and deterministic enumeration of
// homomorphisms, actions, precrossed modules, extensions and double
// extensions built from them.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "galois.hpp"

namespace peiffer {

template <class T>
struct Instance {
  T value;
  std::string label;
};

// ---------------------------------------------------------------------------
// Catalogs

namespace detail {

inline FiniteGroup product_of_cyclics(std::initializer_list<std::size_t> orders,
                                      const std::string& name)
{
  FiniteGroup g = cyclic_group(*orders.begin());
  for (auto it = std::next(orders.begin()); it != orders.end(); ++it)
    g = direct_product(g, cyclic_group(*it)).object;
  // Rebuild with a name; products are not named consistently otherwise.
  std::vector<GroupElement> t = g.table();
  return FiniteGroup::from_flat(g.order(), std::move(t), name, false);
}

inline FiniteGroup quaternion_group()
{
  // index: 0:1 1:-1 2:i 3:-i 4:j 5:-j 6:k 7:-k
  auto unit = [](int u) { return u / 2; };
  auto sign = [](int u) { return u % 2; };
  // product of basis units 0=1, 1=i, 2=j, 3=k as (unit, sign)
  const int pu[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  const int ps[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  std::vector<std::vector<long long>> rows(8, std::vector<long long>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      int u = pu[unit(a)][unit(b)];
      int s = (sign(a) + sign(b) + ps[unit(a)][unit(b)]) % 2;
      rows[a][b] = 2 * u + s;
    }
  return FiniteGroup::from_table(rows, "Q8");
}

} // namespace detail

/// The built-in groups of order at most 8, one per isomorphism type.
inline const std::vector<FiniteGroup>& group_catalog()
{
  static const std::vector<FiniteGroup> groups = [] {
    std::vector<FiniteGroup> g;
    g.push_back(FiniteGroup());
    g.push_back(cyclic_group(2));
    g.push_back(cyclic_group(3));
    g.push_back(cyclic_group(4));
    g.push_back(detail::product_of_cyclics({2, 2}, "Z/2 x Z/2"));
    g.push_back(cyclic_group(5));
    g.push_back(FiniteGroup::from_permutations({{1, 0, 2}, {1, 2, 0}}, "S3"));
    g.push_back(cyclic_group(6));
    g.push_back(cyclic_group(7));
    g.push_back(cyclic_group(8));
    g.push_back(detail::product_of_cyclics({4, 2}, "Z/4 x Z/2"));
    g.push_back(detail::product_of_cyclics({2, 2, 2}, "Z/2 x Z/2 x Z/2"));
    g.push_back(FiniteGroup::from_permutations({{1, 2, 3, 0}, {3, 2, 1, 0}}, "D4"));
    g.push_back(detail::quaternion_group());
    return g;
  }();
  return groups;
}

inline const FiniteGroup& catalog_group(const std::string& name)
{
  for (const auto& g : group_catalog())
    if (g.name() == name)
      return g;
  throw Error(ErrorKind::BadSpec, "unknown catalog group '" + name + "'");
}

namespace detail {

using Tensor = std::vector<std::vector<std::vector<long long>>>;

inline Tensor zero_tensor(std::size_t n)
{
  return Tensor(n, std::vector<std::vector<long long>>(n, std::vector<long long>(n, 0)));
}

/// Sets [e_i, e_j] = v and [e_j, e_i] = -v.
inline void set_bracket(Tensor& t, std::size_t i, std::size_t j, std::vector<long long> v)
{
  t[i][j] = v;
  for (auto& x : v)
    x = -x;
  t[j][i] = std::move(v);
}

} // namespace detail

/// Lie algebras of dimension at most 3 over F_p.
inline const std::vector<LieAlgebra>& lie_catalog(int p)
{
  static std::map<int, std::vector<LieAlgebra>> cache;
  static std::mutex m;
  std::lock_guard lock(m);
  auto it = cache.find(p);
  if (it != cache.end())
    return it->second;
  using detail::set_bracket;
  using detail::zero_tensor;
  std::vector<LieAlgebra> l;
  std::string f = "F" + std::to_string(p);
  l.push_back(LieAlgebra::from_structure(p, {}, "0"));
  l.push_back(LieAlgebra::from_structure(p, zero_tensor(1), f + "^1"));
  l.push_back(LieAlgebra::from_structure(p, zero_tensor(2), f + "^2"));
  {
    auto t = zero_tensor(2);
    set_bracket(t, 0, 1, {0, 1});
    l.push_back(LieAlgebra::from_structure(p, t, "r2"));
  }
  l.push_back(LieAlgebra::from_structure(p, zero_tensor(3), f + "^3"));
  {
    auto t = zero_tensor(3);
    set_bracket(t, 0, 1, {0, 0, 1});
    l.push_back(LieAlgebra::from_structure(p, t, "heis"));
  }
  {
    auto t = zero_tensor(3);
    set_bracket(t, 0, 1, {0, 1, 0});
    l.push_back(LieAlgebra::from_structure(p, t, "r2+F"));
  }
  {
    auto t = zero_tensor(3);
    set_bracket(t, 0, 1, {0, 1, 0});
    set_bracket(t, 0, 2, {0, 0, 1});
    l.push_back(LieAlgebra::from_structure(p, t, "r3"));
  }
  if (p != 2) {
    auto t = zero_tensor(3);
    set_bracket(t, 0, 1, {0, 2, 0});
    set_bracket(t, 0, 2, {0, 0, -2});
    set_bracket(t, 1, 2, {1, 0, 0});
    l.push_back(LieAlgebra::from_structure(p, t, "sl2"));
  }
  return cache.emplace(p, std::move(l)).first->second;
}

inline const LieAlgebra& catalog_lie(int p, const std::string& name)
{
  for (const auto& l : lie_catalog(p))
    if (l.name() == name)
      return l;
  throw Error(ErrorKind::BadSpec, "unknown catalog Lie algebra '" + name + "'");
}

// ---------------------------------------------------------------------------
// Homomorphism enumeration

/// Calls visit(h) for every homomorphism a -> c, in lexicographic order of
/// generator images. `allow(i, y)` may reject image y for the i-th generator
/// of small_generating_set(whole(a)) early.
template <class Allow, class Visit>
void for_each_hom(const FiniteGroup& a, const FiniteGroup& c, const std::vector<GroupElement>& gens,
                  Allow&& allow, Visit&& visit)
{
  constexpr GroupElement unset = ~GroupElement{0};
  std::size_t k = gens.size();
  std::vector<std::vector<GroupElement>> candidates(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t ord = element_order(a, gens[i]);
    for (GroupElement y = 0; y < c.order(); ++y)
      if (ord % element_order(c, y) == 0 && allow(i, y))
        candidates[i].push_back(y);
  }
  std::vector<GroupElement> img(k);
  std::vector<GroupElement> map(a.order());
  std::vector<GroupElement> queue;
  // Extends the images of gens[0..level] along the Cayley graph; false on a
  // conflicting edge.
  auto consistent = [&](std::size_t level) {
    std::fill(map.begin(), map.end(), unset);
    map[0] = 0;
    queue.assign(1, 0);
    for (std::size_t q = 0; q < queue.size(); ++q) {
      GroupElement x = queue[q];
      for (std::size_t j = 0; j <= level; ++j) {
        GroupElement y = a.mul(x, gens[j]);
        GroupElement v = c.mul(map[x], img[j]);
        if (map[y] == unset) {
          map[y] = v;
          queue.push_back(y);
        } else if (map[y] != v) {
          return false;
        }
      }
    }
    return true;
  };
  std::function<void(std::size_t)> rec = [&](std::size_t level) {
    if (level == k) {
      if (k == 0)
        map.assign(a.order(), 0);
      visit(GroupHom{a, c, map});
      return;
    }
    for (GroupElement y : candidates[level]) {
      img[level] = y;
      if (!consistent(level))
        continue;
      if (level + 1 == k) {
        visit(GroupHom{a, c, map});
        continue;
      }
      rec(level + 1);
    }
  };
  rec(0);
}

template <class Visit>
void for_each_hom(const FiniteGroup& a, const FiniteGroup& c, Visit&& visit)
{
  auto gens = small_generating_set(whole(a));
  for_each_hom(a, c, gens, [](std::size_t, GroupElement) { return true; },
               std::forward<Visit>(visit));
}

/// Lie version: basis images in lexicographic order, `allow(i, v)` prunes
/// the image of e_i.
template <class Allow, class Visit>
void for_each_hom(const LieAlgebra& a, const LieAlgebra& c, Allow&& allow, Visit&& visit)
{
  std::size_t n = a.dim(), m = c.dim();
  int p = a.prime();
  std::uint64_t count = fp::span_size(m, p);
  std::vector<std::vector<fp::Vector>> candidates(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      fp::Vector v = fp::decode(idx, m, p);
      if (allow(i, v))
        candidates[i].push_back(std::move(v));
    }
  LieHom h{a, c, fp::zero_matrix(m, n)};
  std::function<void(std::size_t)> rec = [&](std::size_t level) {
    if (level == n) {
      if (!hom_violation(h))
        visit(h);
      return;
    }
    for (const auto& v : candidates[level]) {
      fp::set_column(h.matrix, level, v);
      rec(level + 1);
    }
  };
  rec(0);
}

template <class Visit>
void for_each_hom(const LieAlgebra& a, const LieAlgebra& c, Visit&& visit)
{
  for_each_hom(a, c, [](std::size_t, const fp::Vector&) { return true; },
               std::forward<Visit>(visit));
}

// ---------------------------------------------------------------------------
// Automorphisms, derivations, actions

struct AutomorphismGroup {
  FiniteGroup group;
  /// perms[a][x] = a(x); perms[0] is the identity.
  std::vector<std::vector<GroupElement>> perms;
};

/// Aut(X) with multiplication (a b)(x) = a(b(x)); elements sorted
/// lexicographically, so the identity is element 0.
inline AutomorphismGroup automorphism_group(const FiniteGroup& x)
{
  std::vector<std::vector<GroupElement>> perms;
  for_each_hom(x, x, [&](const GroupHom& h) {
    if (is_injective(h))
      perms.push_back(h.map);
  });
  std::sort(perms.begin(), perms.end());
  std::map<std::vector<GroupElement>, GroupElement> index;
  for (std::size_t i = 0; i < perms.size(); ++i)
    index.emplace(perms[i], static_cast<GroupElement>(i));
  std::size_t n = perms.size();
  std::vector<GroupElement> table(n * n);
  std::vector<GroupElement> comp(x.order());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t e = 0; e < x.order(); ++e)
        comp[e] = perms[a][perms[b][e]];
      table[a * n + b] = index.at(comp);
    }
  return {FiniteGroup::from_flat(n, std::move(table), "Aut", false), std::move(perms)};
}

/// All actions of b on x by automorphisms, one per homomorphism b -> Aut(x).
inline std::vector<GroupAction> all_actions(const FiniteGroup& b, const FiniteGroup& x)
{
  std::vector<GroupAction> out;
  if (b.order() == 1 || x.order() == 1) {
    out.push_back(trivial_action(b, x));
    return out;
  }
  AutomorphismGroup aut = automorphism_group(x);
  for_each_hom(b, aut.group, [&](const GroupHom& h) {
    GroupAction a{b, x, std::vector<GroupElement>(b.order() * x.order())};
    for (GroupElement g = 0; g < b.order(); ++g)
      for (GroupElement e = 0; e < x.order(); ++e)
        a.table[g * x.order() + e] = aut.perms[h(g)][e];
    out.push_back(std::move(a));
  });
  return out;
}

struct DerivationAlgebra {
  LieAlgebra algebra;
  /// basis[a] is the derivation matrix of the a-th basis vector.
  std::vector<fp::Matrix> basis;
};

/// Der(X) with the commutator bracket.
inline DerivationAlgebra derivation_algebra(const LieAlgebra& x)
{
  std::size_t n = x.dim();
  int p = x.prime();
  // Column (r, c) of `conditions` is the Leibniz defect of the unit matrix E_rc.
  fp::Matrix conditions;
  std::vector<fp::Vector> defects;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      fp::Matrix d = fp::zero_matrix(n, n);
      d[r][c] = 1;
      fp::Vector defect;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          auto ei = fp::unit(n, i), ej = fp::unit(n, j);
          auto v = fp::sub(fp::apply(d, x.structure(i, j), p),
                           fp::add(x.bracket(fp::apply(d, ei, p), ej),
                                   x.bracket(ei, fp::apply(d, ej, p)), p),
                           p);
          defect.insert(defect.end(), v.begin(), v.end());
        }
      defects.push_back(std::move(defect));
    }
  std::size_t rows = defects.empty() ? 0 : defects.front().size();
  conditions = fp::zero_matrix(rows, n * n);
  for (std::size_t col = 0; col < n * n; ++col)
    fp::set_column(conditions, col, defects[col]);
  fp::Echelon basis = fp::echelon(fp::nullspace(conditions, n * n, p), n * n, p);
  std::size_t k = basis.rank();
  auto as_matrix = [&](const fp::Vector& v) {
    fp::Matrix d = fp::zero_matrix(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        d[r][c] = v[r * n + c];
    return d;
  };
  auto as_vector = [&](const fp::Matrix& d) {
    fp::Vector v(n * n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        v[r * n + c] = d[r][c];
    return v;
  };
  std::vector<fp::Matrix> mats;
  for (const auto& v : basis.rows)
    mats.push_back(as_matrix(v));
  std::vector<fp::Vector> structure;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      structure.push_back(
          fp::coordinates(basis, as_vector(matrix_commutator(mats[a], mats[b], n, p))));
  std::size_t saved = limits::lie_dim_cap();
  if (k > saved)
    throw Error(ErrorKind::CapExceeded, "derivation algebra of dimension " + std::to_string(k));
  return {LieAlgebra::from_flat(p, k, std::move(structure), "Der"), std::move(mats)};
}

/// All actions of b on x by derivations, one per Lie homomorphism b -> Der(x).
inline std::vector<LieAction> all_actions(const LieAlgebra& b, const LieAlgebra& x)
{
  std::vector<LieAction> out;
  if (b.dim() == 0 || x.dim() == 0) {
    out.push_back(trivial_action(b, x));
    return out;
  }
  DerivationAlgebra der = derivation_algebra(x);
  int p = x.prime();
  for_each_hom(b, der.algebra, [&](const LieHom& h) {
    std::vector<fp::Matrix> ds;
    for (std::size_t k = 0; k < b.dim(); ++k) {
      fp::Matrix d = fp::zero_matrix(x.dim(), x.dim());
      for (std::size_t a = 0; a < der.basis.size(); ++a)
        if (h.matrix[a][k] != 0)
          for (std::size_t r = 0; r < x.dim(); ++r)
            fp::axpy(d[r], h.matrix[a][k], der.basis[a][r], p);
      ds.push_back(std::move(d));
    }
    out.push_back(LieAction{b, x, std::move(ds)});
  });
  return out;
}

// ---------------------------------------------------------------------------
// All subobjects

inline std::vector<GroupElement> all_elements(const FiniteGroup& g) { return whole(g).elements; }

inline std::vector<fp::Vector> all_elements(const LieAlgebra& l)
{
  std::vector<fp::Vector> out;
  for (std::uint64_t i = 0; i < cardinality(l); ++i)
    out.push_back(fp::decode(i, l.dim(), l.prime()));
  return out;
}

namespace detail {

inline bool sub_less(const Subgroup& a, const Subgroup& b)
{
  if (a.size() != b.size())
    return a.size() < b.size();
  return a.elements < b.elements;
}

inline bool sub_less(const Subspace& a, const Subspace& b)
{
  if (a.dim() != b.dim())
    return a.dim() < b.dim();
  return a.basis.rows < b.basis.rows;
}

} // namespace detail

/// Every subgroup / subalgebra, ordered by size and then carrier.
template <Ambient A>
std::vector<Sub<A>> all_subobjects(const A& a)
{
  std::vector<Sub<A>> subs;
  auto known = [&](const Sub<A>& s) {
    return std::find(subs.begin(), subs.end(), s) != subs.end();
  };
  subs.push_back(trivial_subobject(a));
  for (const auto& e : all_elements(a)) {
    std::vector<Element<A>> one{e};
    Sub<A> s = generated_subobject(a, std::span<const Element<A>>(one), false);
    if (!known(s))
      subs.push_back(std::move(s));
  }
  for (std::size_t i = 0; i < subs.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      Sub<A> s = join(subs[i], subs[j]);
      if (!known(s))
        subs.push_back(std::move(s));
    }
  std::sort(subs.begin(), subs.end(),
            [](const Sub<A>& x, const Sub<A>& y) { return detail::sub_less(x, y); });
  return subs;
}

/// Stable subobjects of P, optionally only the normal ones inside ker(d).
template <Ambient A>
std::vector<Sub<A>> all_submodules(const PrecrossedModule<A>& p, const std::vector<Sub<A>>& subs,
                                   bool normal_in_kernel)
{
  std::vector<Sub<A>> out;
  Sub<A> kd = kernel(p.boundary);
  for (const auto& s : subs) {
    if (!is_stable(p.action, s))
      continue;
    if (normal_in_kernel && (!is_normal(s) || !includes(kd, s)))
      continue;
    out.push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Instance streams

struct Bounds {
  /// Groups: |X| |B| <= max_order.
  std::size_t max_order = 48;
  /// Lie algebras: dim X + dim B <= max_dim.
  std::size_t max_dim = 3;
  std::vector<int> primes{2, 3};
};

inline bool within_bounds(const FiniteGroup& x, const FiniteGroup& b, const Bounds& bounds)
{
  return x.order() * b.order() <= bounds.max_order;
}

inline bool within_bounds(const LieAlgebra& x, const LieAlgebra& b, const Bounds& bounds)
{
  return x.dim() + b.dim() <= bounds.max_dim;
}

inline std::vector<const std::vector<FiniteGroup>*> catalogs(const FiniteGroup*, const Bounds&)
{
  return {&group_catalog()};
}

inline std::vector<const std::vector<LieAlgebra>*> catalogs(const LieAlgebra*, const Bounds& b)
{
  std::vector<const std::vector<LieAlgebra>*> out;
  for (int p : b.primes)
    out.push_back(&lie_catalog(p));
  return out;
}

inline std::string object_label(const FiniteGroup& g) { return g.name(); }
inline std::string object_label(const LieAlgebra& l)
{
  return l.name() + "/F" + std::to_string(l.prime());
}

/// Every precrossed module (X, B, d, xi) with X, B from the catalog and
/// within bounds. Order: B, then X (catalog order), then action, then
/// boundary, each in enumeration order.
template <Ambient A>
std::vector<Instance<PrecrossedModule<A>>> enumerate_pxmods(const Bounds& bounds)
{
  std::vector<Instance<PrecrossedModule<A>>> out;
  for (const auto* cat : catalogs(static_cast<const A*>(nullptr), bounds))
    for (const A& b : *cat)
      for (const A& x : *cat) {
        if (!within_bounds(x, b, bounds))
          continue;
        auto actions = all_actions(b, x);
        std::vector<Hom<A>> homs;
        for_each_hom(x, b, [&](const Hom<A>& h) { homs.push_back(h); });
        for (std::size_t ai = 0; ai < actions.size(); ++ai)
          for (std::size_t di = 0; di < homs.size(); ++di) {
            if (equivariance_violation(homs[di], actions[ai]))
              continue;
            out.push_back({make_pxmod<A>(homs[di], actions[ai]),
                           "X=" + object_label(x) + " B=" + object_label(b) + " action#" +
                               std::to_string(ai) + " boundary#" + std::to_string(di)});
          }
      }
  return out;
}

namespace detail {

template <class Visit>
void for_each_map_over_b(const PrecrossedModule<FiniteGroup>& s,
                         const PrecrossedModule<FiniteGroup>& t, Visit&& visit)
{
  auto gens = small_generating_set(whole(s.X));
  for_each_hom(
      s.X, t.X, gens,
      [&](std::size_t i, GroupElement y) { return t.boundary(y) == s.boundary(gens[i]); }, visit);
}

template <class Visit>
void for_each_map_over_b(const PrecrossedModule<LieAlgebra>& s,
                         const PrecrossedModule<LieAlgebra>& t, Visit&& visit)
{
  std::size_t n = s.X.dim();
  for_each_hom(
      s.X, t.X,
      [&](std::size_t i, const fp::Vector& v) { return t.boundary(v) == s.boundary(fp::unit(n, i)); },
      visit);
}

/// Homomorphisms u: s -> t with ft u = fs, for fs: s -> Y and ft: t -> Y.
template <class Visit>
void for_each_map_over(const FiniteGroup& s, const FiniteGroup& t, const GroupHom& fs,
                       const GroupHom& ft, Visit&& visit)
{
  auto gens = small_generating_set(whole(s));
  for_each_hom(
      s, t, gens, [&](std::size_t i, GroupElement y) { return ft(y) == fs(gens[i]); }, visit);
}

template <class Visit>
void for_each_map_over(const LieAlgebra& s, const LieAlgebra& t, const LieHom& fs,
                       const LieHom& ft, Visit&& visit)
{
  std::size_t n = s.dim();
  for_each_hom(
      s, t, [&](std::size_t i, const fp::Vector& v) { return ft(v) == fs(fp::unit(n, i)); },
      visit);
}

inline bool size_divides(const FiniteGroup& x, const FiniteGroup& y)
{
  return x.order() % y.order() == 0;
}

inline bool size_divides(const LieAlgebra& x, const LieAlgebra& y)
{
  return x.prime() == y.prime() && y.dim() <= x.dim();
}

} // namespace detail

/// Every morphism over B between two precrossed modules.
template <Ambient A>
std::vector<PXMorphism<A>> all_morphisms(const PrecrossedModule<A>& s, const PrecrossedModule<A>& t)
{
  std::vector<PXMorphism<A>> out;
  detail::for_each_map_over_b(s, t, [&](const Hom<A>& f) {
    if (!morphism_equivariance_violation(f, s.action, t.action))
      out.push_back(PXMorphism<A>{s, t, f});
  });
  return out;
}

namespace detail {

inline std::vector<GroupElement> generators_of(const FiniteGroup& g)
{
  return small_generating_set(whole(g));
}

inline std::vector<fp::Vector> generators_of(const LieAlgebra& l)
{
  return fp::identity_matrix(l.dim());
}

/// Over B and equivariant. Both conditions compare homomorphisms, so it
/// is enough to test them on generators of X and of B.
template <Ambient A>
bool is_morphism_on_generators(const PrecrossedModule<A>& s, const PrecrossedModule<A>& t,
                               const Hom<A>& f, const std::vector<Element<A>>& gx,
                               const std::vector<Element<A>>& gb)
{
  for (const auto& g : gx)
    if (t.boundary(f(g)) != s.boundary(g))
      return false;
  for (const auto& b : gb)
    for (const auto& g : gx)
      if (f(s.action(b, g)) != t.action(b, f(g)))
        return false;
  return true;
}

} // namespace detail

/// Extension by position: source and target instance indices and the index
/// of the map among all surjections between their X objects.
struct ExtensionRef {
  std::size_t source = 0;
  std::size_t target = 0;
  std::size_t map = 0;
};

/// Streams every surjective morphism over B between ordered pairs of
/// instances with the same base object, grouped by source instance.
template <Ambient A>
class ExtensionEnumerator {
public:
  explicit ExtensionEnumerator(const std::vector<Instance<PrecrossedModule<A>>>& pxmods)
  : pxmods_(pxmods)
  {
    for (std::size_t i = 0; i < pxmods.size(); ++i) {
      images_.push_back(Image{image(pxmods[i].value.boundary)});
      by_base_[pxmods[i].value.B.id()].push_back(i);
    }
  }

  std::size_t chunks() const { return pxmods_.size(); }

  const std::vector<Instance<PrecrossedModule<A>>>& pxmods() const { return pxmods_; }

  /// Extensions out of instance i, in target order and then map order.
  std::vector<ExtensionRef> refs_from(std::size_t i)
  {
    std::vector<ExtensionRef> out;
    const auto& s = pxmods_[i].value;
    auto gx = detail::generators_of(s.X);
    auto gb = detail::generators_of(s.B);
    for (std::size_t j : by_base_.at(s.B.id())) {
      const auto& t = pxmods_[j].value;
      if (!(images_[i].elements_equal(images_[j])))
        continue;
      const auto& maps = surjections(s.X, t.X);
      for (std::size_t k = 0; k < maps.size(); ++k)
        if (detail::is_morphism_on_generators(s, t, maps[k], gx, gb))
          out.push_back(ExtensionRef{i, j, k});
    }
    return out;
  }

  /// Extensions into instance j, over all sources.
  std::vector<ExtensionRef> refs_into(std::size_t j)
  {
    std::vector<ExtensionRef> out;
    for (std::size_t i : by_base_.at(pxmods_[j].value.B.id()))
      for (const auto& r : refs_from(i))
        if (r.target == j)
          out.push_back(r);
    return out;
  }

  Instance<Extension<A>> materialize(const ExtensionRef& r)
  {
    const auto& s = pxmods_[r.source].value;
    const auto& t = pxmods_[r.target].value;
    const auto& f = surjections(s.X, t.X).at(r.map);
    return {make_extension(PXMorphism<A>{s, t, f}), "[" + pxmods_[r.source].label + "] -> [" +
                                                        pxmods_[r.target].label + "] map#" +
                                                        std::to_string(r.map)};
  }

  /// visit(const Instance<Extension<A>>&) for each extension out of
  /// instance i, in the order of refs_from(i).
  template <class Visit>
  void for_each_from(std::size_t i, Visit&& visit)
  {
    for (const auto& r : refs_from(i))
      visit(materialize(r));
  }

private:
  struct Image {
    Sub<A> sub;
    bool elements_equal(const Image& o) const { return sub == o.sub; }
  };

  const std::vector<Hom<A>>& surjections(const A& x, const A& y)
  {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(x.id(), y.id());
    auto it = cache_.find(key);
    if (it != cache_.end())
      return it->second;
    std::vector<Hom<A>> maps;
    if (detail::size_divides(x, y))
      for_each_hom(x, y, [&](const Hom<A>& f) {
        if (is_surjective(f))
          maps.push_back(f);
      });
    return cache_.emplace(key, std::move(maps)).first->second;
  }

  const std::vector<Instance<PrecrossedModule<A>>>& pxmods_;
  std::vector<Image> images_;
  std::map<const void*, std::vector<std::size_t>> by_base_;
  std::map<std::pair<const void*, const void*>, std::vector<Hom<A>>> cache_;
  std::mutex mutex_;
};

template <Ambient A>
std::vector<Instance<Extension<A>>> enumerate_extensions(
    const std::vector<Instance<PrecrossedModule<A>>>& pxmods)
{
  std::vector<Instance<Extension<A>>> out;
  ExtensionEnumerator<A> e(pxmods);
  for (std::size_t i = 0; i < e.chunks(); ++i)
    e.for_each_from(i, [&](const Instance<Extension<A>>& x) { out.push_back(x); });
  return out;
}

/// Quotient extension X -> X / N for a normal stable N inside ker(d).
template <Ambient A>
Extension<A> quotient_extension(const PrecrossedModule<A>& p, const Sub<A>& n)
{
  return make_extension(quotient_pxmod(p, n).projection);
}

/// Double extensions of one instance given by pairs (N1, N2) of normal
/// stable subobjects in ker(d): f = X -> X/N1, g = X -> X/N2,
/// W = X/(N1 join N2).
template <Ambient A>
std::vector<Instance<DoubleExtension<A>>> double_extensions_of(
    const Instance<PrecrossedModule<A>>& inst)
{
  std::vector<Instance<DoubleExtension<A>>> out;
  const auto& p = inst.value;
  auto subs = all_submodules(p, all_subobjects(p.X), true);
  std::vector<Extension<A>> quotients;
  for (const auto& n : subs)
    quotients.push_back(quotient_extension(p, n));
  for (std::size_t a = 0; a < subs.size(); ++a)
    for (std::size_t b = 0; b < subs.size(); ++b) {
      const auto& f = quotients[a];
      const auto& g = quotients[b];
      auto w = quotient_pxmod(p, join(subs[a], subs[b]));
      auto j = factor_through(w.projection.map, f.map());
      auto h = factor_through(w.projection.map, g.map());
      auto ej = make_extension(PXMorphism<A>{f.target(), w.object, *j});
      auto eh = make_extension(PXMorphism<A>{g.target(), w.object, *h});
      out.push_back({make_double_extension(f, g, eh, ej),
                     "[" + inst.label + "] N1#" + std::to_string(a) + " N2#" + std::to_string(b)});
    }
  return out;
}

template <Ambient A>
std::vector<Instance<DoubleExtension<A>>> enumerate_double_extensions(
    const std::vector<Instance<PrecrossedModule<A>>>& pxmods)
{
  std::vector<Instance<DoubleExtension<A>>> out;
  for (const auto& inst : pxmods) {
    auto part = double_extensions_of(inst);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

/// Deterministic subsample of at most `cap` items (all when cap == 0 or the
/// input is small), keeping the original order.
template <class T>
std::vector<T> sample(std::vector<T> items, std::size_t cap, std::uint64_t seed)
{
  if (cap == 0 || items.size() <= cap)
    return items;
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> idx(items.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(cap);
  std::sort(idx.begin(), idx.end());
  std::vector<T> out;
  out.reserve(cap);
  for (auto i : idx)
    out.push_back(std::move(items[i]));
  return out;
}

} // namespace peiffer
