#pragma once

// Precrossed modules (d: X -> B, xi) over a fixed base B, their morphisms and
// submodules, Peiffer commutators, the crossed-module reflection, and the
// passage to and from reflexive graphs over B.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ambient.hpp"

namespace peiffer {

template <Ambient A>
struct PrecrossedModule {
  A X;
  A B;
  Hom<A> boundary;
  Action<A> action;
};

template <Ambient A>
struct PXMorphism {
  PrecrossedModule<A> source;
  PrecrossedModule<A> target;
  Hom<A> map;
};

/// An action-stable subobject of parent.X.
template <Ambient A>
struct PXSubmodule {
  PrecrossedModule<A> parent;
  Sub<A> carrier;
  bool normal_in_parent = false;
};

/// X1 with d, c: X1 -> B and their common section e.
template <Ambient A>
struct ReflexiveGraph {
  A X1;
  A B;
  Hom<A> d;
  Hom<A> c;
  Hom<A> e;
};

/// Outcome of a yes/no check, with a rendered witness when it fails.
struct Verdict {
  bool holds = true;
  std::string witness;

  explicit operator bool() const { return holds; }
};

inline Verdict fail(std::string witness) { return Verdict{false, std::move(witness)}; }

template <Ambient A>
PrecrossedModule<A> make_pxmod(const Hom<A>& boundary, const Action<A>& action)
{
  if (!same_object(boundary.domain, action.acted) || !same_object(boundary.codomain, action.actor))
    throw Error(ErrorKind::AmbientMismatch, "boundary and action disagree on X or B");
  if (auto why = action_violation(action))
    throw Error(ErrorKind::ActionInvalid, *why);
  if (auto w = equivariance_violation(boundary, action))
    throw Error(ErrorKind::NotEquivariant, "d(b.x) != b d(x) b^-1 at (b,x) = " + *w, *w);
  return PrecrossedModule<A>{boundary.domain, boundary.codomain, boundary, action};
}

template <Ambient A>
PXMorphism<A> make_pxmorphism(const PrecrossedModule<A>& src, const PrecrossedModule<A>& tgt,
                              const Hom<A>& f)
{
  if (!same_object(src.B, tgt.B))
    throw Error(ErrorKind::AmbientMismatch, "precrossed modules over different bases");
  if (!same_object(f.domain, src.X) || !same_object(f.codomain, tgt.X))
    throw Error(ErrorKind::AmbientMismatch, "map does not go from source X to target X");
  if (!(compose(tgt.boundary, f) == src.boundary))
    throw Error(ErrorKind::NotEquivariant, "map is not over B (d' f != d)");
  if (auto w = morphism_equivariance_violation(f, src.action, tgt.action))
    throw Error(ErrorKind::NotEquivariant, "f(b.x) != b.f(x) at (b,x) = " + *w, *w);
  return PXMorphism<A>{src, tgt, f};
}

template <Ambient A>
PXMorphism<A> identity_morphism(const PrecrossedModule<A>& p)
{
  return PXMorphism<A>{p, p, identity_hom(p.X)};
}

template <Ambient A>
PXMorphism<A> compose(const PXMorphism<A>& g, const PXMorphism<A>& f)
{
  return PXMorphism<A>{f.source, g.target, compose(g.map, f.map)};
}

template <Ambient A>
bool is_isomorphism(const PXMorphism<A>& f)
{
  return is_injective(f.map) && is_surjective(f.map);
}

// ---------------------------------------------------------------------------
// Submodules

template <Ambient A>
PXSubmodule<A> make_submodule(const PrecrossedModule<A>& p, const Sub<A>& s)
{
  if (!same_object(s.ambient, p.X))
    throw Error(ErrorKind::AmbientMismatch, "subobject is not inside X");
  if (!is_stable(p.action, s))
    throw Error(ErrorKind::StabilityViolation, "subobject is not stable under the B-action",
                render(s));
  return PXSubmodule<A>{p, s, is_normal(s)};
}

template <Ambient A>
PXSubmodule<A> whole_submodule(const PrecrossedModule<A>& p)
{
  return PXSubmodule<A>{p, whole(p.X), true};
}

template <Ambient A>
PXSubmodule<A> trivial_submodule(const PrecrossedModule<A>& p)
{
  return PXSubmodule<A>{p, trivial_subobject(p.X), true};
}

/// Smallest submodule containing the given elements (normal when asked).
template <Ambient A>
PXSubmodule<A> generated_submodule(const PrecrossedModule<A>& p, std::span<const Element<A>> gens,
                                   bool normal)
{
  Sub<A> s = stable_closure(p.action, generated_subobject(p.X, gens, normal), normal);
  return PXSubmodule<A>{p, s, is_normal(s)};
}

template <Ambient A>
bool has_zero_boundary(const PXSubmodule<A>& m)
{
  return is_trivial(image(m.parent.boundary, m.carrier));
}

template <Ambient A>
PXSubmodule<A> image(const PXMorphism<A>& f, const PXSubmodule<A>& m)
{
  Sub<A> s = image(f.map, m.carrier);
  return PXSubmodule<A>{f.target, s, is_normal(s)};
}

template <Ambient A>
PXSubmodule<A> kernel(const PXMorphism<A>& f)
{
  return PXSubmodule<A>{f.source, kernel(f.map), true};
}

template <Ambient A>
struct PXEmbedding {
  PrecrossedModule<A> object;
  PXMorphism<A> inclusion;
};

/// The submodule as a precrossed module in its own right.
template <Ambient A>
PXEmbedding<A> submodule_object(const PXSubmodule<A>& m)
{
  auto e = as_object(m.carrier);
  PrecrossedModule<A> obj{e.object, m.parent.B, compose(m.parent.boundary, e.inclusion),
                          restrict_action(m.parent.action, e)};
  return {obj, PXMorphism<A>{obj, m.parent, e.inclusion}};
}

// ---------------------------------------------------------------------------
// Peiffer commutator

/// Both orientations of the Peiffer element for every pair (m, n).
template <Ambient A>
std::vector<Element<A>> peiffer_generators(const PrecrossedModule<A>& p, const Sub<A>& m,
                                           const Sub<A>& n)
{
  std::vector<Element<A>> gens;
  for (const auto& a : formula_elements(m))
    for (const auto& b : formula_elements(n)) {
      gens.push_back(peiffer_element(p.boundary, p.action, a, b));
      gens.push_back(peiffer_element(p.boundary, p.action, b, a));
    }
  return gens;
}

/// First nontrivial Peiffer element, rendered as "m,n -> value".
template <Ambient A>
std::optional<std::string> peiffer_witness(const PrecrossedModule<A>& p, const Sub<A>& m,
                                           const Sub<A>& n)
{
  const auto zero = neutral(p.X);
  for (const auto& a : formula_elements(m))
    for (const auto& b : formula_elements(n))
      for (int side = 0; side < 2; ++side) {
        const auto& x = side ? b : a;
        const auto& y = side ? a : b;
        auto v = peiffer_element(p.boundary, p.action, x, y);
        if (v != zero)
          return "m=" + render(p.X, x) + " n=" + render(p.X, y) + " peiffer=" + render(p.X, v);
      }
  return std::nullopt;
}

template <Ambient A>
PXSubmodule<A> peiffer_commutator(const PrecrossedModule<A>& p, const Sub<A>& m, const Sub<A>& n)
{
  if (!same_object(m.ambient, p.X) || !same_object(n.ambient, p.X))
    throw Error(ErrorKind::AmbientMismatch, "submodules of a different precrossed module");
  auto gens = peiffer_generators(p, m, n);
  Sub<A> s = peiffer_closure(p.X, std::span<const Element<A>>(gens));
  if (!is_stable(p.action, s))
    throw Error(ErrorKind::StabilityViolation, "Peiffer commutator is not stable under B",
                render(s));
  return PXSubmodule<A>{p, s, is_normal(s)};
}

template <Ambient A>
PXSubmodule<A> peiffer_commutator(const PXSubmodule<A>& m, const PXSubmodule<A>& n)
{
  return peiffer_commutator(m.parent, m.carrier, n.carrier);
}

/// Peiffer identity check: ^{d x} y = x y x^-1 for all x, y.
template <Ambient A>
Verdict is_crossed(const PrecrossedModule<A>& p)
{
  Sub<A> all = whole(p.X);
  const auto zero = neutral(p.X);
  for (const auto& x : formula_elements(all))
    for (const auto& y : formula_elements(all))
      if (peiffer_element(p.boundary, p.action, x, y) != zero)
        return fail("x=" + render(p.X, x) + " y=" + render(p.X, y));
  return {};
}

// ---------------------------------------------------------------------------
// Quotients and the crossed-module reflection

template <Ambient A>
struct PXQuotient {
  PrecrossedModule<A> object;
  PXMorphism<A> projection;
  /// True when the requested subobject had to be enlarged to a normal one.
  bool closure_proper = false;
};

/// Quotient by a normal, stable subobject contained in ker(d).
template <Ambient A>
PXQuotient<A> quotient_pxmod(const PrecrossedModule<A>& p, const Sub<A>& n)
{
  if (!is_normal(n))
    throw Error(ErrorKind::NotNormal, "quotient by a non-normal subobject", render(n));
  if (!is_stable(p.action, n))
    throw Error(ErrorKind::StabilityViolation, "quotient by a subobject not stable under B",
                render(n));
  auto q = quotient_by(n);
  auto d = factor_through(p.boundary, q.projection);
  if (!d)
    throw Error(ErrorKind::NonzeroBoundary, "subobject is not inside ker(d)", render(n));
  PrecrossedModule<A> obj{q.object, p.B, *d, induced_action(p.action, q)};
  return {obj, PXMorphism<A>{p, obj, q.projection}, false};
}

/// Quotient by the normal, stable closure of s.
template <Ambient A>
PXQuotient<A> quotient_by_closure(const PrecrossedModule<A>& p, const Sub<A>& s)
{
  Sub<A> n = stable_closure(p.action, s, true);
  auto r = quotient_pxmod(p, n);
  r.closure_proper = !(n == s);
  return r;
}

/// X -> X / <X,X>; the result always satisfies the Peiffer identity.
template <Ambient A>
PXQuotient<A> reflect_to_xmod(const PrecrossedModule<A>& p)
{
  Sub<A> all = whole(p.X);
  return quotient_by_closure(p, peiffer_commutator(p, all, all).carrier);
}

// ---------------------------------------------------------------------------
// Reflexive graphs

template <Ambient A>
ReflexiveGraph<A> make_reflexive_graph(const Hom<A>& d, const Hom<A>& c, const Hom<A>& e)
{
  if (!same_object(d.domain, c.domain) || !same_object(d.codomain, c.codomain) ||
      !same_object(e.domain, d.codomain) || !same_object(e.codomain, d.domain))
    throw Error(ErrorKind::AmbientMismatch, "d, c, e do not form a reflexive graph");
  if (!(compose(d, e) == identity_hom(d.codomain)) || !(compose(c, e) == identity_hom(d.codomain)))
    throw Error(ErrorKind::AxiomViolation, "d e = 1_B = c e fails");
  return ReflexiveGraph<A>{d.domain, d.codomain, d, c, e};
}

template <Ambient A>
Semidirect<A, Hom<A>> semidirect_of(const PrecrossedModule<A>& p)
{
  return semidirect_product(p.action);
}

/// X1 = X semidirect B, d(x,b) = b, c(x,b) = d(x) b, e(b) = (0,b).
template <Ambient A>
ReflexiveGraph<A> to_reflexive_graph(const PrecrossedModule<A>& p)
{
  auto s = semidirect_of(p);
  return ReflexiveGraph<A>{s.object, p.B, s.projection, semidirect_codomain_map(s, p.boundary),
                           s.section};
}

template <Ambient A>
struct Normalization {
  PrecrossedModule<A> pxmod;
  /// K[d] as an object, with its inclusion into X1.
  Embedding<A, Hom<A>> kernel;
};

/// X = K[d], boundary c restricted, action by conjugation through e in X1.
template <Ambient A>
Normalization<A> normalize_with_kernel(const ReflexiveGraph<A>& g)
{
  auto emb = as_object(kernel(g.d));
  Hom<A> boundary = compose(g.c, emb.inclusion);
  Action<A> xi = restrict_action(pullback_action(conjugation_action(g.X1), g.e), emb);
  return {make_pxmod<A>(boundary, xi), emb};
}

template <Ambient A>
PrecrossedModule<A> normalize(const ReflexiveGraph<A>& g)
{
  return normalize_with_kernel(g).pxmod;
}

template <Ambient A>
struct RGQuotient {
  ReflexiveGraph<A> graph;
  Hom<A> projection;
  bool closure_proper = false;
};

/// X1 / [K[d], K[c]]: the reflection onto internal groupoids.
template <Ambient A>
RGQuotient<A> rg_reflection(const ReflexiveGraph<A>& g)
{
  Sub<A> h = huq_commutator(kernel(g.d), kernel(g.c));
  Sub<A> n = normal_closure(h);
  auto q = quotient_by(n);
  auto d = factor_through(g.d, q.projection);
  auto c = factor_through(g.c, q.projection);
  if (!d || !c)
    throw Error(ErrorKind::AxiomViolation, "commutator of the kernels is not inside K[d] and K[c]");
  ReflexiveGraph<A> r{q.object, g.B, *d, *c, compose(q.projection, g.e)};
  return {r, q.projection, !(n == h)};
}

/// Compares rg_reflection(to_reflexive_graph(P)) with
/// to_reflexive_graph(reflect_to_xmod(P)) through the canonical map
/// (x, b) -> (eta x, b).
template <Ambient A>
Verdict reflection_correspondence(const PrecrossedModule<A>& p)
{
  auto refl = reflect_to_xmod(p);
  auto s1 = semidirect_of(p);
  auto s2 = semidirect_of(refl.object);
  ReflexiveGraph<A> g1{s1.object, p.B, s1.projection, semidirect_codomain_map(s1, p.boundary),
                       s1.section};
  ReflexiveGraph<A> g2{s2.object, p.B, s2.projection,
                       semidirect_codomain_map(s2, refl.object.boundary), s2.section};
  auto rg = rg_reflection(g1);
  Hom<A> phi = semidirect_map(s1, s2, refl.projection.map);
  auto psi = factor_through(phi, rg.projection);
  if (!psi)
    return fail("kernel of the graph reflection differs from (<X,X>) x 0");
  if (!is_injective(*psi) || !is_surjective(*psi))
    return fail("comparison map is not bijective");
  if (!(compose(g2.d, *psi) == rg.graph.d) || !(compose(g2.c, *psi) == rg.graph.c) ||
      !(compose(*psi, rg.graph.e) == g2.e))
    return fail("comparison map does not commute with d, c, e");
  return {};
}

/// normalize(to_reflexive_graph(P)) is isomorphic to P via x -> (x, 1).
template <Ambient A>
Verdict normalize_roundtrip(const PrecrossedModule<A>& p)
{
  auto s = semidirect_of(p);
  ReflexiveGraph<A> g{s.object, p.B, s.projection, semidirect_codomain_map(s, p.boundary),
                      s.section};
  auto n = normalize_with_kernel(g);
  Hom<A> phi = corestrict(s.inclusion, n.kernel);
  if (!is_injective(phi) || !is_surjective(phi))
    return fail("j_X is not onto K[d]");
  if (!(compose(n.pxmod.boundary, phi) == p.boundary))
    return fail("boundary not preserved");
  if (auto w = morphism_equivariance_violation(phi, p.action, n.pxmod.action))
    return fail("action not preserved at " + *w);
  return {};
}

// ---------------------------------------------------------------------------
// Pullbacks

template <Ambient A>
struct PXPullback {
  PrecrossedModule<A> object;
  PXMorphism<A> first;
  PXMorphism<A> second;
};

/// X x_Y Z for f: X -> Y <- Z: g, with componentwise action.
template <Ambient A>
PXPullback<A> pullback(const PXMorphism<A>& f, const PXMorphism<A>& g)
{
  if (!same_object(f.target.X, g.target.X))
    throw Error(ErrorKind::AmbientMismatch, "pullback of maps with different codomains");
  auto prod = direct_product(f.source.X, g.source.X);
  Sub<A> eq = equalizer(compose(f.map, prod.first), compose(g.map, prod.second));
  auto emb = as_object(eq);
  Hom<A> p1 = compose(prod.first, emb.inclusion);
  Hom<A> p2 = compose(prod.second, emb.inclusion);
  Action<A> xi = restrict_action(product_action(f.source.action, g.source.action, prod), emb);
  PrecrossedModule<A> obj = make_pxmod<A>(compose(f.source.boundary, p1), xi);
  return {obj, PXMorphism<A>{obj, f.source, p1}, PXMorphism<A>{obj, g.source, p2}};
}

} // namespace peiffer
