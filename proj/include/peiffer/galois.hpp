#pragma once

// Extensions of precrossed modules over B: centrality (Peiffer and Huq
// routes), centralization, trivial extensions, double extensions, Galois
// groups, Hopf quotients, the five-term sequence and relative commutators.

#include <array>
#include <optional>
#include <string>

#include "pxmod.hpp"

namespace peiffer {

inline constexpr const char* kProjectivityCaveat = "projectivity not verified";
inline constexpr const char* kNotChecked = "not checked (projectivity required)";

template <Ambient A>
struct Extension {
  PXMorphism<A> morphism;
  PXSubmodule<A> kernel;

  const PrecrossedModule<A>& source() const { return morphism.source; }
  const PrecrossedModule<A>& target() const { return morphism.target; }
  const Hom<A>& map() const { return morphism.map; }
};

template <Ambient A>
Extension<A> make_extension(const PXMorphism<A>& f)
{
  if (!is_surjective(f.map))
    throw Error(ErrorKind::NotSurjective, "extension is not surjective",
                "image " + render(image(f.map)));
  return Extension<A>{f, kernel(f)};
}

template <Ambient A>
Extension<A> identity_extension(const PrecrossedModule<A>& p)
{
  return make_extension(identity_morphism(p));
}

// ---------------------------------------------------------------------------
// Centrality

template <Ambient A>
struct CentralityReport {
  bool central = true;
  PXSubmodule<A> obstruction;
  std::string witness;
};

/// Central iff <K[f], X> = 0.
template <Ambient A>
CentralityReport<A> is_central(const Extension<A>& f)
{
  const auto& x = f.source();
  Sub<A> all = whole(x.X);
  CentralityReport<A> r{true, peiffer_commutator(x, f.kernel.carrier, all), {}};
  r.central = is_trivial(r.obstruction.carrier);
  if (!r.central)
    r.witness = peiffer_witness(x, f.kernel.carrier, all).value_or("");
  return r;
}

template <Ambient A>
struct HuqCentralityReport {
  bool central = true;
  /// [K[f1], K[d]] and [K[f1], K[c]] inside X semidirect B.
  Sub<A> with_kd;
  Sub<A> with_kc;
};

/// Central iff K[f1] commutes with K[d] and with K[c] in X semidirect B,
/// where f1 = f x 1_B. Shares no code path with is_central.
template <Ambient A>
HuqCentralityReport<A> is_central_via_huq(const Extension<A>& f)
{
  auto s1 = semidirect_of(f.source());
  auto s2 = semidirect_of(f.target());
  Hom<A> f1 = semidirect_map(s1, s2, f.map());
  Sub<A> kf1 = kernel(f1);
  Sub<A> kd = kernel(s1.projection);
  Sub<A> kc = kernel(semidirect_codomain_map(s1, f.source().boundary));
  HuqCentralityReport<A> r{true, huq_commutator(kf1, kd), huq_commutator(kf1, kc)};
  r.central = is_trivial(r.with_kd) && is_trivial(r.with_kc);
  return r;
}

template <Ambient A>
struct Centralization {
  Extension<A> extension;
  /// X -> X / <K[f], X>
  PXMorphism<A> quotient;
  bool closure_proper = false;
};

template <Ambient A>
Centralization<A> centralize(const Extension<A>& f)
{
  auto obstruction = peiffer_commutator(f.source(), f.kernel.carrier, whole(f.source().X));
  auto q = quotient_by_closure(f.source(), obstruction.carrier);
  auto bar = factor_through(f.map(), q.projection.map);
  if (!bar)
    throw Error(ErrorKind::AxiomViolation, "<K[f], X> is not inside K[f]");
  auto ext = make_extension(PXMorphism<A>{q.object, f.target(), *bar});
  return {ext, q.projection, q.closure_proper};
}

/// Unique g with g q = h for the centralization q of f, when h kills <K[f], X>.
template <Ambient A>
std::optional<Hom<A>> factor_through_centralization(const Centralization<A>& c, const Hom<A>& h)
{
  return factor_through(h, c.quotient.map);
}

template <Ambient A>
struct TrivialityReport {
  bool trivial = true;
  std::uint64_t domain_size = 0;
  std::uint64_t pullback_size = 0;
  bool comparison_injective = true;
};

/// The square f / G(f) against the units of the crossed-module reflection is
/// a pullback, i.e. X -> Y x_{G Y} G X is bijective.
template <Ambient A>
TrivialityReport<A> is_trivial_extension(const Extension<A>& f)
{
  auto gx = reflect_to_xmod(f.source());
  auto gy = reflect_to_xmod(f.target());
  auto gf = factor_through(compose(gy.projection.map, f.map()), gx.projection.map);
  if (!gf)
    throw Error(ErrorKind::AxiomViolation, "reflection is not functorial on this extension");
  auto pb = fibered_product(gy.projection.map, *gf);
  TrivialityReport<A> r;
  r.domain_size = size_of(f.source().X);
  r.pullback_size = size_of(pb.object);
  r.comparison_injective = is_trivial(meet(f.kernel.carrier, kernel(gx.projection.map)));
  r.trivial = r.comparison_injective && r.domain_size == r.pullback_size;
  return r;
}

/// Pullback f' of f: X -> Y along g: Z -> Y, as an extension onto Z.
template <Ambient A>
Extension<A> pullback_extension(const Extension<A>& f, const Extension<A>& g)
{
  auto pb = pullback(f.morphism, g.morphism);
  return make_extension(pb.second);
}

// ---------------------------------------------------------------------------
// Double extensions

/// Square with f: X -> Y, g: X -> Z, j: Y -> W, h: Z -> W and h g = j f.
template <Ambient A>
struct DoubleExtension {
  Extension<A> f;
  Extension<A> g;
  Extension<A> h;
  Extension<A> j;
  bool comparison_surjective = true;

  const PrecrossedModule<A>& top() const { return f.source(); }
};

template <Ambient A>
DoubleExtension<A> make_double_extension(const Extension<A>& f, const Extension<A>& g,
                                         const Extension<A>& h, const Extension<A>& j)
{
  if (!same_object(f.source().X, g.source().X) || !same_object(j.source().X, f.target().X) ||
      !same_object(h.source().X, g.target().X) || !same_object(j.target().X, h.target().X))
    throw Error(ErrorKind::AmbientMismatch, "maps do not form a square");
  if (!(compose(h.map(), g.map()) == compose(j.map(), f.map())))
    throw Error(ErrorKind::NotCommuting, "h g != j f");
  auto prod = direct_product(f.target().X, g.target().X);
  Sub<A> hit = image(pair_into(prod, f.map(), g.map()));
  Sub<A> pb = equalizer(compose(j.map(), prod.first), compose(h.map(), prod.second));
  if (!includes(hit, pb)) {
    std::string w;
    for (const auto& e : formula_elements(pb))
      if (!hit.contains(e)) {
        w = render(prod.object, e);
        break;
      }
    throw Error(ErrorKind::NotDouble, "X -> Y x_W Z is not surjective", w);
  }
  return DoubleExtension<A>{f, g, h, j, true};
}

/// The same square read with Y and Z exchanged.
template <Ambient A>
DoubleExtension<A> transpose(const DoubleExtension<A>& s)
{
  return DoubleExtension<A>{s.g, s.f, s.j, s.h, s.comparison_surjective};
}

template <Ambient A>
struct DoubleCentralityReport {
  bool central = true;
  /// <K[f] meet K[g], X>
  PXSubmodule<A> meet_obstruction;
  /// <K[f], K[g]>
  PXSubmodule<A> kernels_obstruction;
  std::string witness;
};

template <Ambient A>
DoubleCentralityReport<A> is_double_central(const DoubleExtension<A>& s)
{
  const auto& x = s.top();
  Sub<A> kf = s.f.kernel.carrier, kg = s.g.kernel.carrier, km = meet(kf, kg);
  Sub<A> all = whole(x.X);
  DoubleCentralityReport<A> r{true, peiffer_commutator(x, km, all), peiffer_commutator(x, kf, kg),
                              {}};
  bool first = is_trivial(r.meet_obstruction.carrier);
  bool second = is_trivial(r.kernels_obstruction.carrier);
  r.central = first && second;
  if (!first)
    r.witness = peiffer_witness(x, km, all).value_or("");
  else if (!second)
    r.witness = peiffer_witness(x, kf, kg).value_or("");
  return r;
}

template <Ambient A>
struct DoubleCentralization {
  DoubleExtension<A> square;
  PXMorphism<A> quotient;
  /// J = <K[f] meet K[g], X> join <K[f], K[g]>
  Sub<A> j;
  bool closure_proper = false;
};

/// Quotients the top object by J; the other three corners are unchanged.
template <Ambient A>
DoubleCentralization<A> double_centralize(const DoubleExtension<A>& s)
{
  auto r = is_double_central(s);
  Sub<A> j = join(r.meet_obstruction.carrier, r.kernels_obstruction.carrier);
  Sub<A> km = meet(s.f.kernel.carrier, s.g.kernel.carrier);
  if (!includes(km, j))
    throw Error(ErrorKind::AxiomViolation, "J is not inside K[f] meet K[g]", render(j));
  auto q = quotient_by_closure(s.top(), j);
  auto f = factor_through(s.f.map(), q.projection.map);
  auto g = factor_through(s.g.map(), q.projection.map);
  auto ef = make_extension(PXMorphism<A>{q.object, s.f.target(), *f});
  auto eg = make_extension(PXMorphism<A>{q.object, s.g.target(), *g});
  return {make_double_extension(ef, eg, s.h, s.j), q.projection, j, q.closure_proper};
}

// ---------------------------------------------------------------------------
// Subquotients, Galois groups and Hopf formulas

/// N / D for subobjects D, N of one ambient; D is first intersected with N
/// and then normally closed inside N.
template <Ambient A>
struct Subquotient {
  Sub<A> numerator;
  Sub<A> denominator;
  Embedding<A, Hom<A>> numerator_object;
  Quotient<A, Hom<A>> quotient;
  bool closure_proper = false;

  const A& object() const { return quotient.object; }
  std::uint64_t size() const { return size_of(quotient.object); }
};

template <Ambient A>
Subquotient<A> make_subquotient(const Sub<A>& numerator, const Sub<A>& denominator)
{
  auto emb = as_object(numerator);
  Sub<A> local = preimage(emb.inclusion, meet(denominator, numerator));
  Sub<A> closed = normal_closure(local);
  auto q = quotient_by(closed);
  return Subquotient<A>{numerator, image(emb.inclusion, closed), emb, q, !(closed == local)};
}

/// Map N/D -> N'/D' induced by phi: N -> ambient of N'. Empty when phi does
/// not carry D into D'.
template <Ambient A>
std::optional<Hom<A>> induced_map(const Subquotient<A>& src, const Subquotient<A>& dst,
                                  const Hom<A>& phi)
{
  if (!includes(dst.numerator, image(phi)))
    return std::nullopt;
  Hom<A> into = corestrict(phi, dst.numerator_object);
  return factor_through(compose(dst.quotient.projection, into), src.quotient.projection);
}

template <Ambient A>
struct HopfQuotient {
  Subquotient<A> value;
  std::string fingerprint;
  std::string caveat;
};

template <Ambient A>
HopfQuotient<A> make_hopf_quotient(const Sub<A>& numerator, const Sub<A>& denominator,
                                   std::string caveat)
{
  auto sq = make_subquotient<A>(numerator, denominator);
  std::string fp = fingerprint(sq.object());
  return HopfQuotient<A>{std::move(sq), std::move(fp), std::move(caveat)};
}

/// Gal(f, 0) = K[f] meet <X, X>, defined for central f.
template <Ambient A>
HopfQuotient<A> galois_group(const Extension<A>& f)
{
  auto c = is_central(f);
  if (!c.central)
    throw Error(ErrorKind::NotCentral, "Galois group needs a central extension", c.witness);
  const auto& x = f.source();
  Sub<A> all = whole(x.X);
  Sub<A> num = meet(f.kernel.carrier, peiffer_commutator(x, all, all).carrier);
  return make_hopf_quotient<A>(num, trivial_subobject(x.X), "");
}

/// Gal(f, 0) recomputed as the kernel of eta_X restricted to K[f].
template <Ambient A>
Sub<A> galois_group_via_unit(const Extension<A>& f)
{
  auto eta = reflect_to_xmod(f.source());
  auto k = as_object(f.kernel.carrier);
  return image(k.inclusion, kernel(compose(eta.projection.map, k.inclusion)));
}

/// (K[p] meet <P,P>) / <P, K[p]>
template <Ambient A>
HopfQuotient<A> hopf_h2(const Extension<A>& p)
{
  const auto& x = p.source();
  Sub<A> all = whole(x.X);
  Sub<A> num = meet(p.kernel.carrier, peiffer_commutator(x, all, all).carrier);
  Sub<A> den = peiffer_commutator(x, all, p.kernel.carrier).carrier;
  return make_hopf_quotient<A>(num, den, kProjectivityCaveat);
}

/// (K[q'] meet K[q] meet <Q,Q>) / (<K[q] meet K[q'], Q> join <K[q], K[q']>)
template <Ambient A>
HopfQuotient<A> hopf_h3(const DoubleExtension<A>& s)
{
  const auto& x = s.top();
  Sub<A> all = whole(x.X);
  Sub<A> kq = s.f.kernel.carrier, kq2 = s.g.kernel.carrier, km = meet(kq, kq2);
  Sub<A> num = meet(km, peiffer_commutator(x, all, all).carrier);
  Sub<A> den = join(peiffer_commutator(x, km, all).carrier, peiffer_commutator(x, kq, kq2).carrier);
  return make_hopf_quotient<A>(num, den, kProjectivityCaveat);
}

// ---------------------------------------------------------------------------
// Five-term sequence

template <Ambient A>
struct FiveTermSequence {
  std::vector<Subquotient<A>> nodes;
  /// maps[i]: nodes[i] -> nodes[i+1]; empty when not well defined.
  std::array<std::optional<Hom<A>>, 4> maps;
  bool well_defined = true;
  /// composites of consecutive maps, (1,2,3), (2,3,4), (3,4,5)
  std::array<bool, 3> composites_zero{true, true, true};
  bool exact_at_3 = true;
  bool exact_at_4 = true;
  bool exact_at_5 = true;
  std::string exact_at_1_2 = kNotChecked;

  bool holds() const
  {
    return well_defined && composites_zero[0] && composites_zero[1] && composites_zero[2] &&
           exact_at_3 && exact_at_4 && exact_at_5;
  }
};

/// For 0 -> K -f-> X -g-> Y -> 0 and an extension p: P -> X.
template <Ambient A>
FiveTermSequence<A> five_term(const PXMorphism<A>& f, const PXMorphism<A>& g,
                              const Extension<A>& p)
{
  if (!is_injective(f.map))
    throw Error(ErrorKind::NotShortExact, "f is not injective");
  if (!is_surjective(g.map))
    throw Error(ErrorKind::NotShortExact, "g is not surjective");
  if (!same_object(f.target.X, g.source.X) || !same_object(p.target().X, g.source.X))
    throw Error(ErrorKind::AmbientMismatch, "maps do not compose");
  if (!(image(f.map) == kernel(g.map)))
    throw Error(ErrorKind::NotShortExact, "image(f) != kernel(g)");

  const auto& P = p.source();
  const auto& X = g.source;
  Sub<A> all_p = whole(P.X), all_x = whole(X.X);
  Sub<A> pp = peiffer_commutator(P, all_p, all_p).carrier;
  Sub<A> kp = p.kernel.carrier;
  Sub<A> kgp = kernel(compose(g.map, p.map()));
  Sub<A> kx = peiffer_commutator(X, image(f.map), all_x).carrier;

  FiveTermSequence<A> s;
  s.nodes.push_back(make_subquotient<A>(meet(kp, pp), peiffer_commutator(P, all_p, kp).carrier));
  s.nodes.push_back(make_subquotient<A>(meet(kgp, pp), peiffer_commutator(P, all_p, kgp).carrier));
  s.nodes.push_back(make_subquotient<A>(whole(f.source.X), preimage(f.map, kx)));
  s.nodes.push_back(make_subquotient<A>(all_x, peiffer_commutator(X, all_x, all_x).carrier));
  Sub<A> all_y = whole(g.target.X);
  s.nodes.push_back(make_subquotient<A>(all_y, peiffer_commutator(g.target, all_y, all_y).carrier));

  Embedding<A, Hom<A>> k_in_x{f.source.X, f.map};
  std::array<Hom<A>, 4> phi{
      s.nodes[0].numerator_object.inclusion,
      corestrict(compose(p.map(), s.nodes[1].numerator_object.inclusion), k_in_x),
      compose(f.map, s.nodes[2].numerator_object.inclusion),
      compose(g.map, s.nodes[3].numerator_object.inclusion),
  };
  for (std::size_t i = 0; i < 4; ++i) {
    s.maps[i] = induced_map(s.nodes[i], s.nodes[i + 1], phi[i]);
    s.well_defined = s.well_defined && s.maps[i].has_value();
  }
  if (!s.well_defined)
    return s;
  for (std::size_t i = 0; i < 3; ++i)
    s.composites_zero[i] = is_zero(compose(*s.maps[i + 1], *s.maps[i]));
  s.exact_at_3 = image(*s.maps[1]) == kernel(*s.maps[2]);
  s.exact_at_4 = image(*s.maps[2]) == kernel(*s.maps[3]);
  s.exact_at_5 = is_surjective(*s.maps[3]);
  return s;
}

// ---------------------------------------------------------------------------
// Relative commutator

template <Ambient A>
struct RelativeCommutator {
  PXSubmodule<A> value;
  /// Normal closure of <H, K> equals [H, K]_Huq.
  bool agrees_with_peiffer = true;
};

template <Ambient A>
RelativeCommutator<A> relative_commutator(const PrecrossedModule<A>& a, const PXSubmodule<A>& h,
                                          const PXSubmodule<A>& k)
{
  for (const auto* m : {&h, &k}) {
    if (!is_normal(m->carrier) || !is_stable(a.action, m->carrier))
      throw Error(ErrorKind::NotNormal, "submodule is not normal", render(m->carrier));
    if (!has_zero_boundary(*m))
      throw Error(ErrorKind::NonzeroBoundary, "submodule has nonzero boundary", render(m->carrier));
  }
  Sub<A> huq = huq_commutator(h.carrier, k.carrier);
  Sub<A> peiffer = normal_closure(peiffer_commutator(a, h.carrier, k.carrier).carrier);
  return RelativeCommutator<A>{PXSubmodule<A>{a, huq, is_normal(huq)}, peiffer == huq};
}

} // namespace peiffer
