#pragma once

// The theory-neutral contract. Higher modules are templates over an ambient
// type A and reach element-level operations through overloaded free
// functions plus the type map below.

#include <concepts>
#include <string_view>

#include "group.hpp"
#include "lie.hpp"

namespace peiffer {

template <class A>
struct ambient_traits;

template <>
struct ambient_traits<FiniteGroup> {
  using element = GroupElement;
  using subobject = Subgroup;
  using hom = GroupHom;
  using action = GroupAction;
  static constexpr std::string_view theory = "group";
};

template <>
struct ambient_traits<LieAlgebra> {
  using element = fp::Vector;
  using subobject = Subspace;
  using hom = LieHom;
  using action = LieAction;
  static constexpr std::string_view theory = "lie";
};

template <class A>
concept Ambient = requires(const A& a, const typename ambient_traits<A>::subobject& s,
                           const typename ambient_traits<A>::hom& f) {
  { whole(a) } -> std::same_as<typename ambient_traits<A>::subobject>;
  { meet(s, s) } -> std::same_as<typename ambient_traits<A>::subobject>;
  { kernel(f) } -> std::same_as<typename ambient_traits<A>::subobject>;
  { quotient_by(s) };
  { fingerprint(a) };
};

template <class A>
using Element = typename ambient_traits<A>::element;
template <class A>
using Sub = typename ambient_traits<A>::subobject;
template <class A>
using Hom = typename ambient_traits<A>::hom;
template <class A>
using Action = typename ambient_traits<A>::action;

/// Subobjects expose their ambient as `.ambient`.
template <class S>
const auto& ambient_of(const S& s) { return s.ambient; }

/// Size of the underlying set (p^dim for Lie algebras).
inline std::uint64_t size_of(const FiniteGroup& g) { return g.order(); }
inline std::uint64_t size_of(const LieAlgebra& l) { return cardinality(l); }
inline std::uint64_t size_of(const Subgroup& s) { return s.size(); }
inline std::uint64_t size_of(const Subspace& s) { return cardinality(s); }

} // namespace peiffer
