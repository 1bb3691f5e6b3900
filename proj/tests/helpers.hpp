#pragma once

// Conversions from library values to the raw forms the oracles read.

#include <peiffer/enumerate.hpp>

#include "oracle.hpp"

namespace testing_support {

inline oracle::Set to_set(const peiffer::Subgroup& s)
{
  return oracle::Set(s.elements.begin(), s.elements.end());
}

inline oracle::VecSet to_set(const peiffer::Subspace& s)
{
  oracle::VecSet out;
  for (const auto& v : peiffer::all_elements(s.ambient))
    if (s.contains(v))
      out.insert(oracle::Vec(v.begin(), v.end()));
  return out;
}

inline oracle::PX raw(const peiffer::PrecrossedModule<peiffer::FiniteGroup>& p)
{
  return oracle::PX{oracle::group_of(p.X), oracle::group_of(p.B),
                    std::vector<std::uint32_t>(p.boundary.map.begin(), p.boundary.map.end()),
                    std::vector<std::uint32_t>(p.action.table.begin(), p.action.table.end())};
}

inline oracle::Mat raw(const peiffer::fp::Matrix& m)
{
  oracle::Mat out;
  for (const auto& r : m)
    out.emplace_back(r.begin(), r.end());
  return out;
}

inline oracle::LiePX raw(const peiffer::PrecrossedModule<peiffer::LieAlgebra>& p)
{
  oracle::LiePX o{oracle::lie_of(p.X), oracle::lie_of(p.B), raw(p.boundary.matrix), {}};
  for (const auto& d : p.action.derivations)
    o.der.push_back(raw(d));
  return o;
}

inline std::vector<oracle::Vec> basis(const oracle::Lie& l)
{
  std::vector<oracle::Vec> out;
  for (std::size_t i = 0; i < l.n; ++i) {
    oracle::Vec v(l.n, 0);
    v[i] = 1;
    out.push_back(v);
  }
  return out;
}

} // namespace testing_support
