#pragma once

// Finite-dimensional Lie algebras over a prime field F_p, given by structure
// constants. Subobjects are row-reduced bases, homomorphisms are matrices
// (codomain rows x domain columns), actions are one derivation per basis
// element of the acting algebra.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "constructions.hpp"
#include "error.hpp"
#include "fp.hpp"

namespace peiffer {

using LieElement = fp::Vector;

inline bool is_supported_prime(long long p) { return p == 2 || p == 3 || p == 5 || p == 7; }

class LieAlgebra {
public:
  /// The zero algebra over F_2.
  LieAlgebra() : LieAlgebra(2, 0, {}, "0") {}

  int prime() const { return d_->prime; }
  std::size_t dim() const { return d_->dim; }
  const std::string& name() const { return d_->name; }

  /// [e_i, e_j] as a coordinate vector.
  const fp::Vector& structure(std::size_t i, std::size_t j) const
  { return d_->structure[i * d_->dim + j]; }

  fp::Vector bracket(const fp::Vector& x, const fp::Vector& y) const
  {
    std::size_t n = dim();
    fp::Vector r(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0)
        continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (y[j] == 0)
          continue;
        fp::axpy(r, (x[i] * y[j]) % prime(), structure(i, j), prime());
      }
    }
    return r;
  }

  bool same_as(const LieAlgebra& other) const { return d_ == other.d_; }
  const void* id() const { return d_.get(); }

  /// Validating constructor. `tensor[i][j]` lists the coordinates of
  /// [e_i, e_j]; entries are read modulo p.
  static LieAlgebra from_structure(long long p,
                                   const std::vector<std::vector<std::vector<long long>>>& tensor,
                                   std::string name = {})
  {
    if (!is_supported_prime(p))
      throw Error(ErrorKind::BadSpec, "prime must be one of 2, 3, 5, 7; got " + std::to_string(p));
    std::size_t n = tensor.size();
    if (n > limits::lie_dim_cap())
      throw Error(ErrorKind::CapExceeded, "dimension " + std::to_string(n) + " exceeds cap " +
                                              std::to_string(limits::lie_dim_cap()));
    std::vector<fp::Vector> s;
    for (std::size_t i = 0; i < n; ++i) {
      if (tensor[i].size() != n)
        throw Error(ErrorKind::BadSpec, "structure tensor row " + std::to_string(i) +
                                            " has wrong length");
      for (std::size_t j = 0; j < n; ++j) {
        if (tensor[i][j].size() != n)
          throw Error(ErrorKind::BadSpec, "structure vector has wrong length");
        fp::Vector v(n);
        for (std::size_t k = 0; k < n; ++k)
          v[k] = fp::reduce(tensor[i][j][k], static_cast<int>(p));
        s.push_back(std::move(v));
      }
    }
    LieAlgebra l(static_cast<int>(p), n, std::move(s), std::move(name));
    l.check_axioms();
    return l;
  }

  /// Internal constructor for algebras produced by the library itself.
  static LieAlgebra from_flat(int p, std::size_t n, std::vector<fp::Vector> structure,
                              std::string name = {})
  {
    if (n > limits::lie_dim_cap())
      throw Error(ErrorKind::CapExceeded, "dimension " + std::to_string(n) + " exceeds cap " +
                                              std::to_string(limits::lie_dim_cap()));
    return LieAlgebra(p, n, std::move(structure), std::move(name));
  }

private:
  struct Data {
    int prime;
    std::size_t dim;
    std::vector<fp::Vector> structure;
    std::string name;
  };

  LieAlgebra(int p, std::size_t n, std::vector<fp::Vector> s, std::string name)
  : d_(std::make_shared<const Data>(Data{p, n, std::move(s), std::move(name)}))
  {}

  void check_axioms() const
  {
    std::size_t n = dim();
    int p = prime();
    for (std::size_t i = 0; i < n; ++i) {
      if (!fp::is_zero(structure(i, i)))
        throw Error(ErrorKind::AxiomViolation, "[e_i, e_i] != 0", std::to_string(i));
      for (std::size_t j = 0; j < n; ++j)
        if (!fp::is_zero(fp::add(structure(i, j), structure(j, i), p)))
          throw Error(ErrorKind::AxiomViolation, "antisymmetry fails",
                      "(" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          auto ei = fp::unit(n, i), ej = fp::unit(n, j), ek = fp::unit(n, k);
          fp::Vector s = bracket(ei, bracket(ej, ek));
          s = fp::add(s, bracket(ej, bracket(ek, ei)), p);
          s = fp::add(s, bracket(ek, bracket(ei, ej)), p);
          if (!fp::is_zero(s))
            throw Error(ErrorKind::AxiomViolation, "Jacobi identity fails",
                        "(" + std::to_string(i) + "," + std::to_string(j) + "," +
                            std::to_string(k) + ")");
        }
  }

  std::shared_ptr<const Data> d_;
};

inline bool same_object(const LieAlgebra& a, const LieAlgebra& b) { return a.same_as(b); }

inline std::uint64_t cardinality(const LieAlgebra& l) { return fp::span_size(l.dim(), l.prime()); }

inline LieAlgebra abelian_lie_algebra(int p, std::size_t n)
{
  return LieAlgebra::from_flat(p, n, std::vector<fp::Vector>(n * n, fp::zero(n)),
                               "F" + std::to_string(p) + "^" + std::to_string(n));
}

// ---------------------------------------------------------------------------
// Subspaces

struct Subspace {
  LieAlgebra ambient;
  fp::Echelon basis;

  std::size_t dim() const { return basis.rank(); }
  bool contains(const fp::Vector& v) const { return fp::in_span(basis, v, ambient.prime()); }
};

inline bool operator==(const Subspace& a, const Subspace& b)
{
  return a.ambient.same_as(b.ambient) && a.basis.rows == b.basis.rows;
}

inline std::uint64_t cardinality(const Subspace& s)
{
  return fp::span_size(s.dim(), s.ambient.prime());
}

namespace detail {

inline void require_same(const LieAlgebra& a, const LieAlgebra& b)
{
  if (!a.same_as(b))
    throw Error(ErrorKind::AmbientMismatch, "subobjects of different Lie algebras");
}

inline Subspace span_of(const LieAlgebra& l, fp::Matrix rows)
{
  return Subspace{l, fp::echelon(std::move(rows), l.dim(), l.prime())};
}

} // namespace detail

inline Subspace whole(const LieAlgebra& l)
{
  return detail::span_of(l, fp::identity_matrix(l.dim()));
}

inline Subspace trivial_subobject(const LieAlgebra& l) { return detail::span_of(l, {}); }

inline bool is_trivial(const Subspace& s) { return s.dim() == 0; }
inline bool is_whole(const Subspace& s) { return s.dim() == s.ambient.dim(); }

inline bool includes(const Subspace& big, const Subspace& small)
{
  detail::require_same(big.ambient, small.ambient);
  for (const auto& r : small.basis.rows)
    if (!big.contains(r))
      return false;
  return true;
}

/// Smallest subalgebra (normal=false) or ideal (normal=true) containing gens.
inline Subspace generated_subobject(const LieAlgebra& l, std::span<const fp::Vector> gens,
                                    bool normal)
{
  std::size_t n = l.dim();
  for (const auto& g : gens)
    if (g.size() != n)
      throw Error(ErrorKind::BadSpec, "vector has wrong length");
  fp::Matrix rows(gens.begin(), gens.end());
  Subspace s = detail::span_of(l, rows);
  for (;;) {
    fp::Matrix extra;
    const fp::Matrix& b = s.basis.rows;
    if (normal) {
      for (std::size_t i = 0; i < n; ++i)
        for (const auto& v : b) {
          auto w = l.bracket(fp::unit(n, i), v);
          if (!s.contains(w))
            extra.push_back(std::move(w));
        }
    } else {
      for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i + 1; j < b.size(); ++j) {
          auto w = l.bracket(b[i], b[j]);
          if (!s.contains(w))
            extra.push_back(std::move(w));
        }
    }
    if (extra.empty())
      return s;
    fp::Matrix all = s.basis.rows;
    all.insert(all.end(), extra.begin(), extra.end());
    s = detail::span_of(l, std::move(all));
  }
}

inline bool is_normal(const Subspace& s)
{
  const LieAlgebra& l = s.ambient;
  for (std::size_t i = 0; i < l.dim(); ++i)
    for (const auto& v : s.basis.rows)
      if (!s.contains(l.bracket(fp::unit(l.dim(), i), v)))
        return false;
  return true;
}

inline Subspace normal_closure(const Subspace& s)
{
  return generated_subobject(s.ambient, s.basis.rows, true);
}

inline Subspace meet(const Subspace& m, const Subspace& n)
{
  detail::require_same(m.ambient, n.ambient);
  return detail::span_of(m.ambient,
                         fp::intersect(m.basis.rows, n.basis.rows, m.ambient.dim(),
                                       m.ambient.prime()));
}

inline Subspace join(const Subspace& m, const Subspace& n)
{
  detail::require_same(m.ambient, n.ambient);
  fp::Matrix rows = m.basis.rows;
  rows.insert(rows.end(), n.basis.rows.begin(), n.basis.rows.end());
  return generated_subobject(m.ambient, rows, false);
}

/// Subalgebra generated by all brackets [m, n].
inline Subspace huq_commutator(const Subspace& m, const Subspace& n)
{
  detail::require_same(m.ambient, n.ambient);
  fp::Matrix gens;
  for (const auto& a : m.basis.rows)
    for (const auto& b : n.basis.rows)
      gens.push_back(m.ambient.bracket(a, b));
  return generated_subobject(m.ambient, gens, false);
}

/// Bilinear formulas only need a basis.
inline const fp::Matrix& formula_elements(const Subspace& s) { return s.basis.rows; }
inline const fp::Matrix& small_generating_set(const Subspace& s) { return s.basis.rows; }

// ---------------------------------------------------------------------------
// Homomorphisms

struct LieHom {
  LieAlgebra domain;
  LieAlgebra codomain;
  fp::Matrix matrix;

  fp::Vector operator()(const fp::Vector& x) const
  { return fp::apply(matrix, x, domain.prime()); }
};

inline bool operator==(const LieHom& a, const LieHom& b)
{
  return a.domain.same_as(b.domain) && a.codomain.same_as(b.codomain) && a.matrix == b.matrix;
}

inline fp::Vector apply(const LieHom& f, const fp::Vector& x) { return f(x); }

inline std::optional<std::string> hom_violation(const LieHom& f)
{
  const LieAlgebra &a = f.domain, &b = f.codomain;
  if (f.matrix.size() != b.dim())
    return "matrix has wrong number of rows";
  for (const auto& row : f.matrix)
    if (row.size() != a.dim())
      return "matrix has wrong number of columns";
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i + 1; j < a.dim(); ++j) {
      auto lhs = f(a.structure(i, j));
      auto rhs = b.bracket(f(fp::unit(a.dim(), i)), f(fp::unit(a.dim(), j)));
      if (lhs != rhs)
        return "bracket not preserved on (" + std::to_string(i) + "," + std::to_string(j) + ")";
    }
  return std::nullopt;
}

inline LieHom make_hom(const LieAlgebra& dom, const LieAlgebra& cod, fp::Matrix m)
{
  if (dom.prime() != cod.prime())
    throw Error(ErrorKind::BadSpec, "homomorphism between different characteristics");
  for (auto& row : m)
    for (auto& x : row)
      x = fp::reduce(x, dom.prime());
  LieHom f{dom, cod, std::move(m)};
  if (auto why = hom_violation(f))
    throw Error(ErrorKind::AxiomViolation, "map is not a Lie homomorphism: " + *why);
  return f;
}

inline LieHom identity_hom(const LieAlgebra& l)
{
  return LieHom{l, l, fp::identity_matrix(l.dim())};
}

inline LieHom zero_hom(const LieAlgebra& dom, const LieAlgebra& cod)
{
  return LieHom{dom, cod, fp::zero_matrix(cod.dim(), dom.dim())};
}

inline LieHom compose(const LieHom& g, const LieHom& f)
{
  detail::require_same(f.codomain, g.domain);
  return LieHom{f.domain, g.codomain,
                fp::multiply(g.matrix, f.matrix, f.codomain.dim(), f.domain.dim(),
                             f.domain.prime())};
}

inline Subspace image(const LieHom& f, const Subspace& s)
{
  detail::require_same(f.domain, s.ambient);
  fp::Matrix rows;
  for (const auto& r : s.basis.rows)
    rows.push_back(f(r));
  return detail::span_of(f.codomain, std::move(rows));
}

inline Subspace image(const LieHom& f) { return image(f, whole(f.domain)); }

inline Subspace preimage(const LieHom& f, const Subspace& s)
{
  detail::require_same(f.codomain, s.ambient);
  std::size_t n = f.domain.dim();
  int p = f.domain.prime();
  fp::Matrix residues = fp::zero_matrix(f.codomain.dim(), n);
  for (std::size_t j = 0; j < n; ++j)
    fp::set_column(residues, j, fp::residue(s.basis, fp::column(f.matrix, j), p));
  return detail::span_of(f.domain, fp::nullspace(residues, n, p));
}

inline Subspace kernel(const LieHom& f) { return preimage(f, trivial_subobject(f.codomain)); }

inline bool is_surjective(const LieHom& f) { return is_whole(image(f)); }
inline bool is_injective(const LieHom& f) { return is_trivial(kernel(f)); }
inline bool is_zero(const LieHom& f)
{
  for (const auto& r : f.matrix)
    if (!fp::is_zero(r))
      return false;
  return true;
}

using LieQuotient = Quotient<LieAlgebra, LieHom>;
using LieEmbedding = Embedding<LieAlgebra, LieHom>;
using LieProduct = Product<LieAlgebra, LieHom>;
using LieFiberedProduct = FiberedProduct<LieAlgebra, LieHom>;
using LieSemidirect = Semidirect<LieAlgebra, LieHom>;

/// The quotient basis is the images of the standard basis vectors at the
/// non-pivot columns of the ideal's row-reduced basis.
inline LieQuotient quotient_by(const Subspace& ideal)
{
  if (!is_normal(ideal))
    throw Error(ErrorKind::NotNormal, "quotient by a subspace that is not an ideal");
  const LieAlgebra& l = ideal.ambient;
  std::size_t n = l.dim();
  int p = l.prime();
  std::vector<bool> pivot(n, false);
  for (auto c : ideal.basis.pivots)
    pivot[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < n; ++c)
    if (!pivot[c])
      free.push_back(c);
  std::size_t m = free.size();
  auto project = [&](const fp::Vector& v) {
    fp::Vector r = fp::residue(ideal.basis, v, p);
    fp::Vector out(m);
    for (std::size_t a = 0; a < m; ++a)
      out[a] = r[free[a]];
    return out;
  };
  fp::Matrix proj = fp::zero_matrix(m, n);
  for (std::size_t j = 0; j < n; ++j)
    fp::set_column(proj, j, project(fp::unit(n, j)));
  std::vector<fp::Vector> structure;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      structure.push_back(project(l.structure(free[a], free[b])));
  LieAlgebra q = LieAlgebra::from_flat(p, m, std::move(structure));
  return {q, LieHom{l, q, std::move(proj)}};
}

/// Basis of the embedded algebra is the row-reduced basis of `s`.
inline LieEmbedding as_object(const Subspace& s)
{
  const LieAlgebra& l = s.ambient;
  std::size_t k = s.dim();
  std::vector<fp::Vector> structure;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      structure.push_back(fp::coordinates(s.basis, l.bracket(s.basis.rows[a], s.basis.rows[b])));
  LieAlgebra obj = LieAlgebra::from_flat(l.prime(), k, std::move(structure));
  fp::Matrix incl = fp::zero_matrix(l.dim(), k);
  for (std::size_t a = 0; a < k; ++a)
    fp::set_column(incl, a, s.basis.rows[a]);
  return {obj, LieHom{obj, l, std::move(incl)}};
}

inline LieHom corestrict(const LieHom& f, const LieEmbedding& e)
{
  detail::require_same(f.codomain, e.inclusion.codomain);
  std::size_t k = e.object.dim();
  int p = f.domain.prime();
  LieHom r{f.domain, e.object, fp::zero_matrix(k, f.domain.dim())};
  for (std::size_t j = 0; j < f.domain.dim(); ++j) {
    fp::Vector x;
    if (!fp::solve(e.inclusion.matrix, k, fp::column(f.matrix, j), x, p))
      throw Error(ErrorKind::BadSpec, "map does not land in the subobject", std::to_string(j));
    fp::set_column(r.matrix, j, x);
  }
  return r;
}

inline std::optional<LieHom> factor_through(const LieHom& target, const LieHom& epi)
{
  detail::require_same(target.domain, epi.domain);
  std::size_t m = epi.codomain.dim(), n = epi.domain.dim();
  int p = epi.domain.prime();
  LieHom h{epi.codomain, target.codomain, fp::zero_matrix(target.codomain.dim(), m)};
  for (std::size_t k = 0; k < m; ++k) {
    fp::Vector x;
    if (!fp::solve(epi.matrix, n, fp::unit(m, k), x, p))
      throw Error(ErrorKind::NotSurjective, "factor_through needs a surjection");
    fp::set_column(h.matrix, k, target(x));
  }
  if (compose(h, epi).matrix != target.matrix)
    return std::nullopt;
  return h;
}

/// Basis: that of a followed by that of c.
inline LieProduct direct_product(const LieAlgebra& a, const LieAlgebra& c)
{
  if (a.prime() != c.prime())
    throw Error(ErrorKind::BadSpec, "product of algebras over different fields");
  std::size_t na = a.dim(), nc = c.dim(), n = na + nc;
  std::vector<fp::Vector> structure(n * n, fp::zero(n));
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < na; ++k)
        structure[i * n + j][k] = a.structure(i, j)[k];
  for (std::size_t i = 0; i < nc; ++i)
    for (std::size_t j = 0; j < nc; ++j)
      for (std::size_t k = 0; k < nc; ++k)
        structure[(na + i) * n + na + j][na + k] = c.structure(i, j)[k];
  LieAlgebra p = LieAlgebra::from_flat(a.prime(), n, std::move(structure));
  fp::Matrix p1 = fp::zero_matrix(na, n), p2 = fp::zero_matrix(nc, n);
  for (std::size_t i = 0; i < na; ++i)
    p1[i][i] = 1;
  for (std::size_t i = 0; i < nc; ++i)
    p2[i][na + i] = 1;
  return {p, LieHom{p, a, std::move(p1)}, LieHom{p, c, std::move(p2)}};
}

inline LieHom pair_into(const LieProduct& p, const LieHom& f, const LieHom& g)
{
  detail::require_same(f.domain, g.domain);
  fp::Matrix m = f.matrix;
  m.insert(m.end(), g.matrix.begin(), g.matrix.end());
  return LieHom{f.domain, p.object, std::move(m)};
}

/// {x : f x = g x}
inline Subspace equalizer(const LieHom& f, const LieHom& g)
{
  detail::require_same(f.domain, g.domain);
  int p = f.domain.prime();
  fp::Matrix diff = f.matrix;
  for (std::size_t r = 0; r < diff.size(); ++r)
    diff[r] = fp::sub(diff[r], g.matrix[r], p);
  return detail::span_of(f.domain, fp::nullspace(diff, f.domain.dim(), p));
}

inline LieFiberedProduct fibered_product(const LieHom& h, const LieHom& j)
{
  detail::require_same(h.codomain, j.codomain);
  LieProduct prod = direct_product(h.domain, j.domain);
  std::size_t na = h.domain.dim(), n = prod.object.dim();
  int p = prod.object.prime();
  fp::Matrix diff = fp::zero_matrix(h.codomain.dim(), n);
  for (std::size_t r = 0; r < h.codomain.dim(); ++r) {
    for (std::size_t c = 0; c < na; ++c)
      diff[r][c] = h.matrix[r][c];
    for (std::size_t c = 0; c < j.domain.dim(); ++c)
      diff[r][na + c] = fp::reduce(-j.matrix[r][c], p);
  }
  Subspace s = detail::span_of(prod.object, fp::nullspace(diff, n, p));
  LieEmbedding e = as_object(s);
  return {e.object, compose(prod.first, e.inclusion), compose(prod.second, e.inclusion)};
}

// ---------------------------------------------------------------------------
// Actions

/// derivations[k] is the derivation by which the k-th basis vector of
/// `actor` acts on `acted`.
struct LieAction {
  LieAlgebra actor;
  LieAlgebra acted;
  std::vector<fp::Matrix> derivations;

  fp::Matrix derivation(const fp::Vector& b) const
  {
    std::size_t n = acted.dim();
    int p = acted.prime();
    fp::Matrix d = fp::zero_matrix(n, n);
    for (std::size_t k = 0; k < b.size(); ++k)
      if (b[k] != 0)
        for (std::size_t i = 0; i < n; ++i)
          fp::axpy(d[i], b[k], derivations[k][i], p);
    return d;
  }

  fp::Vector operator()(const fp::Vector& b, const fp::Vector& x) const
  { return fp::apply(derivation(b), x, acted.prime()); }
};

inline fp::Vector act(const LieAction& a, const fp::Vector& b, const fp::Vector& x) { return a(b, x); }

inline bool is_derivation(const LieAlgebra& l, const fp::Matrix& d)
{
  std::size_t n = l.dim();
  int p = l.prime();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      auto ei = fp::unit(n, i), ej = fp::unit(n, j);
      auto lhs = fp::apply(d, l.structure(i, j), p);
      auto rhs = fp::add(l.bracket(fp::apply(d, ei, p), ej), l.bracket(ei, fp::apply(d, ej, p)), p);
      if (lhs != rhs)
        return false;
    }
  return true;
}

inline fp::Matrix matrix_commutator(const fp::Matrix& a, const fp::Matrix& b, std::size_t n, int p)
{
  fp::Matrix ab = fp::multiply(a, b, n, n, p), ba = fp::multiply(b, a, n, n, p);
  for (std::size_t i = 0; i < n; ++i)
    ab[i] = fp::sub(ab[i], ba[i], p);
  return ab;
}

inline std::optional<std::string> action_violation(const LieAction& a)
{
  std::size_t nb = a.actor.dim(), nx = a.acted.dim();
  int p = a.acted.prime();
  if (a.actor.prime() != p)
    return "actor and acted algebra over different fields";
  if (a.derivations.size() != nb)
    return "need one derivation per basis vector of the actor";
  for (const auto& d : a.derivations) {
    if (d.size() != nx)
      return "derivation matrix has wrong size";
    for (const auto& r : d)
      if (r.size() != nx)
        return "derivation matrix has wrong size";
  }
  for (std::size_t k = 0; k < nb; ++k)
    if (!is_derivation(a.acted, a.derivations[k]))
      return "slice " + std::to_string(k) + " is not a derivation";
  for (std::size_t k = 0; k < nb; ++k)
    for (std::size_t l = k + 1; l < nb; ++l)
      if (a.derivation(a.actor.structure(k, l)) !=
          matrix_commutator(a.derivations[k], a.derivations[l], nx, p))
        return "B -> Der(X) is not a Lie homomorphism at (" + std::to_string(k) + "," +
               std::to_string(l) + ")";
  return std::nullopt;
}

inline LieAction make_action(const LieAlgebra& actor, const LieAlgebra& acted,
                             std::vector<fp::Matrix> derivations)
{
  for (auto& d : derivations)
    for (auto& r : d)
      for (auto& x : r)
        x = fp::reduce(x, acted.prime());
  LieAction a{actor, acted, std::move(derivations)};
  if (auto why = action_violation(a))
    throw Error(ErrorKind::ActionInvalid, *why);
  return a;
}

inline LieAction trivial_action(const LieAlgebra& actor, const LieAlgebra& acted)
{
  return LieAction{actor, acted,
                   std::vector<fp::Matrix>(actor.dim(), fp::zero_matrix(acted.dim(), acted.dim()))};
}

/// ad: e_k acts by [e_k, -].
inline LieAction conjugation_action(const LieAlgebra& l)
{
  std::size_t n = l.dim();
  std::vector<fp::Matrix> ds;
  for (std::size_t k = 0; k < n; ++k) {
    fp::Matrix d = fp::zero_matrix(n, n);
    for (std::size_t j = 0; j < n; ++j)
      fp::set_column(d, j, l.structure(k, j));
    ds.push_back(std::move(d));
  }
  return LieAction{l, l, std::move(ds)};
}

inline LieAction pullback_action(const LieAction& xi, const LieHom& f)
{
  detail::require_same(f.codomain, xi.actor);
  std::vector<fp::Matrix> ds;
  for (std::size_t a = 0; a < f.domain.dim(); ++a)
    ds.push_back(xi.derivation(fp::column(f.matrix, a)));
  return LieAction{f.domain, xi.acted, std::move(ds)};
}

inline bool is_stable(const LieAction& xi, const Subspace& s)
{
  detail::require_same(xi.acted, s.ambient);
  int p = s.ambient.prime();
  for (const auto& d : xi.derivations)
    for (const auto& v : s.basis.rows)
      if (!s.contains(fp::apply(d, v, p)))
        return false;
  return true;
}

inline Subspace stable_closure(const LieAction& xi, const Subspace& s, bool normal)
{
  Subspace cur = s;
  int p = s.ambient.prime();
  for (;;) {
    fp::Matrix gens = cur.basis.rows;
    for (const auto& d : xi.derivations)
      for (const auto& v : cur.basis.rows)
        gens.push_back(fp::apply(d, v, p));
    Subspace next = generated_subobject(cur.ambient, gens, normal);
    if (next == cur)
      return cur;
    cur = std::move(next);
  }
}

inline LieAction restrict_action(const LieAction& xi, const LieEmbedding& e)
{
  detail::require_same(xi.acted, e.inclusion.codomain);
  std::size_t k = e.object.dim();
  int p = xi.acted.prime();
  std::vector<fp::Matrix> ds;
  for (const auto& d : xi.derivations) {
    fp::Matrix r = fp::zero_matrix(k, k);
    for (std::size_t a = 0; a < k; ++a) {
      fp::Vector x;
      if (!fp::solve(e.inclusion.matrix, k, fp::apply(d, fp::column(e.inclusion.matrix, a), p), x,
                     p))
        throw Error(ErrorKind::StabilityViolation, "subobject is not stable under the action");
      fp::set_column(r, a, x);
    }
    ds.push_back(std::move(r));
  }
  return LieAction{xi.actor, e.object, std::move(ds)};
}

inline LieAction induced_action(const LieAction& xi, const LieQuotient& q)
{
  detail::require_same(xi.acted, q.projection.domain);
  std::size_t m = q.object.dim(), n = xi.acted.dim();
  int p = xi.acted.prime();
  std::vector<fp::Vector> lifts;
  for (std::size_t c = 0; c < m; ++c) {
    fp::Vector x;
    fp::solve(q.projection.matrix, n, fp::unit(m, c), x, p);
    lifts.push_back(std::move(x));
  }
  std::vector<fp::Matrix> ds;
  for (const auto& d : xi.derivations) {
    fp::Matrix r = fp::zero_matrix(m, m);
    for (std::size_t c = 0; c < m; ++c)
      fp::set_column(r, c, q.projection(fp::apply(d, lifts[c], p)));
    ds.push_back(std::move(r));
  }
  return LieAction{xi.actor, q.object, std::move(ds)};
}

inline LieAction product_action(const LieAction& a1, const LieAction& a2, const LieProduct& prod)
{
  detail::require_same(a1.actor, a2.actor);
  std::size_t na = a1.acted.dim(), nc = a2.acted.dim(), n = na + nc;
  std::vector<fp::Matrix> ds;
  for (std::size_t k = 0; k < a1.actor.dim(); ++k) {
    fp::Matrix d = fp::zero_matrix(n, n);
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t j = 0; j < na; ++j)
        d[i][j] = a1.derivations[k][i][j];
    for (std::size_t i = 0; i < nc; ++i)
      for (std::size_t j = 0; j < nc; ++j)
        d[na + i][na + j] = a2.derivations[k][i][j];
    ds.push_back(std::move(d));
  }
  return LieAction{a1.actor, prod.object, std::move(ds)};
}

/// X (+) B with [(x,b),(x',b')] = ([x,x'] + b.x' - b'.x, [b,b']); basis of
/// X first, then B.
inline LieSemidirect semidirect_product(const LieAction& xi)
{
  if (auto why = action_violation(xi))
    throw Error(ErrorKind::ActionInvalid, *why);
  const LieAlgebra &x = xi.acted, &b = xi.actor;
  std::size_t nx = x.dim(), nb = b.dim(), n = nx + nb;
  int p = x.prime();
  if (n > limits::lie_dim_cap())
    throw Error(ErrorKind::CapExceeded, "semidirect product of dimension " + std::to_string(n));
  std::vector<fp::Vector> structure(n * n, fp::zero(n));
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < nx; ++j)
      for (std::size_t k = 0; k < nx; ++k)
        structure[i * n + j][k] = x.structure(i, j)[k];
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t k = 0; k < nb; ++k) {
      fp::Vector dki = fp::column(xi.derivations[k], i);
      for (std::size_t r = 0; r < nx; ++r) {
        structure[(nx + k) * n + i][r] = dki[r];
        structure[i * n + nx + k][r] = fp::reduce(-dki[r], p);
      }
    }
  for (std::size_t k = 0; k < nb; ++k)
    for (std::size_t l = 0; l < nb; ++l)
      for (std::size_t r = 0; r < nb; ++r)
        structure[(nx + k) * n + nx + l][nx + r] = b.structure(k, l)[r];
  LieAlgebra s = LieAlgebra::from_flat(p, n, std::move(structure));
  fp::Matrix d = fp::zero_matrix(nb, n), e = fp::zero_matrix(n, nb), j = fp::zero_matrix(n, nx);
  for (std::size_t k = 0; k < nb; ++k) {
    d[k][nx + k] = 1;
    e[nx + k][k] = 1;
  }
  for (std::size_t i = 0; i < nx; ++i)
    j[i][i] = 1;
  return {s, LieHom{s, b, std::move(d)}, LieHom{b, s, std::move(e)}, LieHom{x, s, std::move(j)}};
}

inline LieHom semidirect_map(const LieSemidirect& src, const LieSemidirect& dst, const LieHom& f)
{
  std::size_t nx = src.inclusion.domain.dim(), ny = dst.inclusion.domain.dim();
  std::size_t nb = src.section.domain.dim();
  fp::Matrix m = fp::zero_matrix(ny + nb, nx + nb);
  for (std::size_t i = 0; i < ny; ++i)
    for (std::size_t j = 0; j < nx; ++j)
      m[i][j] = f.matrix[i][j];
  for (std::size_t k = 0; k < nb; ++k)
    m[ny + k][nx + k] = 1;
  return LieHom{src.object, dst.object, std::move(m)};
}

// ---------------------------------------------------------------------------
// Element formulas used by precrossed modules

inline fp::Vector neutral(const LieAlgebra& l) { return fp::zero(l.dim()); }

/// First basis pair (k, i) with d(xi(e_k) e_i) != [e_k, d(e_i)].
inline std::optional<std::string> equivariance_violation(const LieHom& d, const LieAction& xi)
{
  const LieAlgebra& b = xi.actor;
  std::size_t nx = xi.acted.dim();
  int p = b.prime();
  for (std::size_t k = 0; k < b.dim(); ++k)
    for (std::size_t i = 0; i < nx; ++i) {
      auto ei = fp::unit(nx, i);
      if (d(fp::apply(xi.derivations[k], ei, p)) != b.bracket(fp::unit(b.dim(), k), d(ei)))
        return "(e" + std::to_string(k) + ",e" + std::to_string(i) + ")";
    }
  return std::nullopt;
}

inline std::optional<std::string> morphism_equivariance_violation(const LieHom& f,
                                                                  const LieAction& src,
                                                                  const LieAction& dst)
{
  std::size_t nx = src.acted.dim();
  int p = f.domain.prime();
  for (std::size_t k = 0; k < src.actor.dim(); ++k)
    for (std::size_t i = 0; i < nx; ++i) {
      auto ei = fp::unit(nx, i);
      if (f(fp::apply(src.derivations[k], ei, p)) != fp::apply(dst.derivations[k], f(ei), p))
        return "(e" + std::to_string(k) + ",e" + std::to_string(i) + ")";
    }
  return std::nullopt;
}

/// [m, n] - xi(d m)(n)
inline fp::Vector peiffer_element(const LieHom& d, const LieAction& xi, const fp::Vector& m,
                                  const fp::Vector& n)
{
  int p = xi.acted.prime();
  return fp::sub(xi.acted.bracket(m, n), xi(d(m), n), p);
}

/// Peiffer commutators of Lie algebras are generated ideals.
inline Subspace peiffer_closure(const LieAlgebra& x, std::span<const fp::Vector> gens)
{
  return generated_subobject(x, gens, true);
}

/// c = [d | 1_B] on X (+) B.
inline LieHom semidirect_codomain_map(const LieSemidirect& s, const LieHom& d)
{
  std::size_t nx = d.domain.dim(), nb = d.codomain.dim();
  fp::Matrix c = fp::zero_matrix(nb, nx + nb);
  for (std::size_t r = 0; r < nb; ++r) {
    for (std::size_t j = 0; j < nx; ++j)
      c[r][j] = d.matrix[r][j];
    c[r][nx + r] = 1;
  }
  return LieHom{s.object, d.codomain, std::move(c)};
}

// ---------------------------------------------------------------------------
// Reporting

inline std::string render(const LieAlgebra&, const fp::Vector& v)
{
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < v.size(); ++i)
    out << (i ? "," : "") << v[i];
  out << ")";
  return out.str();
}

inline std::string render(const Subspace& s)
{
  std::ostringstream out;
  out << "span{";
  for (std::size_t i = 0; i < s.basis.rows.size(); ++i)
    out << (i ? "," : "") << render(s.ambient, s.basis.rows[i]);
  out << "}";
  return out.str();
}

inline bool is_abelian(const LieAlgebra& l)
{
  for (std::size_t i = 0; i < l.dim(); ++i)
    for (std::size_t j = 0; j < l.dim(); ++j)
      if (!fp::is_zero(l.structure(i, j)))
        return false;
  return true;
}

/// Abelian algebras are named F_p^d; otherwise dimension, derived algebra
/// dimension and center dimension.
inline std::string fingerprint(const LieAlgebra& l)
{
  std::ostringstream out;
  if (is_abelian(l)) {
    out << "F" << l.prime() << "^" << l.dim();
    return out.str();
  }
  Subspace all = whole(l);
  std::size_t derived = huq_commutator(all, all).dim();
  // center = common kernel of all ad(e_k)
  std::size_t n = l.dim();
  fp::Matrix stacked;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t r = 0; r < n; ++r) {
      fp::Vector row(n);
      for (std::size_t j = 0; j < n; ++j)
        row[j] = l.structure(k, j)[r];
      stacked.push_back(std::move(row));
    }
  std::size_t center = fp::nullspace(stacked, n, l.prime()).size();
  out << "nonabelian F" << l.prime() << " dim=" << n << " derived=" << derived
      << " center=" << center;
  // Lower central and derived series dimensions.
  auto series = [&](bool lower) {
    std::vector<std::size_t> dims;
    Subspace cur = huq_commutator(all, all);
    while (true) {
      dims.push_back(cur.dim());
      Subspace next = huq_commutator(lower ? all : cur, cur);
      if (next.dim() == cur.dim())
        return dims;
      cur = next;
    }
  };
  for (bool lower : {true, false}) {
    auto dims = series(lower);
    out << (lower ? " lcs=[" : " ds=[");
    for (std::size_t i = 0; i < dims.size(); ++i)
      out << (i ? "," : "") << dims[i];
    out << "]";
  }
  return out.str();
}

} // namespace peiffer
