#pragma once

// Result bundles shared by both ambient theories. Each carries the object it
// builds together with the structure maps that characterise it.

namespace peiffer {

/// A / N together with the projection A -> A / N.
template <class Object, class Hom>
struct Quotient {
  Object object;
  Hom projection;
};

/// A subobject promoted to an object, with its inclusion into the ambient.
template <class Object, class Hom>
struct Embedding {
  Object object;
  Hom inclusion;
};

/// A x C with both projections.
template <class Object, class Hom>
struct Product {
  Object object;
  Hom first;
  Hom second;
};

/// Y x_W Z for a cospan Y -> W <- Z, with the two projections.
template <class Object, class Hom>
struct FiberedProduct {
  Object object;
  Hom first;
  Hom second;
};

/// X semidirect B: `projection` is d, `section` is e, `inclusion` is j_X, so
/// that d e = 1_B and ker d = j_X(X).
template <class Object, class Hom>
struct Semidirect {
  Object object;
  Hom projection;
  Hom section;
  Hom inclusion;
};

} // namespace peiffer
