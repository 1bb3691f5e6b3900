// Q8 over the trivial group, divided by its center: a central extension
// that is not trivial, with Galois group of order 2.
#include <iostream>

#include <peiffer/galois.hpp>
#include <peiffer/enumerate.hpp>

int main()
{
  using namespace peiffer;
  const FiniteGroup& q8 = catalog_group("Q8");
  FiniteGroup one;
  auto p = make_pxmod<FiniteGroup>(zero_hom(q8, one), trivial_action(one, q8));

  const GroupElement gens[] = {1};
  Sub<FiniteGroup> center = generated_subobject(q8, gens, true);
  auto q = quotient_pxmod(p, center);
  auto f = make_extension(q.projection);

  std::cout << "crossed: " << is_crossed(p).holds << "\n";
  std::cout << "central: " << is_central(f).central << "\n";
  std::cout << "trivial: " << is_trivial_extension(f).trivial << "\n";
  std::cout << "galois group order: " << size_of(galois_group(f).value.numerator) << "\n";
  std::cout << "hopf H2 order: " << size_of(hopf_h2(f).value.object()) << "\n";
}
