// Builds the K3 lattice 2(-E8) + 3H, scrambles its basis, and recovers the
// class from invariants alone. Then checks that the quartic surface lands on
// the same class.

#include <iostream>

#include "unimod/classification.hpp"
#include "unimod/io.hpp"
#include "unimod/lattice.hpp"
#include "unimod/surfaces.hpp"

int main() {
  using namespace unimod;
  const FormClass k3 = IndefiniteEven{-2, 3};
  const GramMatrix scrambled = random_unimodular_transform(canonical_gram(k3), 2024, 400);

  const FormInvariants inv = invariants(scrambled);
  std::cout << "scrambled K3 lattice: rank " << inv.rank << ", signature " << inv.signature << ", "
            << to_string(inv.parity) << ", det " << inv.determinant << '\n';
  std::cout << "first row: " << gram_to_json(scrambled).substr(0, 72) << "...\n";

  const FormClass recovered = classify_gram(scrambled, ClassificationMode::AbstractLattice);
  std::cout << "recovered class: " << to_string(recovered) << " = " << describe(recovered) << '\n';

  const FormClass quartic = intersection_form_class(hypersurface(4));
  std::cout << "quartic surface: " << to_string(quartic)
            << (quartic == recovered ? "  (same lattice)" : "  (different lattice)") << '\n';
  return quartic == recovered ? 0 : 1;
}
