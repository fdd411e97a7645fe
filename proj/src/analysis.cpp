#include "lrc/analysis.hpp"

namespace lrc {

Analysis analyze(const NormalizedCircuit& circuit, const Tolerances& tol) {
  Analysis a;
  a.circuit = circuit;
  a.pencil = monic_pencil(circuit);
  a.quartic = char_quartic(a.pencil);
  a.roots = quartic_roots(a.quartic, RootOptions{tol.roots, 50});
  a.branches = enumerate_branches(a.pencil, a.roots, BranchOptions{tol.subspace});
  return a;
}

}  // namespace lrc
