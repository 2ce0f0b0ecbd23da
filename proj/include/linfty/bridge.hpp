#pragma once

#include "linfty/poisson.hpp"
#include "linfty/rota_baxter.hpp"

namespace linfty {

/// Shared setting for the correspondence between r-matrices and
/// Rota-Baxter operators: the Poisson side on g and the derivation side
/// on (g (+) g*[n-2])[1]. Dual basis symbols carry a trailing '*'.
struct BridgeContext {
  PoissonCtxPtr pctx;
  SpacePtr vdual;  // g*[n-2]
  std::shared_ptr<RbContext> rb;

  BridgeContext(SpacePtr g, int n, int wcap, int cap);
  int n() const { return pctx->n; }
};

/// The hamiltonian vector field of a polynomial of weight >= 2, read as a
/// derivation family on (g (+) g*[n-2])[1]: the component on the
/// monomial of {p, s} outputs the dual generator of s. A map of graded
/// Lie algebras (tested).
DerivationRep hamiltonian(const BridgeContext& bc, const PoissonPoly& p);

/// H(D_n(m)) decomposed as an HLR pair (m, coadjoint action). Throws when
/// the image escapes the stored blocks (only possible when m has a
/// nonzero differential, whose dual falls outside Sym_{>=1} g* (x) gl).
HLRPair coadjoint(const BridgeContext& bc, const LInftyStructure& m);

struct RmatrixToRbResult {
  RBOperator t;
  RbOperatorReport certificate;  // check_rb_operator against the coadjoint pair
};

/// T = H(r) in the block Hom(S^k(g*[n-1]), g[1]); requires check_rmatrix
/// to pass first.
RmatrixToRbResult rmatrix_to_rb(const BridgeContext& bc,
                                const LInftyStructure& m,
                                const PoissonPoly& r);

/// Executable commutativity of the governing-structure diagram: the
/// blockwise map (H on h-parts, H o D_n on Der-parts) intertwines every
/// product shape of arity <= cap, and MC elements transport to MC
/// elements.
Report check_bridge_diagram(const BridgeContext& bc, const LInftyStructure& m,
                            const PoissonPoly& r);

}  // namespace linfty
