#pragma once

#include "linfty/cdga.hpp"
#include "linfty/vstructure.hpp"

namespace linfty {

/// Working context for a pair of graded spaces (g, V): the combined space
/// W = (g+V)[1] with g-indices first, the truncated derivation algebra on
/// W, and the block decomposition used throughout.
struct RbContext {
  SpacePtr g, v;     // unshifted
  SpacePtr g1, v1;   // g[1], V[1]
  SpacePtr w;        // (g+V)[1]
  int cap;
  DerAlgebra der;    // truncated Der over W
  GlAlgebra gl;      // gl(V)

  RbContext(SpacePtr g_, SpacePtr v_, int cap_);

  bool is_g_index(int wi) const { return wi < g->dim(); }
  int g_dim() const { return g->dim(); }

  enum class Block { MType, RhoType, HType, Other };
  /// Classify a flat Der basis element: pure-g inputs with g output (m),
  /// >=1 g inputs + one V input with V output (rho), pure-V inputs with g
  /// output (h), anything else (other).
  Block block_of(int flat_idx) const;
};

/// An L-infinity structure on g together with representation components
/// rho_k : S^k(g[1]) -> gl(V) of degree 1 (target = gl basis space).
struct HLRPair {
  const RbContext* ctx;
  LInftyStructure m;
  std::vector<MultiMap> rho;  // arities 1..cap-1 in the g-slots

  HLRPair(const RbContext& c, LInftyStructure m_);
  MultiMap& rho_comp(int k) { return rho.at(k - 1); }
  const MultiMap& rho_comp(int k) const { return rho.at(k - 1); }
};

/// Degree-0 components T_k : S^k(V[1]) -> g[1].
struct RBOperator {
  const RbContext* ctx;
  std::vector<MultiMap> comp;  // arities 1..cap

  explicit RBOperator(const RbContext& c);
  MultiMap& t_comp(int k) { return comp.at(k - 1); }
  const MultiMap& t_comp(int k) const { return comp.at(k - 1); }
};

/// Semidirect product bracket on pairs (Q, R), computed intrinsically:
/// Der-part commutator, rho-part R o Q' composites plus the gl-composition
/// part. The embedded derivation_bracket is the test oracle for this.
struct HlrElement {
  const RbContext* ctx;
  DerivationRep q;            // on g[1]
  std::vector<MultiMap> r;    // S^k(g[1]) -> gl, arities 1..cap-1
  int degree;

  HlrElement(const RbContext& c, int degree_);
  bool is_zero() const;
  HlrElement& add_scaled(const Rat& c, const HlrElement& o);
};

HlrElement hlr_from_pair(const HLRPair& phi);
HlrElement hlr_bracket(const HlrElement& a, const HlrElement& b);

/// Inclusion into Der((g+V)[1]); bracket preserving (tested).
DerivationRep embed_hlr(const HlrElement& e);
DerivationRep embed_rb(const RBOperator& t);

/// Projection of a derivation family onto the h block (all-V inputs, g
/// output).
DerivationRep project_h(const RbContext& ctx, const DerivationRep& d);

/// MC check of Phi = (m, rho) in the hlr algebra: [Phi,Phi] = 0 up to cap.
bool hlr_pair_is_mc(const HLRPair& phi);

/// The admissible V-structure of the Rota-Baxter construction:
/// L = truncated Der((g+V)[1]), d = [embed(Phi), .], P = h-block
/// projector, weight(c) = 2 (#V-inputs) + (1 if output in g).
VStructureDgla rb_vstructure(const RbContext& ctx, const HLRPair& phi);

struct RbOperatorReport {
  bool pass = true;
  int series_terms = 0;  // exponential truncation bound actually used
  std::vector<std::pair<int, Element>> residuals;  // per V-arity, nonzero only
};

/// P(e^{ad_T}(m+rho)) as a finite sum; pass iff every component vanishes.
RbOperatorReport check_rb_operator(const RbContext& ctx, const HLRPair& phi,
                                   const RBOperator& t);

/// Independent route: T as an MC element of the derived-bracket structure
/// on h[-1] built from rb_vstructure.
Element rb_operator_mc_residual(const RbContext& ctx, const HLRPair& phi,
                                const RBOperator& t);

/// The governing structure on L_hlr (+) h[-1] (zero differential; the
/// structure maps are the derived brackets of the ambient Der algebra).
DerivedBrackets build_lhrb(const RbContext& ctx);

struct TripleReport {
  bool mc_route = false;       // (Phi[1], T) MC in build_lhrb
  bool component_route = false;  // check_linfty + representation + rb check
  bool equivalence_holds = false;
};

TripleReport rb_triple_mc_check(const RbContext& ctx, const HLRPair& phi,
                                const RBOperator& t);

/// Flat element of the lhrb structure representing (Phi[1], T).
Element lhrb_element(const RbContext& ctx, const DerivedBrackets& lhrb,
                     const HLRPair& phi, const RBOperator& t);

/// Representation components as a morphism into gl(V)[1] for
/// representation_check.
LInftyMorphism rho_as_morphism(const HLRPair& phi,
                               const LInftyStructure& gl_structure);

}  // namespace linfty
