#pragma once

#include "linfty/vstructure.hpp"

namespace linfty {

/// Generators of the weight-truncated n-shifted Poisson algebra on
/// Sym(g*[-1] (+) g[1-n]): xi_i dual to e_i[1] (degree 1 - d_i) followed
/// by v_i = e_i[1-n] (degree d_i + n - 1). Monomials are normalized with
/// all xi factors before all v factors.
struct PoissonContext {
  SpacePtr g;
  int n;
  int wcap;
  SpacePtr gens;

  PoissonContext(SpacePtr g_, int n_, int wcap_);

  int dim() const { return g->dim(); }
  bool is_xi(int idx) const { return idx < g->dim(); }
  int xi(int i) const { return i; }
  int v(int i) const { return g->dim() + i; }

  /// (p, q) = (xi count, v count).
  std::pair<int, int> biweight(const Monomial& mono) const;
  /// Degree in the shifted picture: sum of generator degrees minus n.
  int shifted_degree(const Monomial& mono) const;
};

using PoissonCtxPtr = std::shared_ptr<const PoissonContext>;

struct WeightOverflow : std::runtime_error {
  explicit WeightOverflow(const std::string& term)
      : std::runtime_error("poisson weight cap exceeded by term " + term) {}
};

/// Sparse polynomial with exact coefficients on normalized monomials of
/// total weight <= wcap.
struct PoissonPoly {
  PoissonCtxPtr ctx;
  std::map<Monomial, Rat> terms;

  explicit PoissonPoly(PoissonCtxPtr c) : ctx(std::move(c)) {}

  bool is_zero() const { return terms.empty(); }
  /// Normalizes; throws WeightOverflow past the cap unless truncate is
  /// set, in which case the term is dropped (quotient by the ideal of
  /// weight > wcap, exact on the surviving monomials).
  void add_term(const Monomial& mono, const Rat& c, bool truncate = false);
  PoissonPoly& add_scaled(const Rat& c, const PoissonPoly& o);
  bool operator==(const PoissonPoly& o) const { return terms == o.terms; }

  std::optional<int> degree() const;  // shifted degree when homogeneous
  int max_weight() const;
  bool in_s_prime() const;            // p >= 1 and q >= 1 in every term
  bool in_pure_v(int min_q) const;    // p = 0 and q >= min_q in every term
  std::string str() const;
};

/// Degree-0 graded Lie bracket on the shifted picture: the single Koszul
/// contraction extending {xi_i, v_j} = +delta_ij. Antisymmetry and Jacobi
/// hold for the shifted degrees (acceptance-tested, both parities of n).
/// The strict form throws WeightOverflow when a result term passes the
/// cap; the truncating form computes in the quotient by weight > wcap
/// (a Lie ideal on the weight >= 2 part).
PoissonPoly poisson_bracket(const PoissonPoly& a, const PoissonPoly& b);
PoissonPoly poisson_bracket_trunc(const PoissonPoly& a, const PoissonPoly& b);

/// The map carrying a derivation family on g[1] into the Poisson algebra:
/// entry (mu -> c w_t) contributes c / aut(mu) * sign * xi^mu v_t. A map
/// of graded Lie algebras (acceptance-tested for n in {0,1,2,3}).
PoissonPoly double_map(const PoissonCtxPtr& ctx, const DerivationRep& q);

/// Inverse on the (k,1) block: recover the derivation family.
DerivationRep multimap_of_poly(const PoissonContext& ctx,
                               const PoissonPoly& p, int degree, int cap);

/// e^{ad_r} p = sum 1/k! {..{p, r}.., r} with ad_r x = {x, r}; finite
/// because each bracket with a pure-v element removes one xi factor.
PoissonPoly poisson_exp_ad(const PoissonPoly& p, const PoissonPoly& r,
                           int limit, int* terms_used = nullptr);

/// The pure-v block (q >= min_q) as a graded space, with index maps.
struct SchoutenSpace {
  PoissonCtxPtr ctx;
  SpacePtr flat;
  std::vector<Monomial> monos;
  std::map<Monomial, int> index;
};
SchoutenSpace make_schouten_space(PoissonCtxPtr ctx, int min_q);

/// Higher Schouten structure on (Sym g[1-n])[n-1]: derived brackets of
/// d = {D_n(m), .} with the projection onto the pure-v block.
struct SchoutenStructure {
  SchoutenSpace h;
  LInftyStructure structure;
  PoissonPoly dm;  // D_n(m)

  Element to_h(const PoissonPoly& p) const;
  PoissonPoly from_h(const Element& e) const;
};

SchoutenStructure schouten_structure(const LInftyStructure& m, int n,
                                     int wcap);

struct RMatrixReport {
  bool pass = true;
  int series_terms = 0;
  bool truncation_exact = true;
  std::vector<std::pair<std::pair<int, int>, std::string>> residuals;
};

/// P(e^{ad_r} D_n(m)); residuals keyed by bi-weight. r must be a degree-0
/// element of the pure-v block with q >= 2 throughout.
RMatrixReport check_rmatrix(const LInftyStructure& m, const PoissonPoly& r);

/// Independent route: r as an MC element of the Schouten structure.
Element rmatrix_mc_residual(const LInftyStructure& m, const PoissonPoly& r);

struct TriangularResult {
  PoissonPoly rm;       // e^{ad_r} D_n(m)
  bool square_zero;     // {rm, rm} = 0
  bool in_s_prime;      // every term has p >= 1 and q >= 1
  bool truncation_exact;
};

TriangularResult triangular_bialgebra(const LInftyStructure& m,
                                      const PoissonPoly& r);

/// The ambient V-structure of the double construction on the flat space
/// of monomials with 2 <= p+q <= wcap, bracket in quotient semantics,
/// weight(mono) = 2q + p. d is {dm, .} when supplied, zero otherwise.
class PoissonVStructure {
 public:
  PoissonVStructure(PoissonCtxPtr ctx, const PoissonPoly* dm);

  const VStructureDgla& vs() const { return vs_; }
  const SpacePtr& flat() const;
  const std::vector<Monomial>& monos() const;
  Element to_flat(const PoissonPoly& p) const;
  PoissonPoly from_flat(const Element& e) const;

 private:
  struct State;
  std::shared_ptr<const State> state_;
  VStructureDgla vs_;
};

/// Governing structure on Der-bar (+) h[-1], h = pure-v with q >= 2:
/// derived brackets of the zero-differential Poisson V-structure with
/// L' = the (k >= 1, 1) block.
struct LhmStructure {
  PoissonCtxPtr ctx;
  std::shared_ptr<PoissonVStructure> ambient;
  DerivedBrackets brackets;
  std::vector<Monomial> lprime_monos;
  std::vector<Monomial> h_monos;

  /// Flat element representing (m[1], r).
  Element element_of(const DerivationRep& m, const PoissonPoly& r) const;
};

LhmStructure build_lhm(const PoissonCtxPtr& ctx, int cap);

}  // namespace linfty
