#pragma once

// Random-but-honest inputs for the derived bracket machinery: genuinely
// admissible V-structures built from matrix algebras of a random graded
// V, with h = an off-diagonal Hom block and d = ad of a square-zero
// element.

#include <memory>
#include <random>

#include "linfty/vstructure.hpp"

namespace generators {

using namespace linfty;

struct RandomVs {
  std::shared_ptr<DerAlgebra> der;  // keeps the closures alive
  VStructureDgla vs;
  std::vector<int> h_indices;  // in L coordinates
};

/// family 0: full gl(2), h = Hom(v_b, v_a)            (dim 4)
/// family 1: upper-triangular gl(2), same h           (dim 3)
/// family 2: upper-triangular gl(3), h = first row    (dim 6)
inline RandomVs random_admissible_vstructure(std::mt19937& rng,
                                             int family = -1) {
  std::uniform_int_distribution<int> dd(-1, 2);
  std::uniform_int_distribution<int> coin(0, 1);
  if (family < 0) family = std::uniform_int_distribution<int>(0, 2)(rng);

  SpacePtr v;
  if (family == 2) {
    const int d0 = dd(rng);
    v = make_space("V", {{"v0", d0}, {"v1", d0}, {"v2", d0 - 1}});
  } else {
    const int da = dd(rng);
    const int db = coin(rng) ? da : dd(rng);
    v = make_space("V", {{"va", da}, {"vb", db}});
  }
  auto der = std::make_shared<DerAlgebra>(v, 1, "glV");
  const SpacePtr gl = der->flat();
  auto unit = [&](int i, int j) { return der->flat_index({j}, i); };

  std::vector<int> keep;
  std::vector<int> h_flats;
  if (family == 0) {
    keep = {unit(0, 0), unit(1, 0), unit(0, 1), unit(1, 1)};
    h_flats = {unit(0, 1)};
  } else if (family == 1) {
    keep = {unit(0, 0), unit(0, 1), unit(1, 1)};
    h_flats = {unit(0, 1)};
  } else {
    keep = {unit(0, 0), unit(0, 1), unit(0, 2),
            unit(1, 1), unit(1, 2), unit(2, 2)};
    h_flats = {unit(0, 1), unit(0, 2)};
  }

  std::vector<std::pair<std::string, int>> basis;
  std::vector<int> to_flat;
  for (int idx : keep) {
    basis.emplace_back(gl->symbol(idx), gl->degree(idx));
    to_flat.push_back(idx);
  }
  auto l = make_space("mat", std::move(basis));

  auto inject = [der, to_flat, gl](const Element& x) {
    Element out = Element::zero(gl);
    for (const auto& [i, c] : x.terms()) out.add_term(to_flat[i], c);
    return out;
  };
  auto restrict_l = [l, to_flat](const Element& x) {
    Element out = Element::zero(l);
    for (const auto& [fi, c] : x.terms()) {
      bool found = false;
      for (std::size_t k = 0; k < to_flat.size(); ++k)
        if (to_flat[k] == fi) {
          out.add_term(static_cast<int>(k), c);
          found = true;
        }
      if (!found)
        throw std::logic_error("random vstructure: bracket left the algebra");
    }
    return out;
  };

  std::vector<int> h_local;
  for (int hf : h_flats)
    for (std::size_t k = 0; k < to_flat.size(); ++k)
      if (to_flat[k] == hf) h_local.push_back(static_cast<int>(k));

  // a square-zero degree-1 element of ker P for the differential
  Element delta = Element::zero(l);
  std::vector<int> candidates;
  for (std::size_t k = 0; k < to_flat.size(); ++k) {
    const auto& [mono, out_i] = der->meta(to_flat[k]);
    const bool diagonal = (mono[0] == out_i);
    const bool in_h =
        std::find(h_local.begin(), h_local.end(), static_cast<int>(k)) !=
        h_local.end();
    if (!diagonal && !in_h && l->degree(static_cast<int>(k)) == 1)
      candidates.push_back(static_cast<int>(k));
  }
  if (!candidates.empty() && coin(rng)) {
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    std::uniform_int_distribution<int> cc(1, 2);
    delta.add_term(candidates[pick(rng)], cc(rng));
  }

  RandomVs out;
  out.der = der;
  out.h_indices = h_local;
  out.vs.l = l;
  out.vs.bracket = [der, inject, restrict_l](const Element& x,
                                             const Element& y) {
    return restrict_l(der->bracket(inject(x), inject(y)));
  };
  Element delta_flat = inject(delta);
  out.vs.diff = [der, inject, restrict_l, delta_flat](const Element& x) {
    return restrict_l(der->bracket(delta_flat, inject(x)));
  };
  out.vs.proj = [l, h_local](const Element& x) {
    Element p = Element::zero(l);
    for (int hi : h_local) {
      Rat c = x.coeff(hi);
      if (c != 0) p.add_term(hi, c);
    }
    return p;
  };
  out.vs.weight.assign(l->dim(), 0);
  for (int hi : h_local) out.vs.weight[hi] = 1;
  out.vs.series_limit = 16;
  return out;
}

/// Random homogeneous element of the given degree.
inline Element random_homogeneous(std::mt19937& rng, const SpacePtr& sp,
                                  int degree) {
  std::uniform_int_distribution<int> cc(-2, 2);
  Element out = Element::zero(sp);
  for (int i = 0; i < sp->dim(); ++i)
    if (sp->degree(i) == degree) out.add_term(i, cc(rng));
  return out;
}

}  // namespace generators
