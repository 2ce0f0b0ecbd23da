#include "linfty/cdga.hpp"

#include <sstream>
#include <stdexcept>

namespace linfty {

Element NilpotentCdga::mul(const Element& a, const Element& b) const {
  Element out = Element::zero(space);
  for (const auto& [i, ci] : a.terms())
    for (const auto& [j, cj] : b.terms()) {
      Rat c = ci * cj;
      out.add_scaled(c, mult.at(i).at(j));
    }
  return out;
}

Element NilpotentCdga::d(const Element& a) const {
  Element out = Element::zero(space);
  for (const auto& [i, c] : a.terms()) out.add_scaled(c, diff.at(i));
  return out;
}

void NilpotentCdga::validate() const {
  const int n = space->dim();
  auto fail = [](const std::string& what) {
    throw std::invalid_argument("cdga validation failed: " + what);
  };
  auto basis = [&](int i) { return Element::basis(space, i); };
  // unit, graded commutativity, associativity
  for (int i = 0; i < n; ++i) {
    if (!(mul(unit(), basis(i)) == basis(i)) ||
        !(mul(basis(i), unit()) == basis(i)))
      fail("unit law");
    for (int j = 0; j < n; ++j) {
      Element ab = mul(basis(i), basis(j));
      Element ba = mul(basis(j), basis(i));
      const int s =
          (space->degree(i) & 1) && (space->degree(j) & 1) ? -1 : 1;
      ba.scale(s);
      if (!(ab == ba)) fail("graded commutativity");
      if (!ab.is_zero() &&
          !ab.homogeneous_of(space->degree(i) + space->degree(j)))
        fail("multiplication grading");
      for (int k = 0; k < n; ++k)
        if (!(mul(ab, basis(k)) == mul(basis(i), mul(basis(j), basis(k)))))
          fail("associativity");
    }
  }
  // differential: degree 1, square zero, Leibniz
  for (int i = 0; i < n; ++i) {
    if (!diff.at(i).is_zero() &&
        !diff.at(i).homogeneous_of(space->degree(i) + 1))
      fail("differential degree");
    if (!d(d(basis(i))).is_zero()) fail("d^2 = 0");
    for (int j = 0; j < n; ++j) {
      Element lhs = d(mul(basis(i), basis(j)));
      Element rhs = mul(d(basis(i)), basis(j));
      Element second = mul(basis(i), d(basis(j)));
      rhs.add_scaled((space->degree(i) & 1) ? -1 : 1, second);
      if (!(lhs == rhs)) fail("Leibniz rule");
    }
  }
  if (d(unit()) != Element::zero(space)) fail("d(1) = 0");
  // nilpotency by explicit powering of the ideal
  std::vector<Element> power;
  for (int i = 1; i < n; ++i) power.push_back(basis(i));
  for (int p = 2; p <= nu; ++p) {
    std::vector<Element> next;
    for (const auto& x : power)
      for (int i = 1; i < n; ++i) {
        Element y = mul(x, basis(i));
        if (!y.is_zero()) next.push_back(std::move(y));
      }
    power = std::move(next);
  }
  if (!power.empty()) fail("ideal^nu != 0");
  for (int i = 1; i < n; ++i)
    if (mult.at(i).at(0).coeff(0) != 0) fail("ideal closed");
}

NilpotentCdga dual_numbers(int eps_degree) {
  NilpotentCdga a;
  a.space = make_space("k[e]", {{"1", 0}, {"e", eps_degree}});
  a.mult.assign(2, std::vector<Element>(2, Element::zero(a.space)));
  a.mult[0][0] = Element::basis(a.space, 0);
  a.mult[0][1] = Element::basis(a.space, 1);
  a.mult[1][0] = Element::basis(a.space, 1);
  a.mult[1][1] = Element::zero(a.space);
  a.diff.assign(2, Element::zero(a.space));
  a.nu = 2;
  a.validate();
  return a;
}

NilpotentCdga truncated_poly(int power, int t_degree) {
  if (t_degree & 1)
    throw std::invalid_argument("truncated_poly needs an even generator");
  NilpotentCdga a;
  std::vector<std::pair<std::string, int>> basis{{"1", 0}};
  for (int k = 1; k < power; ++k) {
    std::ostringstream os;
    os << 't';
    if (k > 1) os << '^' << k;
    basis.emplace_back(os.str(), k * t_degree);
  }
  a.space = make_space("k[t]", std::move(basis));
  const int n = a.space->dim();
  a.mult.assign(n, std::vector<Element>(n, Element::zero(a.space)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i + j < power)
        a.mult[i][j] = Element::basis(a.space, i + j);
  a.diff.assign(n, Element::zero(a.space));
  a.nu = power;
  a.validate();
  return a;
}

NilpotentCdga contractible_cdga(int power, int t_degree) {
  if (t_degree & 1)
    throw std::invalid_argument("contractible_cdga needs an even generator");
  NilpotentCdga a;
  // basis: 1, t, t^2, ..., t^{power-1}, s, ts, ..., t^{power-2}s
  std::vector<std::pair<std::string, int>> basis{{"1", 0}};
  for (int k = 1; k < power; ++k) {
    std::ostringstream os;
    os << "t^" << k;
    basis.emplace_back(os.str(), k * t_degree);
  }
  for (int k = 0; k + 1 < power; ++k) {
    std::ostringstream os;
    os << "t^" << k << "s";
    basis.emplace_back(os.str(), k * t_degree + t_degree + 1);
  }
  a.space = make_space("k[t,s]", std::move(basis));
  const int n = a.space->dim();
  auto t_idx = [&](int k) { return k == 0 ? 0 : k; };          // t^k, k<power
  auto s_idx = [&](int k) { return power + k; };               // t^k s
  a.mult.assign(n, std::vector<Element>(n, Element::zero(a.space)));
  for (int i = 0; i < power; ++i)
    for (int j = 0; j < power; ++j) {
      if (i + j < power)
        a.mult[t_idx(i)][t_idx(j)] = Element::basis(a.space, t_idx(i + j));
      if (i + j + 1 < power) {
        a.mult[t_idx(i)][s_idx(j)] = Element::basis(a.space, s_idx(i + j));
        a.mult[s_idx(j)][t_idx(i)] = Element::basis(a.space, s_idx(i + j));
      }
    }
  // s * s = 0 always (s odd when t even)
  a.diff.assign(n, Element::zero(a.space));
  for (int k = 1; k < power; ++k) {
    // d(t^k) = k t^{k-1} s
    Element v = Element::zero(a.space);
    v.add_term(s_idx(k - 1), Rat(k));
    a.diff[t_idx(k)] = std::move(v);
  }
  a.nu = power;
  a.validate();
  return a;
}

Element CdgaMorphism::apply(const Element& x) const {
  Element out = Element::zero(b->space);
  for (const auto& [i, c] : x.terms()) out.add_scaled(c, image.at(i));
  return out;
}

void CdgaMorphism::validate() const {
  const int n = a->space->dim();
  if (!(image.at(0) == b->unit()))
    throw std::invalid_argument("cdga morphism must preserve the unit");
  for (int i = 0; i < n; ++i) {
    if (!(apply(a->d(Element::basis(a->space, i))) ==
          b->d(image.at(i))))
      throw std::invalid_argument("cdga morphism does not commute with d");
    for (int j = 0; j < n; ++j) {
      Element lhs = apply(a->mul(Element::basis(a->space, i),
                                 Element::basis(a->space, j)));
      Element rhs = b->mul(image.at(i), image.at(j));
      if (!(lhs == rhs))
        throw std::invalid_argument("cdga morphism not multiplicative");
    }
    // the maximal ideal must map into the maximal ideal
    if (i >= 1 && image.at(i).coeff(0) != 0)
      throw std::invalid_argument("cdga morphism must preserve the ideal");
  }
}

int ExtendedStructure::pair_index(int ai, int gi) const {
  for (std::size_t k = 0; k < basis_pairs.size(); ++k)
    if (basis_pairs[k].first == ai && basis_pairs[k].second == gi)
      return static_cast<int>(k);
  return -1;
}

namespace {

/// Shared expansion for the A-linear extension of a degree-d family.
/// For each monomial over the extended shifted space, the value is
///   prefactor * (a_1...a_n) (x) F_n(x_1,...,x_n),
/// prefactor = (-1)^{sum_i |a_i| (|x_1|+...+|x_{i-1}| + d)}.
void fill_extended_component(
    const NilpotentCdga& A, const ExtendedStructure& src,
    const std::vector<std::pair<int, int>>& dst_pairs,
    const SpacePtr& dst_shifted, const MultiMap& base, MultiMap& out,
    int family_degree, const SpacePtr& base_src_shifted) {
  const int n = base.arity();
  for (const auto& mono : monomials_of_length(*out.source(), n)) {
    // split the pair indices
    std::vector<int> ai(n), xi(n);
    for (int k = 0; k < n; ++k) {
      ai[k] = src.basis_pairs[mono[k]].first;
      xi[k] = src.basis_pairs[mono[k]].second;
    }
    int exponent = 0;
    int xdeg_prefix = 0;
    for (int k = 0; k < n; ++k) {
      exponent += A.space->degree(ai[k]) * (xdeg_prefix + family_degree);
      xdeg_prefix += base_src_shifted->degree(xi[k]);
    }
    Element base_val = base.eval_basis(Monomial(xi.begin(), xi.end()));
    if (base_val.is_zero()) continue;
    // product of the coefficients
    Element aprod = Element::basis(A.space, ai[0]);
    for (int k = 1; k < n; ++k)
      aprod = A.mul(aprod, Element::basis(A.space, ai[k]));
    if (aprod.is_zero()) continue;
    Element value = Element::zero(dst_shifted);
    for (const auto& [ab, ac] : aprod.terms()) {
      if (ab == 0)
        throw std::logic_error("extension left the maximal ideal");
      for (const auto& [gb, gc] : base_val.terms()) {
        int idx = -1;
        for (std::size_t t = 0; t < dst_pairs.size(); ++t)
          if (dst_pairs[t].first == ab && dst_pairs[t].second == gb) {
            idx = static_cast<int>(t);
            break;
          }
        Rat c = ac * gc;
        value.add_term(idx, c);
      }
    }
    if ((exponent & 1) != 0) value.scale(-1);
    if (!value.is_zero()) out.add_entry(mono, value);
  }
}

}  // namespace

ExtendedStructure extend_scalars(const LInftyStructure& s,
                                 const NilpotentCdga& a) {
  // basis pairs (alpha >= 1, i), shifted degree |a| + |x[1]|
  std::vector<std::pair<int, int>> pairs;
  std::vector<std::pair<std::string, int>> basis;
  for (int ai = 1; ai < a.space->dim(); ++ai)
    for (int gi = 0; gi < s.space->dim(); ++gi) {
      pairs.emplace_back(ai, gi);
      basis.emplace_back(a.space->symbol(ai) + "#" + s.space->symbol(gi),
                         a.space->degree(ai) + s.space->degree(gi));
    }
  auto base_space =
      make_space(a.space->base_name() + "(x)" + s.space->base_name(),
                 std::move(basis));
  ExtendedStructure ext{LInftyStructure(base_space, s.cap), s.space, &a,
                        pairs};

  // arity 1 carries the extra d_A term
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    auto [ai, gi] = pairs[p];
    Element value = Element::zero(ext.structure.shifted);
    Element da = a.d(Element::basis(a.space, ai));
    for (const auto& [ab, ac] : da.terms())
      value.add_term(ext.pair_index(ab, gi), ac);
    Element m1x = s.bracket(1).eval_basis({gi});
    for (const auto& [gb, gc] : m1x.terms()) {
      Rat c = (a.space->degree(ai) & 1) ? -gc : gc;
      value.add_term(ext.pair_index(ai, gb), c);
    }
    if (!value.is_zero())
      ext.structure.bracket(1).add_entry({static_cast<int>(p)}, value);
  }
  for (int n = 2; n <= s.cap; ++n)
    fill_extended_component(a, ext, ext.basis_pairs, ext.structure.shifted,
                            s.bracket(n), ext.structure.bracket(n), 1,
                            s.shifted);
  return ext;
}

LInftyMorphism extend_morphism(const LInftyMorphism& f,
                               const ExtendedStructure& src,
                               const ExtendedStructure& dst) {
  if (src.cdga != dst.cdga)
    throw std::invalid_argument("extend_morphism: different coefficient cdgas");
  LInftyMorphism out(src.structure, dst.structure);
  for (int n = 1; n <= out.cap && n <= f.cap; ++n)
    fill_extended_component(*src.cdga, src, dst.basis_pairs,
                            dst.structure.shifted, f.comp(n), out.comp(n), 0,
                            f.source->shifted);
  return out;
}

LInftyMorphism change_of_scalars(const CdgaMorphism& phi,
                                 const ExtendedStructure& src,
                                 const ExtendedStructure& dst) {
  phi.validate();
  LInftyMorphism out(src.structure, dst.structure);
  for (std::size_t p = 0; p < src.basis_pairs.size(); ++p) {
    auto [ai, gi] = src.basis_pairs[p];
    Element im = phi.image.at(ai);
    Element value = Element::zero(dst.structure.shifted);
    for (const auto& [bb, bc] : im.terms())
      value.add_term(dst.pair_index(bb, gi), bc);
    if (!value.is_zero()) out.comp(1).add_entry({static_cast<int>(p)}, value);
  }
  return out;
}

}  // namespace linfty
