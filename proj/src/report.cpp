#include "linfty/report.hpp"

#include <cstdint>
#include <sstream>

namespace linfty {

void Report::add(CheckItem item) {
  if (!item.pass) verdict = Verdict::Fail;
  items.push_back(std::move(item));
}

int Report::exit_code() const {
  switch (verdict) {
    case Verdict::Pass:
      return 0;
    case Verdict::Fail:
      return 1;
    case Verdict::Error:
      return 2;
  }
  return 2;
}

namespace {
const char* verdict_str(Report::Verdict v) {
  switch (v) {
    case Report::Verdict::Pass:
      return "pass";
    case Report::Verdict::Fail:
      return "fail";
    case Report::Verdict::Error:
      return "error";
  }
  return "error";
}
}  // namespace

std::string Report::render_text() const {
  std::ostringstream os;
  os << command << ": " << verdict_str(verdict) << '\n';
  os << "  caps: arity=" << arity_cap << " weight=" << weight_cap;
  if (shift) os << " shift=" << *shift;
  os << '\n';
  os << "  conventions: " << convention_hash() << '\n';
  if (verdict == Verdict::Error) {
    os << "  error: " << error_message << '\n';
    return os.str();
  }
  for (const auto& it : items) {
    os << "  [" << (it.pass ? "ok" : "FAIL") << "] " << it.name << '\n';
    for (const auto& d : it.details) os << "    " << d << '\n';
  }
  return os.str();
}

std::string Report::render_structured() const {
  std::ostringstream os;
  os << "report-format: 1\n";
  os << "command: " << command << '\n';
  os << "verdict: " << verdict_str(verdict) << '\n';
  os << "arity-cap: " << arity_cap << '\n';
  os << "weight-cap: " << weight_cap << '\n';
  if (shift) os << "shift: " << *shift << '\n';
  os << "conventions: " << convention_hash() << '\n';
  if (verdict == Verdict::Error) {
    os << "error: " << error_message << '\n';
    return os.str();
  }
  for (const auto& it : items) {
    os << "check: " << it.name << " status=" << (it.pass ? "pass" : "fail")
       << '\n';
    for (const auto& d : it.details) os << "  detail: " << d << '\n';
  }
  return os.str();
}

const std::string& convention_sheet() {
  static const std::string sheet = R"(convention sheet v1
scalars: exact rationals; all zero tests are literal equality
grading: cohomological; shift g[n]^i = g^{i+n}, deg x[n] = deg x - n
koszul sign: pure Koszul from factor degrees, no permutation parity factor
normal form: monomials sorted by declaration order of the basis
multibrackets: stored on the shifted space S^k(g[1]) -> g[1]
composite: (A o B)_n = sum over (l,n-l)-unshuffles, value in first slot
bracket: [A,B] = A o B - (-1)^{|A||B|} B o A
dgla presentation: m1(x[1]) = -(dx)[1], m2(x[1],y[1]) = (-1)^{|x|}[x,y][1]
adjoint action: right action ad_x(y) = [y,x]
gauge: x*h = x + sum 1/n! (ad_h^n x + ad_h^{n-1} dh)
scalar extension: prefactor (-1)^{sum |a_i|(|x_1|+..+|x_{i-1}|+d)} for a
  degree-d family, coefficients multiplied on the left
gl(V): basis E_ij with E_ij(v_k) = delta_jk v_i, degree deg v_i - deg v_j
hlr action slot: V-type inputs listed after g-type inputs in monomials
poisson generators: xi_i dual to e_i[1] (degree 1 - d_i), v_i = e_i[1-n]
  (degree d_i + n - 1); monomial order: all xi before all v
pairing: {xi_i, v_j} = +delta_ij; {v_j, xi_i} = -(-1)^{|xi_i||v_j|} delta_ij
poisson bracket: single Koszul contraction, no global prefactor
double map: entry (mu -> c w_t) |-> c / aut(mu) * sign * xi^mu v_t with
  sign = (-1)^{|f| deg(v_t) + S(mu)}, |f| = deg xi^mu, S = internal Koszul
  pairs of the xi block (dualization reverses the factor order), aut =
  product of multiplicity factorials
hamiltonian: H(c)(generator s) = {c, s}; the component on monomial kappa
  with output dual(s) carries coefficient * aut(kappa) *
  -(-1)^{G D + n(G+D) + D + S(kappa)} with G = deg kappa, D = deg s
)";
  return sheet;
}

std::string convention_hash() {
  // FNV-1a 64-bit over the sheet text
  const std::string& s = convention_sheet();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace linfty
