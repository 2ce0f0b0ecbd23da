#include "linfty/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace linfty {

Rat parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  std::size_t pos = 0;
  auto check_int = [&](const std::string& part) {
    if (part.empty()) return false;
    std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    return true;
  };
  pos = text.find('/');
  std::string num = text.substr(0, pos);
  std::string den = pos == std::string::npos ? "" : text.substr(pos + 1);
  if (!check_int(num) || (pos != std::string::npos && !check_int(den)))
    throw std::invalid_argument("malformed rational '" + text + "'");
  mpz_class n(num), d(den.empty() ? "1" : den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  Rat r(n, d);
  r.canonicalize();
  return r;
}

std::string rat_str(const Rat& r) { return r.get_str(); }

Rat factorial(int n) {
  Rat r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace linfty
