#include "linfty/koszul.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace linfty {

int koszul_sign(const std::vector<int>& sigma,
                const std::vector<int>& degrees) {
  const int n = static_cast<int>(sigma.size());
  if (degrees.size() != sigma.size())
    throw std::invalid_argument("koszul_sign: length mismatch");
  std::vector<char> seen(n, 0);
  for (int v : sigma) {
    if (v < 0 || v >= n || seen[v])
      throw std::invalid_argument("koszul_sign: not a permutation");
    seen[v] = 1;
  }
  int parity = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (sigma[i] > sigma[j])
        parity ^= (degrees[sigma[i]] & 1) & (degrees[sigma[j]] & 1);
  return parity ? -1 : 1;
}

Normalized normalize_monomial(const Monomial& factors,
                              const std::vector<int>& degrees) {
  if (factors.size() != degrees.size())
    throw std::invalid_argument("normalize_monomial: length mismatch");
  Monomial m = factors;
  std::vector<int> deg = degrees;
  int parity = 0;
  // insertion sort; each adjacent swap of odd-odd factors flips the sign
  for (std::size_t i = 1; i < m.size(); ++i) {
    for (std::size_t j = i; j > 0 && m[j - 1] > m[j]; --j) {
      parity ^= (deg[j - 1] & 1) & (deg[j] & 1);
      std::swap(m[j - 1], m[j]);
      std::swap(deg[j - 1], deg[j]);
    }
  }
  for (std::size_t i = 1; i < m.size(); ++i)
    if (m[i] == m[i - 1] && (deg[i] & 1)) return {std::move(m), 0};
  return {std::move(m), parity ? -1 : 1};
}

Normalized normalize_monomial(const Monomial& factors, const GradedSpace& s) {
  std::vector<int> deg(factors.size());
  for (std::size_t k = 0; k < factors.size(); ++k)
    deg[k] = s.degree(factors[k]);
  return normalize_monomial(factors, deg);
}

int monomial_degree(const Monomial& m, const GradedSpace& s) {
  int d = 0;
  for (int i : m) d += s.degree(i);
  return d;
}

std::string monomial_str(const Monomial& m, const GradedSpace& s) {
  std::ostringstream os;
  os << '(';
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (k) os << ' ';
    os << s.symbol(m[k]);
  }
  os << ')';
  return os.str();
}

std::vector<std::vector<int>> unshuffles(int i, int n) {
  if (i < 0 || i > n) throw std::invalid_argument("unshuffles: need 0<=i<=n");
  std::vector<std::vector<int>> out;
  std::vector<int> pick(i);
  // choose the first block as an ascending subset; remainder ascends too
  std::function<void(int, int)> rec = [&](int start, int k) {
    if (k == i) {
      std::vector<int> sigma = pick;
      std::vector<char> used(n, 0);
      for (int v : pick) used[v] = 1;
      for (int v = 0; v < n; ++v)
        if (!used[v]) sigma.push_back(v);
      out.push_back(std::move(sigma));
      return;
    }
    for (int v = start; v < n; ++v) {
      pick[k] = v;
      rec(v + 1, k + 1);
    }
  };
  rec(0, 0);
  return out;
}

void for_each_block_unshuffle(
    const std::vector<int>& block_sizes,
    const std::function<void(const std::vector<int>&)>& fn) {
  int n = 0;
  for (int b : block_sizes) n += b;
  std::vector<int> seq;
  seq.reserve(n);
  std::vector<char> used(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t blk) {
    if (blk == block_sizes.size()) {
      fn(seq);
      return;
    }
    const int size = block_sizes[blk];
    std::vector<int> pick(size);
    std::function<void(int, int)> choose = [&](int start, int k) {
      if (k == size) {
        for (int v : pick) {
          seq.push_back(v);
          used[v] = 1;
        }
        rec(blk + 1);
        for (int v : pick) used[v] = 0;
        seq.resize(seq.size() - size);
        return;
      }
      for (int v = start; v < n; ++v) {
        if (used[v]) continue;
        pick[k] = v;
        choose(v + 1, k + 1);
      }
    };
    choose(0, 0);
  };
  rec(0);
}

std::vector<Monomial> monomials_of_length(const GradedSpace& s, int length) {
  std::vector<Monomial> out;
  Monomial cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == length) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < s.dim(); ++i) {
      if (!cur.empty() && cur.back() == i && (s.degree(i) & 1))
        continue;  // odd square vanishes
      cur.push_back(i);
      rec(i);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

Rat monomial_automorphisms(const Monomial& sorted) {
  Rat a = 1;
  int run = 1;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] == sorted[i - 1])
      a *= ++run;
    else
      run = 1;
  }
  return a;
}

}  // namespace linfty
