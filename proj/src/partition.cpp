#include "capvert/partition.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace capvert {

std::vector<Partition> partitions(int n) {
  std::vector<Partition> out;
  Partition cur;
  std::function<void(int, int)> rec = [&](int rest, int max_part) {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int k = std::min(rest, max_part); k >= 1; --k) {
      cur.push_back(k);
      rec(rest - k, k);
      cur.pop_back();
    }
  };
  if (n >= 0) rec(n, n);
  return out;
}

int size(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0); }

Partition conjugate(const Partition& p) {
  Partition c;
  if (p.empty()) return c;
  for (int j = 0; j < p[0]; ++j) {
    int len = 0;
    for (int part : p)
      if (part > j) ++len;
    c.push_back(len);
  }
  return c;
}

std::vector<Box> boxes(const Partition& p) {
  std::vector<Box> out;
  for (int r = 0; r < static_cast<int>(p.size()); ++r)
    for (int c = 0; c < p[r]; ++c) out.push_back(Box{r, c});
  return out;
}

int arm(const Partition& p, const Box& b) { return p[b.r] - b.c - 1; }

int leg(const Partition&, const Partition& conj, const Box& b) { return conj[b.c] - b.r - 1; }

int n_of(const Partition& p) {
  int n = 0;
  for (std::size_t i = 0; i < p.size(); ++i) n += static_cast<int>(i) * p[i];
  return n;
}

mpz_class z_of(const Partition& p) {
  mpz_class z = 1;
  std::size_t i = 0;
  while (i < p.size()) {
    std::size_t j = i;
    while (j < p.size() && p[j] == p[i]) ++j;
    const long m = static_cast<long>(j - i);
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(m));
    mpz_class k;
    mpz_ui_pow_ui(k.get_mpz_t(), static_cast<unsigned long>(p[i]), static_cast<unsigned long>(m));
    z *= f * k;
    i = j;
  }
  return z;
}

bool dominates(const Partition& p, const Partition& q) {
  int sp = 0, sq = 0;
  const std::size_t len = std::max(p.size(), q.size());
  for (std::size_t i = 0; i < len; ++i) {
    sp += i < p.size() ? p[i] : 0;
    sq += i < q.size() ? q[i] : 0;
    if (sp < sq) return false;
  }
  return true;
}

Partition join(const Partition& p, const Partition& q) {
  Partition r = p;
  r.insert(r.end(), q.begin(), q.end());
  std::sort(r.begin(), r.end(), std::greater<>());
  return r;
}

bool is_partition(const std::vector<int>& parts) {
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] <= 0) return false;
    if (i > 0 && parts[i] > parts[i - 1]) return false;
  }
  return true;
}

std::string to_string(const Partition& p) {
  if (p.empty()) return "∅";
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  return s;
}

}  // namespace capvert
