#pragma once

#include <algorithm>
#include <random>

#include "capvert/fock.hpp"
#include "capvert/reconstruct.hpp"
#include "capvert/scalar.hpp"
#include "capvert/series.hpp"

namespace capvert::testing {

inline int uniform(std::mt19937& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// Small Laurent polynomial in t1, t2, q, u with integral exponents.
inline Poly random_poly(std::mt19937& rng, int terms = 3) {
  std::vector<Term> ts;
  for (int i = 0; i < terms; ++i) {
    Monomial::Exponents e{};
    for (std::size_t v = 0; v < 4; ++v) e[v] = 2 * uniform(rng, -1, 2);
    int c = uniform(rng, -4, 4);
    if (c == 0) c = 1;
    ts.push_back(Term{Monomial(e), c});
  }
  return Poly::from_terms(std::move(ts));
}

inline GroundScalar random_nonzero(std::mt19937& rng) {
  for (;;) {
    GroundScalar num = GroundScalar::from_poly(random_poly(rng));
    GroundScalar den = GroundScalar::from_poly(random_poly(rng, 2));
    if (!num.is_zero() && !den.is_zero()) return num / den;
  }
}

/// Nonzero Laurent polynomial with at most `terms` terms.
inline GroundScalar random_poly_scalar(std::mt19937& rng, int terms = 2) {
  for (;;) {
    GroundScalar x = GroundScalar::from_poly(random_poly(rng, terms));
    if (!x.is_zero()) return x;
  }
}

inline GroundScalar random_scalar(std::mt19937& rng) {
  return uniform(rng, 0, 5) == 0 ? GroundScalar{} : random_nonzero(rng);
}

/// Random series with `terms` nonzero coefficients; constant term omitted
/// when `zero_constant`.
inline TruncatedSeries random_series(std::mt19937& rng, int ny, int nz, bool zero_constant, int terms = 3) {
  TruncatedSeries s(ny, nz);
  for (int k = 0; k < terms; ++k) {
    const int i = uniform(rng, 0, ny), j = uniform(rng, 0, nz);
    if (zero_constant && i == 0 && j == 0) continue;
    s.add_term(i, j, random_nonzero(rng));
  }
  return s;
}

/// Random element of Fock (x) Fock with series coefficients.
inline TensorFockElement<TruncatedSeries> random_tensor(std::mt19937& rng, int n, int ny, int nz, int terms = 3) {
  TensorFockElement<TruncatedSeries> t(n);
  for (int k = 0; k < terms; ++k) {
    Partition m1, m2;
    int left = uniform(rng, 0, n);
    while (left > 0) {
      const int part = uniform(rng, 1, left);
      (uniform(rng, 0, 1) ? m1 : m2).push_back(part);
      left -= part;
    }
    std::sort(m1.rbegin(), m1.rend());
    std::sort(m2.rbegin(), m2.rend());
    t.add_term(m1, m2, random_series(rng, ny, nz, false, 2));
  }
  return t;
}

}  // namespace capvert::testing
