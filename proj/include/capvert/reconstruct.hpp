#pragma once

#include <stdexcept>

#include "capvert/series.hpp"

namespace capvert {

struct ReconstructError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// num(z)/den(z) with den(0) = 1; coefficient lists, lowest degree first.
struct RationalZ {
  ZSeries num;
  ZSeries den;
};

/// Pade-type reconstruction: finds num, den of degrees <= dn, dd whose
/// quotient matches s through z^{dn+dd+1}.
RationalZ rational_reconstruct(const ZSeries& s, int dn, int dd);

/// Taylor coefficients of num/den through z^n.
ZSeries expand_rational(const RationalZ& r, int n);

/// Index of the first coefficient of s not reproduced by r, or -1.
int certify(const RationalZ& r, const ZSeries& s);

}  // namespace capvert
