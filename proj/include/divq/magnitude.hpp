#ifndef DIVQ_MAGNITUDE_HPP
#define DIVQ_MAGNITUDE_HPP

#include "divq/integer.hpp"

#include <utility>
#include <vector>

namespace divq {

/// prod base_i^exp_i with bases >= 1 and arbitrary (possibly enormous)
/// integer exponents. Used for squared absolute values of unit powers.
struct PowerProduct {
  std::vector<std::pair<Integer, Integer>> factors;

  PowerProduct() = default;
  PowerProduct(Integer base, Integer exp) { factors.emplace_back(std::move(base), std::move(exp)); }

  PowerProduct& operator*=(const PowerProduct& o);
  PowerProduct squared() const;
};

/// Sign of (P - M), decided exactly: by direct evaluation when P is small
/// enough, otherwise by rational enclosures of log2 that are refined until
/// they separate. Throws if they never separate within the refinement cap.
int compare(const PowerProduct& P, const Rational& M);

int compare(const PowerProduct& P, const PowerProduct& Q);

}  // namespace divq

#endif
