#pragma once

#include <string>
#include <vector>

#include "fcone/groundset.hpp"

namespace fcone {

// The F-curve of the partition X | Y | Z | W of [n]; W = [n] \ (X u Y u Z) always contains n.
struct FCurve {
  int n;
  SubsetMask x, y, z;

  FCurve(int n, SubsetMask x, SubsetMask y, SubsetMask z);
  FCurve(const Subset& x, const Subset& y, const Subset& z);

  SubsetMask w_lower() const { return lower_mask(n) & ~(x | y | z); }
  bool covers_lower() const { return (x | y | z) == lower_mask(n); }
  std::string to_string() const;

  friend bool operator==(const FCurve&, const FCurve&) = default;
};

// One representative per unordered partition, S(n,4) in total.
std::vector<FCurve> all_fcurves(int n);

}  // namespace fcone
