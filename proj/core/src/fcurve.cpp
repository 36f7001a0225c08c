#include "fcone/fcurve.hpp"

#include <functional>

#include "fcone/error.hpp"

namespace fcone {

FCurve::FCurve(int n_, SubsetMask x_, SubsetMask y_, SubsetMask z_) : n(n_), x(x_), y(y_), z(z_) {
  if (n < 4 || n > kMaxMarkings) throw DomainError("F-curve requires 4 <= n <= 30");
  const SubsetMask lower = lower_mask(n);
  if (!x || !y || !z) throw DomainError("F-curve parts must be nonempty");
  if ((x | y | z) & ~lower) throw DomainError("F-curve parts must lie in [n-1]");
  if ((x & y) || (x & z) || (y & z)) throw DomainError("F-curve parts must be pairwise disjoint");
}

FCurve::FCurve(const Subset& x_, const Subset& y_, const Subset& z_)
    : FCurve(x_.n(), x_.mask(), y_.mask(), z_.mask()) {
  if (y_.n() != n || z_.n() != n) throw DomainError("F-curve parts have different ambient n");
}

std::string FCurve::to_string() const {
  auto fmt = [](SubsetMask m) {
    std::string s = "{";
    bool first = true;
    for (int i : mask_members(m)) {
      if (!first) s += ",";
      s += std::to_string(i);
      first = false;
    }
    return s + "}";
  };
  return "c(" + fmt(x) + "," + fmt(y) + "," + fmt(z) + ")";
}

std::vector<FCurve> all_fcurves(int n) {
  if (n < 4 || n > 16) throw DomainError("all_fcurves supports 4 <= n <= 16");
  std::vector<FCurve> out;
  // Labels: 0 = W (the part with n), 1..3 = X, Y, Z in order of first appearance.
  std::vector<int> label(n, 0);
  const int m = n - 1;
  std::function<void(int, int)> rec = [&](int pos, int used) {
    if (pos > m) {
      if (used < 3) return;
      SubsetMask parts[4] = {0, 0, 0, 0};
      for (int i = 1; i <= m; ++i) parts[label[i]] |= SubsetMask{1} << i;
      out.emplace_back(n, parts[1], parts[2], parts[3]);
      return;
    }
    for (int l = 0; l <= std::min(3, used + 1); ++l) {
      label[pos] = l;
      rec(pos + 1, std::max(used, l));
    }
  };
  rec(1, 0);
  return out;
}

}  // namespace fcone
