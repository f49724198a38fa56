#include "pendantss/projections.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pendantss/kernels.hpp"

namespace pendantss {

void BoxSet::validate() const {
  if (!(lower < upper)) throw ParameterError("box requires lower < upper");
}

bool BoxSet::contains(const Signal& x) const {
  for (double v : x)
    if (v < lower || v > upper) return false;
  return true;
}

void SimplexSet::validate() const {
  if (dimension < 1) throw ParameterError("simplex dimension must be >= 1");
}

Signal project_box(const Signal& z, const BoxSet& box) {
  box.validate();
  Signal out(z.size());
  kernels::active().clamp(z.data(), z.size(), box.lower, box.upper, out.data());
  return out;
}

Kernel project_simplex(const Kernel& z) {
  const std::size_t n = z.size();
  if (n == 0) throw ParameterError("cannot project an empty vector");
  if (n == 1) return {1.0};

  // Condat's O(L) expected-time procedure; rho tracks (sum(v) - 1)/|v|.
  std::vector<double> v;
  std::vector<double> vtilde;
  v.reserve(n);
  v.push_back(z[0]);
  double rho = z[0] - 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double y = z[i];
    if (y > rho) {
      rho += (y - rho) / (v.size() + 1);
      if (rho > y - 1.0) {
        v.push_back(y);
      } else {
        vtilde.insert(vtilde.end(), v.begin(), v.end());
        v.assign(1, y);
        rho = y - 1.0;
      }
    }
  }
  for (double y : vtilde) {
    if (y > rho) {
      v.push_back(y);
      rho += (y - rho) / v.size();
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < v.size();) {
      const double y = v[i];
      if (y <= rho) {
        v[i] = v.back();
        v.pop_back();
        rho += (rho - y) / v.size();
        changed = true;
      } else {
        ++i;
      }
    }
  }
  Kernel out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::max(z[i] - rho, 0.0);
  return out;
}

double normal_cone_residual_box(const Signal& x, const Signal& g,
                                const BoxSet& box) {
  box.validate();
  if (x.size() != g.size()) throw ParameterError("shape mismatch");
  if (!box.contains(x)) throw ParameterError("point is not in the box");
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const bool at_lower = x[i] == box.lower;
    const bool at_upper = x[i] == box.upper;
    if (at_lower && g[i] >= 0.0) continue;  // r = -g absorbs
    if (at_upper && g[i] <= 0.0) continue;
    acc += g[i] * g[i];
  }
  return std::sqrt(acc);
}

double normal_cone_residual_simplex(const Kernel& x, const Kernel& g) {
  const std::size_t n = x.size();
  if (g.size() != n || n == 0) throw ParameterError("shape mismatch");
  double sum = 0.0;
  for (double v : x) {
    if (v < 0.0) throw ParameterError("point is not on the simplex");
    sum += v;
  }
  if (std::fabs(sum - 1.0) > 1e-9)
    throw ParameterError("point is not on the simplex");

  // N(x) = { r : r_i = c on supp(x), r_i <= c elsewhere }. For fixed c the
  // best r gives phi(c) = sum_{supp} (g_i+c)^2 + sum_{off} min(0, g_i+c)^2,
  // convex piecewise quadratic with breakpoints at c = -g_i (off support).
  double sum_s = 0.0;
  std::size_t m = 0;
  std::vector<double> off;  // -g_i for off-support coordinates
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] > 0.0) {
      sum_s += g[i];
      ++m;
    } else {
      off.push_back(-g[i]);
    }
  }
  std::sort(off.begin(), off.end());
  const std::size_t k = off.size();
  // Suffix sums of g over breakpoints >= position j (g_i = -off value).
  std::vector<double> suffix(k + 1, 0.0);
  for (std::size_t j = k; j-- > 0;) suffix[j] = suffix[j + 1] - off[j];

  double c_star = -sum_s / static_cast<double>(m);
  // Segment j: c in [off[j-1], off[j]] with active set {j..k-1}.
  for (std::size_t j = 0; j <= k; ++j) {
    const double cand =
        -(sum_s + suffix[j]) / static_cast<double>(m + (k - j));
    const bool above = j == 0 || cand >= off[j - 1];
    const bool below = j == k || cand <= off[j];
    if (above && below) {
      c_star = cand;
      break;
    }
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = g[i] + c_star;
    if (x[i] > 0.0)
      acc += t * t;
    else if (t < 0.0)
      acc += t * t;
  }
  return std::sqrt(acc);
}

}  // namespace pendantss
