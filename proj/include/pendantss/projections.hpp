#ifndef PENDANTSS_PROJECTIONS_HPP
#define PENDANTSS_PROJECTIONS_HPP

#include "pendantss/types.hpp"

namespace pendantss {

// Elementwise box [lower, upper]^N.
struct BoxSet {
  double lower = 0.0;
  double upper = 100.0;

  void validate() const;
  bool contains(const Signal& x) const;
};

// Unit simplex { x >= 0, sum x = 1 } in dimension L.
struct SimplexSet {
  int dimension = 1;

  void validate() const;
};

// Euclidean projection onto the box (elementwise clamp).
Signal project_box(const Signal& z, const BoxSet& box);

// Euclidean projection onto the unit simplex, Condat's exact algorithm.
Kernel project_simplex(const Kernel& z);

// min over r in the normal cone N_C(x) of ||g + r||; x must be feasible.
double normal_cone_residual_box(const Signal& x, const Signal& g,
                                const BoxSet& box);
double normal_cone_residual_simplex(const Kernel& x, const Kernel& g);

}  // namespace pendantss

#endif
