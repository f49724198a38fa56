#ifndef PENDANTSS_TYPES_HPP
#define PENDANTSS_TYPES_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace pendantss {

// Real-valued 1-D series of length N: observation, spike signal, trend,
// residual. Kernel uses the same storage; when constrained to the unit
// simplex its entries are nonnegative and sum to 1.
using Signal = std::vector<double>;
using Kernel = std::vector<double>;

struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct GenerationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace pendantss

#endif
