#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace relucert {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Tolerances used across the toolkit. Comparisons in verdicts use a 1e-9
// guard band; LP feasibility is checked at 1e-7; geometric merging at 1e-9.
inline constexpr double kFeasTol = 1e-7;
inline constexpr double kGeomTol = 1e-9;
inline constexpr double kSatTol = 1e-9;
inline constexpr double kVerifyGuard = 1e-9;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
  bool contains(double v, double tol = 0.0) const {
    return v >= lo - tol && v <= hi + tol;
  }
};

enum class ErrorCode {
  Io = 1,
  Parse = 2,
  Validation = 3,
  Dimension = 4,
  Budget = 5,
  Unsupported = 6,
  InvalidArgument = 7,
  Numeric = 8,
  Internal = 9,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool cond, ErrorCode code, const std::string& msg) {
  if (!cond) throw Error(code, msg);
}

}  // namespace relucert
