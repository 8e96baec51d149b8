#pragma once

#include <optional>
#include <string>

#include "types.hpp"

namespace relucert {

// Axis-aligned input region (the precondition).
struct InputBox {
  Vec lower;
  Vec upper;

  InputBox() = default;
  InputBox(Vec lo, Vec hi);

  Eigen::Index dim() const { return lower.size(); }
  double volume() const;
  Vec center() const { return 0.5 * (lower + upper); }
  bool contains(const Vec& x, double tol = 0.0) const;
};

// Output constraint A*y <= b (the postcondition).
struct OutputPolytope {
  Mat A;
  Vec b;

  OutputPolytope() = default;
  OutputPolytope(Mat A_, Vec b_);

  Eigen::Index rows() const { return A.rows(); }
  Eigen::Index dim() const { return A.cols(); }
};

enum class Norm { Linf };

struct RobustnessSpec {
  Vec center;
  double epsilon = 0.0;
  Norm norm = Norm::Linf;
  int label = 0;
};

struct QuantitativeSpec {
  InputBox input;
  OutputPolytope output;
  double proportion = 0.0;
};

// A robustness spec as a (precondition, postcondition) pair: the eps-box and
// the m-1 halfspaces y_j - y_label <= -margin.
std::pair<InputBox, OutputPolytope> robustness_to_polytope(
    const RobustnessSpec& spec, Eigen::Index output_dim, double margin = 0.0);

bool satisfies(const Vec& y, const OutputPolytope& post, double tol = kSatTol);

// A verification problem parsed from spec JSON. Robustness specs are
// lowered to box + polytope; the original spec is kept for reporting.
struct Problem {
  InputBox box;
  OutputPolytope post;
  std::optional<RobustnessSpec> robustness;
  std::optional<double> proportion;
};

Problem parse_spec_json(const std::string& json_text, Eigen::Index input_dim,
                        Eigen::Index output_dim, double robustness_margin = 0.0);

}  // namespace relucert
