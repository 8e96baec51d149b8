#pragma once

#include <vector>

#include "geometry.hpp"
#include "model.hpp"
#include "property.hpp"
#include "types.hpp"

namespace relucert {

// Per-layer pre-activation bounds; index i holds bounds for zhat^(i+1),
// the last entry is the (identity) output layer.
struct NeuronBounds {
  std::vector<Vec> lower;
  std::vector<Vec> upper;

  size_t num_layers() const { return lower.size(); }
  Interval at(size_t layer, Eigen::Index j) const {
    return Interval{lower[layer][j], upper[layer][j]};
  }
};

// Affine bounding functions of the input: lowerA*x + lowerC <= f(x) <= upperA*x + upperC.
struct LinearBounds {
  Mat lowerA;
  Vec lowerC;
  Mat upperA;
  Vec upperC;
};

struct Zonotope {
  Vec center;
  Mat generators;  // one column per noise symbol

  Interval concretize(Eigen::Index i) const {
    double r = generators.row(i).cwiseAbs().sum();
    return Interval{center[i] - r, center[i] + r};
  }
};

// Eq.-5 style relaxation lines for one hidden layer: for each neuron,
// lo_slope*z + lo_icpt <= relu(z) <= up_slope*z + up_icpt on [l, u].
struct ReluRelaxation {
  Vec lo_slope;
  Vec lo_icpt;
  Vec up_slope;
  Vec up_icpt;
};

enum class NeuronFix : uint8_t { None = 0, Active = 1, Inactive = 2 };
// fixes[i][j] applies to hidden layer i (0-based), neuron j.
using FixMap = std::vector<std::vector<NeuronFix>>;

struct AlphaPolicy {
  enum class Kind { Zero, Adaptive, Fixed };
  Kind kind = Kind::Zero;
  std::vector<Vec> values;  // per hidden layer, used when kind == Fixed

  static AlphaPolicy zero() { return {}; }
  static AlphaPolicy adaptive() { return {Kind::Adaptive, {}}; }
  static AlphaPolicy fixed(std::vector<Vec> v) { return {Kind::Fixed, std::move(v)}; }
};

FixMap no_fixes(const Network& net);

struct IntervalResult {
  NeuronBounds bounds;
  std::vector<Vec> post_lower;  // post-activation bounds per layer
  std::vector<Vec> post_upper;
  Vec out_lower;
  Vec out_upper;
};

IntervalResult interval_propagate(const Network& net, const InputBox& box);

struct CrownResult {
  NeuronBounds bounds;
  LinearBounds output_bounds;
  std::vector<ReluRelaxation> relaxations;  // per hidden layer
  Vec out_lower;
  Vec out_upper;
};

CrownResult crown_propagate(const Network& net, const InputBox& box,
                            const AlphaPolicy& policy = AlphaPolicy::zero(),
                            const FixMap* fixes = nullptr);

// Backward-substitutes the rows C (acting on the output) through the given
// relaxations and concretizes over the box. Returns the affine form in x,
// the concrete bound per row, and the coefficients that hit each hidden
// layer's relaxation during the pass (used by branching scores).
struct RowBound {
  Mat A;
  Vec c;
  Vec bound;
  std::vector<Mat> relu_coefs;  // per hidden layer: rows x layer width
};

RowBound bound_output_rows(const Network& net, const InputBox& box, const Mat& rows,
                           const std::vector<ReluRelaxation>& relax, bool upper);

struct ZonotopeResult {
  Zonotope output;
  std::vector<Interval> pre_intervals_first_layer;  // kept cheap for inspection
  NeuronBounds bounds;
  Vec out_lower;
  Vec out_upper;
};

ZonotopeResult zonotope_propagate(const Network& net, const InputBox& box);

enum class BoundMethod { Interval, Zonotope, Crown };

struct CheckResult {
  bool verified = false;
  Vec margins;      // per post row: b - certified upper bound of a^T f(x)
  Vec out_lower;    // certified output interval of the method used
  Vec out_upper;
};

CheckResult check_with_bounds(const Network& net, const InputBox& box,
                              const OutputPolytope& post, BoundMethod method,
                              const AlphaPolicy& policy = AlphaPolicy::zero());

}  // namespace relucert
