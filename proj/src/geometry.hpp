#pragma once

#include <optional>
#include <vector>

#include "property.hpp"
#include "types.hpp"

namespace relucert {

// Halfspace polytope {x : A*x <= b}.
struct HalfspacePolytope {
  Mat A;  // k x d
  Vec b;  // k

  HalfspacePolytope() = default;
  HalfspacePolytope(Mat A_, Vec b_);

  Eigen::Index dim() const { return A.cols(); }
  Eigen::Index rows() const { return A.rows(); }

  void append_row(const Vec& a, double beta);
  void append(const HalfspacePolytope& other);
  bool contains(const Vec& x, double tol = kSatTol) const;

  static HalfspacePolytope from_box(const InputBox& box);
};

enum class LPStatus { Optimal, Infeasible, Unbounded };
enum class LPSense { Min, Max };

struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  std::optional<double> optimum;
  std::optional<Vec> witness;
};

// Dense two-phase simplex with Bland's anti-cycling rule. Throws
// Error(Numeric) if the pivot count exceeds 50*(rows+dim) per phase.
LPResult lp_solve(const HalfspacePolytope& poly, const Vec& objective, LPSense sense);

struct FeasibilityResult {
  bool feasible = false;
  std::optional<Vec> witness;
};
FeasibilityResult is_feasible(const HalfspacePolytope& poly);

// Counterclockwise vertex cycle of a bounded 2-D polytope; collinear
// duplicates merged at 1e-9. Empty polytope -> empty list; unbounded ->
// Error(Validation).
std::vector<Vec> vertices_2d(const HalfspacePolytope& poly);

double polygon_area(const std::vector<Vec>& ccw_vertices);

struct MonteCarlo {
  long samples = 100000;
  uint64_t seed = 0;
  int threads = 1;
};
struct Exact2D {};

double volume(const HalfspacePolytope& poly, Exact2D);
double volume(const HalfspacePolytope& poly, const MonteCarlo& mc, const InputBox& within);

// Union volume. Exact2D handles overlapping members exactly (recursive
// inclusion-exclusion over convex intersections); MonteCarlo counts points
// inside any member.
double volume_of_union(const std::vector<HalfspacePolytope>& polys, Exact2D);
double volume_of_union(const std::vector<HalfspacePolytope>& polys, const MonteCarlo& mc,
                       const InputBox& within);

}  // namespace relucert
