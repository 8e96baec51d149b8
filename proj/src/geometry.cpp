#include "geometry.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>

#include "util.hpp"

namespace relucert {

HalfspacePolytope::HalfspacePolytope(Mat A_, Vec b_) : A(std::move(A_)), b(std::move(b_)) {
  require(A.rows() == b.size(), ErrorCode::Validation, "polytope: A rows != b length");
  require(A.allFinite() && b.allFinite(), ErrorCode::Validation, "polytope: non-finite entry");
}

void HalfspacePolytope::append_row(const Vec& a, double beta) {
  require(A.cols() == 0 || a.size() == A.cols(), ErrorCode::Dimension,
          "polytope: row dimension mismatch");
  Mat A2(A.rows() + 1, a.size());
  if (A.rows() > 0) A2.topRows(A.rows()) = A;
  A2.row(A.rows()) = a.transpose();
  Vec b2(b.size() + 1);
  if (b.size() > 0) b2.head(b.size()) = b;
  b2[b.size()] = beta;
  A = std::move(A2);
  b = std::move(b2);
}

void HalfspacePolytope::append(const HalfspacePolytope& other) {
  if (other.rows() == 0) return;
  require(A.cols() == 0 || A.cols() == other.A.cols(), ErrorCode::Dimension,
          "polytope: append dimension mismatch");
  Mat A2(A.rows() + other.A.rows(), other.A.cols());
  if (A.rows() > 0) A2.topRows(A.rows()) = A;
  A2.bottomRows(other.A.rows()) = other.A;
  Vec b2(b.size() + other.b.size());
  if (b.size() > 0) b2.head(b.size()) = b;
  b2.tail(other.b.size()) = other.b;
  A = std::move(A2);
  b = std::move(b2);
}

bool HalfspacePolytope::contains(const Vec& x, double tol) const {
  if (rows() == 0) return true;
  Vec slack = A * x - b;
  return (slack.array() <= tol).all();
}

HalfspacePolytope HalfspacePolytope::from_box(const InputBox& box) {
  Eigen::Index d = box.dim();
  Mat A(2 * d, d);
  Vec b(2 * d);
  A.setZero();
  for (Eigen::Index i = 0; i < d; ++i) {
    A(2 * i, i) = 1.0;
    b[2 * i] = box.upper[i];
    A(2 * i + 1, i) = -1.0;
    b[2 * i + 1] = -box.lower[i];
  }
  return HalfspacePolytope(std::move(A), std::move(b));
}

namespace {

constexpr double kPivotTol = 1e-9;

// Dense tableau simplex over columns [u(d) | v(d) | slack(k) | artificial].
// Maximizes c^T x subject to A x <= b with x = u - v free.
class Simplex {
 public:
  Simplex(const Mat& A, const Vec& b, long cap) : cap_(cap) {
    k_ = A.rows();
    d_ = A.cols();
    nuv_ = 2 * d_;
    // Normalize rows to b >= 0; negated rows need an artificial.
    std::vector<int> needs_art;
    T_ = Mat::Zero(k_, nuv_ + k_);
    rhs_ = Vec::Zero(k_);
    basis_.resize(k_);
    for (Eigen::Index i = 0; i < k_; ++i) {
      double sign = (b[i] < 0) ? -1.0 : 1.0;
      for (Eigen::Index j = 0; j < d_; ++j) {
        T_(i, j) = sign * A(i, j);
        T_(i, d_ + j) = -sign * A(i, j);
      }
      T_(i, nuv_ + i) = sign;  // slack coefficient
      rhs_[i] = sign * b[i];
      if (sign < 0) needs_art.push_back(static_cast<int>(i));
      basis_[i] = static_cast<int>(nuv_ + i);
    }
    nart_ = static_cast<Eigen::Index>(needs_art.size());
    if (nart_ > 0) {
      Mat T2 = Mat::Zero(k_, T_.cols() + nart_);
      T2.leftCols(T_.cols()) = T_;
      for (Eigen::Index a = 0; a < nart_; ++a) {
        int row = needs_art[a];
        T2(row, T_.cols() + a) = 1.0;
        basis_[row] = static_cast<int>(T_.cols() + a);
      }
      T_ = std::move(T2);
    }
    first_art_ = nuv_ + k_;
  }

  // Returns status; on Optimal fills x and optimum for objective c (maximize).
  LPStatus solve(const Vec& c, Vec* x_out, double* opt_out) {
    if (nart_ > 0) {
      Vec cost1 = Vec::Zero(T_.cols());
      for (Eigen::Index j = first_art_; j < T_.cols(); ++j) cost1[j] = -1.0;  // max -sum(a)
      LPStatus st = run(cost1, /*block_artificials=*/false);
      if (st != LPStatus::Optimal) return LPStatus::Infeasible;
      double infeas = 0.0;
      for (Eigen::Index i = 0; i < k_; ++i)
        if (basis_[i] >= first_art_) infeas += rhs_[i];
      if (infeas > kFeasTol) return LPStatus::Infeasible;
      drive_out_artificials();
    }
    Vec cost2 = Vec::Zero(T_.cols());
    for (Eigen::Index j = 0; j < d_; ++j) {
      cost2[j] = c[j];
      cost2[d_ + j] = -c[j];
    }
    LPStatus st = run(cost2, /*block_artificials=*/true);
    if (st != LPStatus::Optimal) return st;
    Vec full = Vec::Zero(T_.cols());
    for (Eigen::Index i = 0; i < k_; ++i) full[basis_[i]] = rhs_[i];
    Vec x(d_);
    for (Eigen::Index j = 0; j < d_; ++j) x[j] = full[j] - full[d_ + j];
    *x_out = x;
    *opt_out = c.dot(x);
    return LPStatus::Optimal;
  }

 private:
  void drive_out_artificials() {
    for (Eigen::Index i = 0; i < k_; ++i) {
      if (basis_[i] < first_art_) continue;
      // Pivot on any usable non-artificial column; if none, the row is
      // redundant and the artificial stays basic at level zero.
      for (Eigen::Index j = 0; j < first_art_; ++j) {
        if (std::abs(T_(i, j)) > kPivotTol) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  void pivot(Eigen::Index row, Eigen::Index col) {
    double p = T_(row, col);
    T_.row(row) /= p;
    rhs_[row] /= p;
    for (Eigen::Index i = 0; i < k_; ++i) {
      if (i == row) continue;
      double f = T_(i, col);
      if (f != 0.0) {
        T_.row(i) -= f * T_.row(row);
        rhs_[i] -= f * rhs_[row];
      }
    }
    basis_[row] = static_cast<int>(col);
  }

  LPStatus run(const Vec& cost, bool block_artificials) {
    long iters = 0;
    const long limit = cap_;
    while (true) {
      require(++iters <= limit, ErrorCode::Numeric,
              "lp_solve: simplex iteration cap exceeded");
      // Reduced costs: cost_j - cost_B^T B^{-1} A_j; the tableau already is
      // B^{-1}A, so z_j = sum_i cost[basis_i] * T(i,j).
      Eigen::Index enter = -1;
      Eigen::Index ncols = block_artificials ? first_art_ : T_.cols();
      for (Eigen::Index j = 0; j < ncols; ++j) {
        double zj = 0.0;
        for (Eigen::Index i = 0; i < k_; ++i) zj += cost[basis_[i]] * T_(i, j);
        double rc = cost[j] - zj;
        if (rc > kPivotTol) {  // improving column for maximization (Bland: first)
          enter = j;
          break;
        }
      }
      if (enter < 0) return LPStatus::Optimal;
      Eigen::Index leave = -1;
      double best_ratio = 0.0;
      for (Eigen::Index i = 0; i < k_; ++i) {
        if (T_(i, enter) > kPivotTol) {
          double ratio = rhs_[i] / T_(i, enter);
          if (leave < 0 || ratio < best_ratio - kPivotTol ||
              (std::abs(ratio - best_ratio) <= kPivotTol && basis_[i] < basis_[leave])) {
            leave = i;
            best_ratio = ratio;
          }
        }
      }
      if (leave < 0) return LPStatus::Unbounded;
      pivot(leave, enter);
    }
  }

  Eigen::Index k_ = 0, d_ = 0, nuv_ = 0, nart_ = 0, first_art_ = 0;
  Mat T_;
  Vec rhs_;
  std::vector<int> basis_;
  long cap_;
};

}  // namespace

LPResult lp_solve(const HalfspacePolytope& poly, const Vec& objective, LPSense sense) {
  require(objective.size() == poly.dim(), ErrorCode::Dimension,
          "lp_solve: objective dimension mismatch");
  LPResult res;
  if (poly.rows() == 0) {
    // No constraints: unbounded unless the objective is zero.
    if (objective.isZero(0.0)) {
      res.status = LPStatus::Optimal;
      res.optimum = 0.0;
      res.witness = Vec::Zero(poly.dim());
    } else {
      res.status = LPStatus::Unbounded;
    }
    return res;
  }
  long cap = 50 * (poly.rows() + poly.dim());
  Simplex s(poly.A, poly.b, cap);
  Vec c = (sense == LPSense::Max) ? objective : Vec(-objective);
  Vec x;
  double opt = 0.0;
  LPStatus st = s.solve(c, &x, &opt);
  res.status = st;
  if (st == LPStatus::Optimal) {
    res.optimum = (sense == LPSense::Max) ? opt : -opt;
    res.witness = x;
  }
  return res;
}

FeasibilityResult is_feasible(const HalfspacePolytope& poly) {
  FeasibilityResult fr;
  if (poly.rows() == 0) {
    fr.feasible = true;
    fr.witness = Vec::Zero(poly.dim());
    return fr;
  }
  LPResult res = lp_solve(poly, Vec::Zero(poly.dim()), LPSense::Max);
  fr.feasible = res.status == LPStatus::Optimal;
  if (fr.feasible) fr.witness = res.witness;
  return fr;
}

std::vector<Vec> vertices_2d(const HalfspacePolytope& poly) {
  require(poly.dim() == 2, ErrorCode::InvalidArgument, "vertices_2d: dimension must be 2");
  if (!is_feasible(poly).feasible) return {};
  // Boundedness check in the four axis directions.
  for (int axis = 0; axis < 2; ++axis) {
    for (double sgn : {1.0, -1.0}) {
      Vec obj = Vec::Zero(2);
      obj[axis] = sgn;
      if (lp_solve(poly, obj, LPSense::Max).status == LPStatus::Unbounded)
        throw Error(ErrorCode::Validation, "vertices_2d: polytope is unbounded");
    }
  }
  std::vector<Vec> pts;
  Eigen::Index k = poly.rows();
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i + 1; j < k; ++j) {
      Eigen::Matrix2d M;
      M << poly.A(i, 0), poly.A(i, 1), poly.A(j, 0), poly.A(j, 1);
      double det = M.determinant();
      if (std::abs(det) < 1e-12) continue;
      Eigen::Vector2d rhs(poly.b[i], poly.b[j]);
      Eigen::Vector2d p = M.inverse() * rhs;
      Vec v(2);
      v << p[0], p[1];
      if (poly.contains(v, kFeasTol)) pts.push_back(v);
    }
  }
  if (pts.empty()) {
    // Feasible but no pairwise intersection vertex: a single point region
    // defined with redundant rows, fall back to the feasibility witness.
    pts.push_back(*is_feasible(poly).witness);
  }
  // Deduplicate.
  std::vector<Vec> uniq;
  for (const Vec& p : pts) {
    bool dup = false;
    for (const Vec& q : uniq)
      if ((p - q).lpNorm<Eigen::Infinity>() <= 1e-7) { dup = true; break; }
    if (!dup) uniq.push_back(p);
  }
  if (uniq.size() == 1) return uniq;
  Vec centroid = Vec::Zero(2);
  for (const Vec& p : uniq) centroid += p;
  centroid /= static_cast<double>(uniq.size());
  std::sort(uniq.begin(), uniq.end(), [&](const Vec& a, const Vec& b2) {
    double ta = std::atan2(a[1] - centroid[1], a[0] - centroid[0]);
    double tb = std::atan2(b2[1] - centroid[1], b2[0] - centroid[0]);
    if (ta != tb) return ta < tb;
    return (a - centroid).norm() < (b2 - centroid).norm();
  });
  // Merge collinear runs.
  if (uniq.size() >= 3) {
    std::vector<Vec> merged;
    size_t n = uniq.size();
    for (size_t i = 0; i < n; ++i) {
      const Vec& prev = uniq[(i + n - 1) % n];
      const Vec& cur = uniq[i];
      const Vec& next = uniq[(i + 1) % n];
      double cross = (cur[0] - prev[0]) * (next[1] - prev[1]) -
                     (cur[1] - prev[1]) * (next[0] - prev[0]);
      if (std::abs(cross) > kGeomTol) merged.push_back(cur);
    }
    if (merged.size() >= 3) return merged;
    return uniq;  // degenerate (segment); keep endpoints
  }
  return uniq;
}

double polygon_area(const std::vector<Vec>& v) {
  if (v.size() < 3) return 0.0;
  double s = 0.0;
  for (size_t i = 0; i < v.size(); ++i) {
    const Vec& p = v[i];
    const Vec& q = v[(i + 1) % v.size()];
    s += p[0] * q[1] - q[0] * p[1];
  }
  return std::abs(s) * 0.5;
}

double volume(const HalfspacePolytope& poly, Exact2D) {
  return polygon_area(vertices_2d(poly));
}

namespace {

long mc_hits(const std::vector<HalfspacePolytope>* polys, const HalfspacePolytope* single,
             const InputBox& within, long samples, uint64_t chunk_seed) {
  Rng rng(chunk_seed);
  long hits = 0;
  for (long s = 0; s < samples; ++s) {
    Vec x = rng.uniform_vec(within.lower, within.upper);
    bool in = false;
    if (single != nullptr) {
      in = single->contains(x);
    } else {
      for (const auto& p : *polys)
        if (p.contains(x)) { in = true; break; }
    }
    if (in) ++hits;
  }
  return hits;
}

double mc_volume(const std::vector<HalfspacePolytope>* polys, const HalfspacePolytope* single,
                 const MonteCarlo& mc, const InputBox& within) {
  require(mc.samples > 0, ErrorCode::InvalidArgument, "monte carlo: samples must be positive");
  const long chunk = 16384;
  long nchunks = (mc.samples + chunk - 1) / chunk;
  Rng master(mc.seed);
  std::vector<uint64_t> seeds;
  seeds.reserve(nchunks);
  for (long i = 0; i < nchunks; ++i) seeds.push_back(master.derive(i).seed());
  long total_hits = 0;
  int threads = std::max(1, mc.threads);
  if (threads == 1 || nchunks == 1) {
    for (long i = 0; i < nchunks; ++i) {
      long n = std::min(chunk, mc.samples - i * chunk);
      total_hits += mc_hits(polys, single, within, n, seeds[i]);
    }
  } else {
    // Chunks have fixed seeds and are summed in chunk order, so the result
    // is identical for any thread count.
    std::vector<std::future<long>> futs;
    futs.reserve(nchunks);
    for (long i = 0; i < nchunks; ++i) {
      long n = std::min(chunk, mc.samples - i * chunk);
      futs.push_back(std::async(std::launch::async, mc_hits, polys, single, within, n, seeds[i]));
    }
    for (auto& f : futs) total_hits += f.get();
  }
  return within.volume() * static_cast<double>(total_hits) / static_cast<double>(mc.samples);
}

// Exact union area of convex 2-D polytopes by inclusion-exclusion:
// |P1 u R| = |P1| + |R| - |P1 n R| applied recursively over the member list.
double union_area_rec(std::vector<HalfspacePolytope> polys, int depth, long* evals) {
  constexpr double kAreaEps = 1e-12;
  std::vector<std::pair<HalfspacePolytope, double>> live;
  for (auto& p : polys) {
    require(++(*evals) < 200000, ErrorCode::Numeric,
            "volume_of_union: exact union recursion budget exceeded");
    double a = volume(p, Exact2D{});
    if (a > kAreaEps) live.emplace_back(std::move(p), a);
  }
  if (live.empty()) return 0.0;
  double total = 0.0;
  while (!live.empty()) {
    auto [head, head_area] = std::move(live.front());
    live.erase(live.begin());
    std::vector<HalfspacePolytope> overlaps;
    for (const auto& [q, qa] : live) {
      HalfspacePolytope inter = head;
      inter.append(q);
      overlaps.push_back(std::move(inter));
    }
    total += head_area;
    if (!overlaps.empty()) total -= union_area_rec(std::move(overlaps), depth + 1, evals);
  }
  return total;
}

}  // namespace

double volume(const HalfspacePolytope& poly, const MonteCarlo& mc, const InputBox& within) {
  return mc_volume(nullptr, &poly, mc, within);
}

double volume_of_union(const std::vector<HalfspacePolytope>& polys, Exact2D) {
  long evals = 0;
  return union_area_rec(polys, 0, &evals);
}

double volume_of_union(const std::vector<HalfspacePolytope>& polys, const MonteCarlo& mc,
                       const InputBox& within) {
  return mc_volume(&polys, nullptr, mc, within);
}

}  // namespace relucert
