#include "property.hpp"

#include <json.hpp>

namespace relucert {

using nlohmann::json;

InputBox::InputBox(Vec lo, Vec hi) : lower(std::move(lo)), upper(std::move(hi)) {
  require(lower.size() == upper.size(), ErrorCode::Validation,
          "input box: lower/upper length mismatch");
  require(lower.size() > 0, ErrorCode::Validation, "input box: empty");
  require(lower.allFinite() && upper.allFinite(), ErrorCode::Validation,
          "input box: non-finite bound");
  for (Eigen::Index i = 0; i < lower.size(); ++i)
    require(lower[i] <= upper[i], ErrorCode::Validation,
            "input box: lower > upper at coordinate " + std::to_string(i));
}

double InputBox::volume() const {
  double v = 1.0;
  for (Eigen::Index i = 0; i < dim(); ++i) v *= upper[i] - lower[i];
  return v;
}

bool InputBox::contains(const Vec& x, double tol) const {
  if (x.size() != dim()) return false;
  for (Eigen::Index i = 0; i < dim(); ++i)
    if (x[i] < lower[i] - tol || x[i] > upper[i] + tol) return false;
  return true;
}

OutputPolytope::OutputPolytope(Mat A_, Vec b_) : A(std::move(A_)), b(std::move(b_)) {
  require(A.rows() == b.size(), ErrorCode::Validation,
          "output polytope: A rows != b length");
  require(A.allFinite() && b.allFinite(), ErrorCode::Validation,
          "output polytope: non-finite entry");
}

std::pair<InputBox, OutputPolytope> robustness_to_polytope(
    const RobustnessSpec& spec, Eigen::Index output_dim, double margin) {
  require(spec.epsilon >= 0.0, ErrorCode::Validation, "robustness: epsilon < 0");
  require(spec.label >= 0 && spec.label < output_dim, ErrorCode::Validation,
          "robustness: label out of range");
  Vec lo = spec.center.array() - spec.epsilon;
  Vec hi = spec.center.array() + spec.epsilon;
  Eigen::Index m = output_dim;
  Mat A = Mat::Zero(std::max<Eigen::Index>(m - 1, 0), m);
  Vec b = Vec::Constant(std::max<Eigen::Index>(m - 1, 0), -margin);
  Eigen::Index r = 0;
  for (Eigen::Index j = 0; j < m; ++j) {
    if (j == spec.label) continue;
    A(r, j) = 1.0;
    A(r, spec.label) = -1.0;
    ++r;
  }
  return {InputBox(std::move(lo), std::move(hi)), OutputPolytope(std::move(A), std::move(b))};
}

bool satisfies(const Vec& y, const OutputPolytope& post, double tol) {
  require(y.size() == post.dim(), ErrorCode::Dimension,
          "satisfies: output length " + std::to_string(y.size()) +
              " != polytope dim " + std::to_string(post.dim()));
  if (post.rows() == 0) return true;
  Vec slack = post.A * y - post.b;
  return (slack.array() <= tol).all();
}

namespace {

Vec parse_vec(const json& j, const std::string& what) {
  require(j.is_array() && !j.empty(), ErrorCode::Validation, what + ": expected a non-empty array");
  Vec v(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    require(j[i].is_number(), ErrorCode::Validation, what + ": non-numeric entry");
    v[i] = j[i].get<double>();
  }
  return v;
}

Mat parse_mat(const json& j, const std::string& what) {
  require(j.is_array() && !j.empty() && j[0].is_array(), ErrorCode::Validation,
          what + ": expected an array of rows");
  size_t cols = j[0].size();
  Mat m(j.size(), cols);
  for (size_t r = 0; r < j.size(); ++r) {
    require(j[r].is_array() && j[r].size() == cols, ErrorCode::Validation, what + ": ragged matrix");
    for (size_t c = 0; c < cols; ++c) m(r, c) = j[r][c].get<double>();
  }
  return m;
}

}  // namespace

Problem parse_spec_json(const std::string& json_text, Eigen::Index input_dim,
                        Eigen::Index output_dim, double robustness_margin) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("spec JSON parse error: ") + e.what());
  }
  Problem p;
  try {
    if (j.contains("robustness")) {
      const auto& jr = j["robustness"];
      RobustnessSpec spec;
      spec.center = parse_vec(jr.at("center"), "robustness.center");
      require(spec.center.size() == input_dim, ErrorCode::Dimension,
              "robustness.center length != network input dim");
      require(jr.contains("epsilon") && jr["epsilon"].is_number(), ErrorCode::Validation,
              "robustness.epsilon missing");
      spec.epsilon = jr["epsilon"].get<double>();
      spec.label = jr.value("label", 0);
      auto [box, post] = robustness_to_polytope(spec, output_dim, robustness_margin);
      p.box = std::move(box);
      p.post = std::move(post);
      p.robustness = spec;
    } else {
      require(j.contains("input_box"), ErrorCode::Validation,
              "spec JSON: expected 'robustness' or 'input_box'");
      const auto& jb = j["input_box"];
      p.box = InputBox(parse_vec(jb.at("lower"), "input_box.lower"),
                       parse_vec(jb.at("upper"), "input_box.upper"));
      require(p.box.dim() == input_dim, ErrorCode::Dimension,
              "input_box dimension != network input dim");
      if (j.contains("output_polytope")) {
        const auto& jp = j["output_polytope"];
        Mat A = parse_mat(jp.at("A"), "output_polytope.A");
        Vec b = parse_vec(jp.at("b"), "output_polytope.b");
        p.post = OutputPolytope(std::move(A), std::move(b));
        require(p.post.dim() == output_dim, ErrorCode::Dimension,
                "output_polytope column count != network output dim");
      } else {
        // Empty constraint set: every output satisfies the post.
        p.post = OutputPolytope(Mat::Zero(0, output_dim), Vec::Zero(0));
      }
    }
    if (j.contains("proportion")) {
      double prop = j["proportion"].get<double>();
      require(prop >= 0.0 && prop <= 1.0, ErrorCode::Validation,
              "proportion must lie in [0,1]");
      p.proportion = prop;
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("spec JSON error: ") + e.what());
  }
  return p;
}

}  // namespace relucert
