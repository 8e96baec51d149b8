#include "model.hpp"

#include <cmath>

#include <json.hpp>

#include "util.hpp"

namespace relucert {

using nlohmann::json;

Network::Network(std::vector<Layer> layers) : layers_(std::move(layers)) {
  require(!layers_.empty(), ErrorCode::Validation, "network has no layers");
  for (size_t i = 0; i < layers_.size(); ++i) {
    const Layer& l = layers_[i];
    require(l.weight.size() > 0, ErrorCode::Validation,
            "layer " + std::to_string(i) + ": empty weight matrix");
    require(l.bias.size() == l.weight.rows(), ErrorCode::Validation,
            "layer " + std::to_string(i) + ": bias length " +
                std::to_string(l.bias.size()) + " != weight rows " +
                std::to_string(l.weight.rows()));
    require(l.weight.allFinite() && l.bias.allFinite(), ErrorCode::Validation,
            "layer " + std::to_string(i) + ": non-finite entry");
    if (i > 0) {
      require(l.in_dim() == layers_[i - 1].out_dim(), ErrorCode::Validation,
              "layer " + std::to_string(i) + ": input dim " +
                  std::to_string(l.in_dim()) + " != previous output dim " +
                  std::to_string(layers_[i - 1].out_dim()));
    }
  }
  require(layers_.back().activation == Activation::Identity,
          ErrorCode::Validation, "final layer activation must be identity");
}

Vec Network::forward(const Vec& x) const {
  require(x.size() == input_dim(), ErrorCode::Dimension,
          "forward: input length " + std::to_string(x.size()) +
              " != input dim " + std::to_string(input_dim()));
  Vec z = x;
  for (const Layer& l : layers_) {
    Vec pre = l.weight * z + l.bias;
    z = (l.activation == Activation::ReLU) ? pre.cwiseMax(0.0) : pre;
  }
  return z;
}

std::vector<Vec> Network::forward_trace(const Vec& x) const {
  require(x.size() == input_dim(), ErrorCode::Dimension,
          "forward_trace: bad input length");
  std::vector<Vec> pres;
  pres.reserve(layers_.size());
  Vec z = x;
  for (const Layer& l : layers_) {
    Vec pre = l.weight * z + l.bias;
    pres.push_back(pre);
    z = (l.activation == Activation::ReLU) ? pre.cwiseMax(0.0) : pre;
  }
  return pres;
}

int Network::predicted_label(const Vec& x) const {
  Vec y = forward(x);
  int best = 0;
  for (Eigen::Index i = 1; i < y.size(); ++i)
    if (y[i] > y[best]) best = static_cast<int>(i);
  return best;
}

namespace {

Activation parse_activation(const std::string& s, size_t layer_idx) {
  if (s == "relu") return Activation::ReLU;
  if (s == "identity") return Activation::Identity;
  throw Error(ErrorCode::Validation, "layer " + std::to_string(layer_idx) +
                                         ": unsupported activation '" + s + "'");
}

}  // namespace

Network load_network(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("model JSON parse error: ") + e.what());
  }
  try {
    require(j.contains("layers") && j["layers"].is_array() && !j["layers"].empty(),
            ErrorCode::Validation, "model JSON: missing or empty 'layers'");
    Eigen::Index expected_in = -1;
    if (j.contains("input_dim")) {
      require(j["input_dim"].is_number_integer() && j["input_dim"].get<int>() > 0,
              ErrorCode::Validation, "model JSON: input_dim must be a positive integer");
      expected_in = j["input_dim"].get<int>();
    }
    std::vector<Layer> layers;
    size_t idx = 0;
    for (const auto& jl : j["layers"]) {
      require(jl.contains("weights") && jl["weights"].is_array() && !jl["weights"].empty(),
              ErrorCode::Validation, "layer " + std::to_string(idx) + ": missing weights");
      const auto& rows = jl["weights"];
      size_t ncols = rows[0].size();
      require(ncols > 0, ErrorCode::Validation,
              "layer " + std::to_string(idx) + ": empty weight row");
      Mat W(rows.size(), ncols);
      for (size_t r = 0; r < rows.size(); ++r) {
        require(rows[r].is_array() && rows[r].size() == ncols, ErrorCode::Validation,
                "layer " + std::to_string(idx) + ": ragged weight matrix");
        for (size_t c = 0; c < ncols; ++c) {
          require(rows[r][c].is_number(), ErrorCode::Validation,
                  "layer " + std::to_string(idx) + ": non-numeric weight");
          W(r, c) = rows[r][c].get<double>();
        }
      }
      Vec b = Vec::Zero(W.rows());
      if (jl.contains("bias")) {
        require(jl["bias"].is_array() && jl["bias"].size() == static_cast<size_t>(W.rows()),
                ErrorCode::Validation,
                "layer " + std::to_string(idx) + ": bias length mismatch");
        for (size_t r = 0; r < jl["bias"].size(); ++r) b[r] = jl["bias"][r].get<double>();
      }
      std::string act = jl.value("activation", std::string("relu"));
      layers.push_back(Layer{std::move(W), std::move(b), parse_activation(act, idx)});
      ++idx;
    }
    if (expected_in >= 0) {
      require(layers.front().in_dim() == expected_in, ErrorCode::Validation,
              "layer 0: input dim " + std::to_string(layers.front().in_dim()) +
                  " != declared input_dim " + std::to_string(expected_in));
    }
    return Network(std::move(layers));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("model JSON error: ") + e.what());
  }
}

Network load_network_file(const std::string& path) {
  return load_network(read_file(path));
}

std::string serialize_network(const Network& net) {
  json j;
  j["input_dim"] = static_cast<int>(net.input_dim());
  j["layers"] = json::array();
  for (const Layer& l : net.layers()) {
    json jl;
    jl["weights"] = json::array();
    for (Eigen::Index r = 0; r < l.weight.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < l.weight.cols(); ++c) row.push_back(l.weight(r, c));
      jl["weights"].push_back(std::move(row));
    }
    jl["bias"] = json::array();
    for (Eigen::Index r = 0; r < l.bias.size(); ++r) jl["bias"].push_back(l.bias[r]);
    jl["activation"] = l.activation == Activation::ReLU ? "relu" : "identity";
    j["layers"].push_back(std::move(jl));
  }
  return j.dump(2);
}

}  // namespace relucert
