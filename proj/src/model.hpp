#pragma once

#include <string>
#include <vector>

#include "types.hpp"

namespace relucert {

enum class Activation { ReLU, Identity };

struct Layer {
  Mat weight;  // rows = output dim, cols = input dim
  Vec bias;
  Activation activation = Activation::ReLU;

  Eigen::Index in_dim() const { return weight.cols(); }
  Eigen::Index out_dim() const { return weight.rows(); }
};

// Feed-forward network of affine layers with pointwise ReLU activations and
// an Identity output layer. Immutable after construction; all operations
// are pure and thread-safe.
class Network {
 public:
  Network(std::vector<Layer> layers);

  const std::vector<Layer>& layers() const { return layers_; }
  const Layer& layer(size_t i) const { return layers_[i]; }
  size_t num_layers() const { return layers_.size(); }
  Eigen::Index input_dim() const { return layers_.front().in_dim(); }
  Eigen::Index output_dim() const { return layers_.back().out_dim(); }
  size_t num_hidden_layers() const { return layers_.size() - 1; }

  Vec forward(const Vec& x) const;
  // Pre-activation vectors of every layer (the last one is the output).
  std::vector<Vec> forward_trace(const Vec& x) const;
  int predicted_label(const Vec& x) const;  // argmax, lowest index wins ties

 private:
  std::vector<Layer> layers_;
};

Network load_network(const std::string& json_text);
Network load_network_file(const std::string& path);
std::string serialize_network(const Network& net);

}  // namespace relucert
