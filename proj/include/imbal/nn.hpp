#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "imbal/matrix.hpp"

namespace imbal {

/// Flat tensor with an explicit shape; storage is row-major.
struct Tensor {
  std::vector<int> shape;
  std::vector<double> v;

  Tensor() = default;
  explicit Tensor(std::vector<int> s);

  std::size_t size() const { return v.size(); }
  static std::size_t numel(const std::vector<int>& shape);
};

/// Named parameters in deterministic (sorted) iteration order.
using ParamMap = std::map<std::string, Tensor>;

enum class Activation { Relu, Relu6, Swish };

Activation activation_from_string(const std::string& name);
std::string to_string(Activation a);

struct NetConfig {
  int in_channels = 1;
  std::vector<int> channels = {16, 32, 64};  // one 3x3 stride-2 conv per entry
  Activation activation = Activation::Swish;
  int num_classes = 14;

  void validate() const;
};

/// Small conv net: stacked 3x3 stride-2 convs, global average pooling and a
/// per-class sigmoid head. GAP makes the parameter set independent of the
/// input resolution.
struct MiniNet {
  NetConfig cfg;
  ParamMap params;  // convN.w [out,in,3,3], convN.b [out], head.w [C,F], head.b [C]

  static MiniNet init(const NetConfig& cfg, std::uint64_t seed);
  int min_input_size() const;
  std::size_t num_stages() const { return cfg.channels.size(); }
};

struct ForwardCache {
  int batch = 0, height = 0, width = 0;
  Tensor input;                        // B,inC,H,W
  std::vector<Tensor> pre_activation;  // per conv stage: B,outC,h,w
  std::vector<Tensor> activated;       // per conv stage
  Tensor pooled;                       // B,F
  Matrix logits;                       // B,C
  Matrix probs;                        // B,C
};

/// Runs the net on a B x inC x H x W batch. Throws if H or W is below the
/// minimum size. When cache is non-null the intermediates needed by
/// backward are retained.
Matrix forward(const MiniNet& net, const Tensor& batch, ForwardCache* cache = nullptr);

/// Gradients of the scalar loss w.r.t. every parameter, given dL/dp (the
/// gradient w.r.t. the sigmoid outputs) and the cache from the matching
/// forward call.
ParamMap backward(const MiniNet& net, const ForwardCache& cache, const Matrix& loss_grad);

/// CAM for one sample (1 x inC x H x W): projects the final feature maps
/// through the head weights of class k, min-max normalizes to [0,1] and
/// upsamples to the input size by nearest neighbor. Returns H x W values.
std::vector<double> class_activation_map(const MiniNet& net, const Tensor& sample,
                                         int class_index, int* out_h = nullptr,
                                         int* out_w = nullptr);

}  // namespace imbal
