#include "imbal/nn.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "imbal/losses.hpp"

namespace imbal {

Tensor::Tensor(std::vector<int> s) : shape(std::move(s)) {
  v.assign(numel(shape), 0.0);
}

std::size_t Tensor::numel(const std::vector<int>& shape) {
  std::size_t n = 1;
  for (int d : shape) {
    if (d <= 0) throw std::invalid_argument("Tensor: non-positive dimension");
    n *= static_cast<std::size_t>(d);
  }
  return n;
}

Activation activation_from_string(const std::string& name) {
  if (name == "relu") return Activation::Relu;
  if (name == "relu6") return Activation::Relu6;
  if (name == "swish") return Activation::Swish;
  throw std::invalid_argument("unknown activation: " + name);
}

std::string to_string(Activation a) {
  switch (a) {
    case Activation::Relu: return "relu";
    case Activation::Relu6: return "relu6";
    case Activation::Swish: return "swish";
  }
  return "?";
}

void NetConfig::validate() const {
  if (in_channels < 1) throw std::invalid_argument("NetConfig: in_channels must be >= 1");
  if (channels.size() < 1 || channels.size() > 4)
    throw std::invalid_argument("NetConfig: 1-4 conv stages supported");
  for (int c : channels)
    if (c < 1) throw std::invalid_argument("NetConfig: channel counts must be >= 1");
  if (num_classes < 1) throw std::invalid_argument("NetConfig: num_classes must be >= 1");
}

namespace {

inline double act_forward(double x, Activation a) {
  switch (a) {
    case Activation::Relu: return x > 0.0 ? x : 0.0;
    case Activation::Relu6: return std::min(std::max(x, 0.0), 6.0);
    case Activation::Swish: return x * stable_sigmoid(x);
  }
  return 0.0;
}

inline double act_derivative(double x, Activation a) {
  switch (a) {
    case Activation::Relu: return x > 0.0 ? 1.0 : 0.0;
    case Activation::Relu6: return (x > 0.0 && x < 6.0) ? 1.0 : 0.0;
    case Activation::Swish: {
      const double s = stable_sigmoid(x);
      return s * (1.0 + x * (1.0 - s));
    }
  }
  return 0.0;
}

// 3x3, stride 2, padding 1
inline int conv_out_dim(int in) { return (in - 1) / 2 + 1; }

std::string conv_name(std::size_t stage, const char* leaf) {
  return "conv" + std::to_string(stage) + "." + leaf;
}

}  // namespace

MiniNet MiniNet::init(const NetConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  MiniNet net;
  net.cfg = cfg;
  std::mt19937_64 rng(seed);
  int in_c = cfg.in_channels;
  for (std::size_t s = 0; s < cfg.channels.size(); ++s) {
    const int out_c = cfg.channels[s];
    Tensor w({out_c, in_c, 3, 3});
    const double stddev = std::sqrt(2.0 / (in_c * 9));
    std::normal_distribution<double> dist(0.0, stddev);
    for (double& x : w.v) x = dist(rng);
    net.params[conv_name(s, "w")] = std::move(w);
    net.params[conv_name(s, "b")] = Tensor({out_c});
    in_c = out_c;
  }
  const int features = cfg.channels.back();
  Tensor head_w({cfg.num_classes, features});
  std::normal_distribution<double> dist(0.0, std::sqrt(1.0 / features));
  for (double& x : head_w.v) x = dist(rng);
  net.params["head.w"] = std::move(head_w);
  net.params["head.b"] = Tensor({cfg.num_classes});
  return net;
}

int MiniNet::min_input_size() const {
  return 1 << static_cast<int>(cfg.channels.size());
}

Matrix forward(const MiniNet& net, const Tensor& batch, ForwardCache* cache) {
  if (batch.shape.size() != 4)
    throw std::invalid_argument("forward: batch must be B x C x H x W");
  const int b = batch.shape[0];
  const int in_c0 = batch.shape[1];
  int h = batch.shape[2];
  int w = batch.shape[3];
  if (in_c0 != net.cfg.in_channels)
    throw std::invalid_argument("forward: channel count mismatch");
  const int min_sz = net.min_input_size();
  if (h < min_sz || w < min_sz)
    throw std::invalid_argument("forward: input below minimum size " +
                                std::to_string(min_sz));

  ForwardCache local;
  ForwardCache& c = cache ? *cache : local;
  c.batch = b;
  c.height = h;
  c.width = w;
  c.input = batch;
  c.pre_activation.clear();
  c.activated.clear();

  const Tensor* cur = &c.input;
  int in_c = in_c0;
  for (std::size_t s = 0; s < net.num_stages(); ++s) {
    const Tensor& wt = net.params.at(conv_name(s, "w"));
    const Tensor& bt = net.params.at(conv_name(s, "b"));
    const int out_c = wt.shape[0];
    const int oh = conv_out_dim(h);
    const int ow = conv_out_dim(w);
    Tensor pre({b, out_c, oh, ow});
    for (int bi = 0; bi < b; ++bi) {
      for (int oc = 0; oc < out_c; ++oc) {
        for (int oy = 0; oy < oh; ++oy) {
          for (int ox = 0; ox < ow; ++ox) {
            double acc = bt.v[oc];
            for (int ic = 0; ic < in_c; ++ic) {
              for (int ky = 0; ky < 3; ++ky) {
                const int iy = oy * 2 - 1 + ky;
                if (iy < 0 || iy >= h) continue;
                for (int kx = 0; kx < 3; ++kx) {
                  const int ix = ox * 2 - 1 + kx;
                  if (ix < 0 || ix >= w) continue;
                  acc += wt.v[((static_cast<std::size_t>(oc) * in_c + ic) * 3 + ky) * 3 + kx] *
                         cur->v[((static_cast<std::size_t>(bi) * in_c + ic) * h + iy) * w + ix];
                }
              }
            }
            pre.v[((static_cast<std::size_t>(bi) * out_c + oc) * oh + oy) * ow + ox] = acc;
          }
        }
      }
    }
    Tensor act = pre;
    for (double& x : act.v) x = act_forward(x, net.cfg.activation);
    c.pre_activation.push_back(std::move(pre));
    c.activated.push_back(std::move(act));
    cur = &c.activated.back();
    in_c = out_c;
    h = oh;
    w = ow;
  }

  // global average pool
  const int features = in_c;
  c.pooled = Tensor({b, features});
  const double inv_hw = 1.0 / (static_cast<double>(h) * w);
  for (int bi = 0; bi < b; ++bi) {
    for (int f = 0; f < features; ++f) {
      double acc = 0.0;
      const std::size_t base = (static_cast<std::size_t>(bi) * features + f) *
                               static_cast<std::size_t>(h) * w;
      for (int i = 0; i < h * w; ++i) acc += cur->v[base + i];
      c.pooled.v[static_cast<std::size_t>(bi) * features + f] = acc * inv_hw;
    }
  }

  const Tensor& hw_ = net.params.at("head.w");
  const Tensor& hb = net.params.at("head.b");
  const int num_classes = net.cfg.num_classes;
  c.logits = Matrix(b, num_classes);
  c.probs = Matrix(b, num_classes);
  for (int bi = 0; bi < b; ++bi) {
    for (int k = 0; k < num_classes; ++k) {
      double acc = hb.v[k];
      for (int f = 0; f < features; ++f)
        acc += hw_.v[static_cast<std::size_t>(k) * features + f] *
               c.pooled.v[static_cast<std::size_t>(bi) * features + f];
      c.logits.at(bi, k) = acc;
      c.probs.at(bi, k) = stable_sigmoid(acc);
    }
  }
  return c.probs;
}

ParamMap backward(const MiniNet& net, const ForwardCache& cache, const Matrix& loss_grad) {
  if (cache.pre_activation.size() != net.num_stages())
    throw std::invalid_argument("backward: cache does not match this net");
  if (loss_grad.rows != static_cast<std::size_t>(cache.batch) ||
      loss_grad.cols != static_cast<std::size_t>(net.cfg.num_classes))
    throw std::invalid_argument("backward: loss gradient shape mismatch");

  ParamMap grads;
  for (const auto& [name, t] : net.params) grads[name] = Tensor(t.shape);

  const int b = cache.batch;
  const int num_classes = net.cfg.num_classes;
  const int features = net.cfg.channels.back();

  // dL/dlogit through the sigmoid head
  Matrix dlogit(b, num_classes);
  for (int bi = 0; bi < b; ++bi)
    for (int k = 0; k < num_classes; ++k) {
      const double p = cache.probs.at(bi, k);
      dlogit.at(bi, k) = loss_grad.at(bi, k) * p * (1.0 - p);
    }

  const Tensor& head_w = net.params.at("head.w");
  Tensor& d_head_w = grads.at("head.w");
  Tensor& d_head_b = grads.at("head.b");
  Tensor d_pooled({b, features});
  for (int bi = 0; bi < b; ++bi) {
    for (int k = 0; k < num_classes; ++k) {
      const double d = dlogit.at(bi, k);
      d_head_b.v[k] += d;
      for (int f = 0; f < features; ++f) {
        d_head_w.v[static_cast<std::size_t>(k) * features + f] +=
            d * cache.pooled.v[static_cast<std::size_t>(bi) * features + f];
        d_pooled.v[static_cast<std::size_t>(bi) * features + f] +=
            d * head_w.v[static_cast<std::size_t>(k) * features + f];
      }
    }
  }

  // spread the pooled gradient back over the final feature map
  const Tensor& last = cache.activated.back();
  const int lh = last.shape[2];
  const int lw = last.shape[3];
  Tensor d_act({b, features, lh, lw});
  const double inv_hw = 1.0 / (static_cast<double>(lh) * lw);
  for (int bi = 0; bi < b; ++bi)
    for (int f = 0; f < features; ++f) {
      const double d = d_pooled.v[static_cast<std::size_t>(bi) * features + f] * inv_hw;
      const std::size_t base = (static_cast<std::size_t>(bi) * features + f) *
                               static_cast<std::size_t>(lh) * lw;
      for (int i = 0; i < lh * lw; ++i) d_act.v[base + i] = d;
    }

  for (int s = static_cast<int>(net.num_stages()) - 1; s >= 0; --s) {
    const Tensor& pre = cache.pre_activation[s];
    const Tensor& input = (s == 0) ? cache.input : cache.activated[s - 1];
    const Tensor& wt = net.params.at(conv_name(static_cast<std::size_t>(s), "w"));
    Tensor& dw = grads.at(conv_name(static_cast<std::size_t>(s), "w"));
    Tensor& db = grads.at(conv_name(static_cast<std::size_t>(s), "b"));

    const int out_c = pre.shape[1];
    const int oh = pre.shape[2];
    const int ow = pre.shape[3];
    const int in_c = input.shape[1];
    const int ih = input.shape[2];
    const int iw = input.shape[3];

    Tensor d_pre = d_act;  // same shape as pre
    for (std::size_t i = 0; i < d_pre.v.size(); ++i)
      d_pre.v[i] *= act_derivative(pre.v[i], net.cfg.activation);

    Tensor d_input({b, in_c, ih, iw});
    for (int bi = 0; bi < b; ++bi) {
      for (int oc = 0; oc < out_c; ++oc) {
        for (int oy = 0; oy < oh; ++oy) {
          for (int ox = 0; ox < ow; ++ox) {
            const double d =
                d_pre.v[((static_cast<std::size_t>(bi) * out_c + oc) * oh + oy) * ow + ox];
            if (d == 0.0) continue;
            db.v[oc] += d;
            for (int ic = 0; ic < in_c; ++ic) {
              for (int ky = 0; ky < 3; ++ky) {
                const int iy = oy * 2 - 1 + ky;
                if (iy < 0 || iy >= ih) continue;
                for (int kx = 0; kx < 3; ++kx) {
                  const int ix = ox * 2 - 1 + kx;
                  if (ix < 0 || ix >= iw) continue;
                  const std::size_t wi =
                      ((static_cast<std::size_t>(oc) * in_c + ic) * 3 + ky) * 3 + kx;
                  const std::size_t ii =
                      ((static_cast<std::size_t>(bi) * in_c + ic) * ih + iy) * iw + ix;
                  dw.v[wi] += d * input.v[ii];
                  d_input.v[ii] += d * wt.v[wi];
                }
              }
            }
          }
        }
      }
    }
    d_act = std::move(d_input);
  }
  return grads;
}

std::vector<double> class_activation_map(const MiniNet& net, const Tensor& sample,
                                         int class_index, int* out_h, int* out_w) {
  if (class_index < 0 || class_index >= net.cfg.num_classes)
    throw std::invalid_argument("class_activation_map: class index out of range");
  if (sample.shape.size() != 4 || sample.shape[0] != 1)
    throw std::invalid_argument("class_activation_map: expected a single sample");

  ForwardCache cache;
  forward(net, sample, &cache);
  const Tensor& feat = cache.activated.back();
  const int features = feat.shape[1];
  const int fh = feat.shape[2];
  const int fw = feat.shape[3];
  const Tensor& head_w = net.params.at("head.w");

  std::vector<double> cam(static_cast<std::size_t>(fh) * fw, 0.0);
  for (int f = 0; f < features; ++f) {
    const double wgt = head_w.v[static_cast<std::size_t>(class_index) * features + f];
    const std::size_t base = static_cast<std::size_t>(f) * fh * fw;
    for (int i = 0; i < fh * fw; ++i) cam[i] += wgt * feat.v[base + i];
  }
  const auto [mn_it, mx_it] = std::minmax_element(cam.begin(), cam.end());
  const double mn = *mn_it, mx = *mx_it;
  if (mx - mn > 1e-12)
    for (double& x : cam) x = (x - mn) / (mx - mn);
  else
    for (double& x : cam) x = 0.0;

  const int h = sample.shape[2];
  const int w = sample.shape[3];
  std::vector<double> up(static_cast<std::size_t>(h) * w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      up[static_cast<std::size_t>(y) * w + x] =
          cam[static_cast<std::size_t>(y * fh / h) * fw + (x * fw / w)];
  if (out_h) *out_h = h;
  if (out_w) *out_w = w;
  return up;
}

}  // namespace imbal
