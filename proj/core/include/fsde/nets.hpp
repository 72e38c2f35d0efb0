// core/include/fsde/nets.hpp

// Copyright 2026  fsde contributors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef FSDE_NETS_HPP_
#define FSDE_NETS_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "fsde/rng.hpp"
#include "fsde/synthdata.hpp"

namespace fsde {

// Batched activation: one row per sample, row-major (c, h, w) per row.
// Plain feature batches use h = w = 1 and c = dim.
struct Blob {
  int n = 0, c = 0, h = 1, w = 1;
  Eigen::MatrixXd m;

  Blob() = default;
  Blob(int n_, int c_, int h_, int w_)
      : n(n_), c(c_), h(h_), w(w_),
        m(Eigen::MatrixXd::Zero(n_, static_cast<Eigen::Index>(c_) * h_ * w_)) {}
  Eigen::Index Cols() const { return static_cast<Eigen::Index>(c) * h * w; }
};

// Feature blob (n, d) from a plain matrix.
Blob FeatureBlob(const Eigen::MatrixXd& features);
// Image blob from dataset rows, converting float pixels to double.
Blob DatasetBlob(const DomainDataset& ds, const std::vector<int>& indices);

// Named view into a layer's flat parameter and gradient storage.
struct ParamRef {
  std::string name;
  double* value = nullptr;
  double* grad = nullptr;
  int64_t size = 0;
};

// All layers run in double precision with manually derived gradients.
// Forward with train=true caches what Backward needs; exactly one
// forward/backward pair may be in flight per layer instance.
class Layer {
 public:
  virtual ~Layer() = default;
  virtual Blob Forward(const Blob& in, bool train) = 0;
  virtual Blob Backward(const Blob& grad_out) = 0;       // accumulates grads
  virtual void CollectParams(std::vector<ParamRef>* out) { (void)out; }
  virtual void InitParams(Rng* rng) { (void)rng; }
};

class Conv2d : public Layer {
 public:
  Conv2d(std::string name, int cin, int cout, int k, int stride, int pad);
  Blob Forward(const Blob& in, bool train) override;
  Blob Backward(const Blob& grad_out) override;
  void CollectParams(std::vector<ParamRef>* out) override;
  void InitParams(Rng* rng) override;  // He normal, fan_in = cin*k*k

 private:
  std::string name_;
  int cin_, cout_, k_, stride_, pad_;
  Eigen::MatrixXd w_, dw_;  // cout x (cin*k*k)
  Eigen::VectorXd b_, db_;
  // caches (train mode)
  int in_h_ = 0, in_w_ = 0, n_ = 0, oh_ = 0, ow_ = 0;
  Eigen::MatrixXd cols_;  // (cin*k*k) x (n*oh*ow)
};

// Learnable per-channel affine y = gamma_c * x + beta_c.  Stands in the
// usual normalization slot without any data-dependent statistics, so eval
// and teacher snapshots are unambiguous.
class ChannelAffine : public Layer {
 public:
  explicit ChannelAffine(std::string name, int channels);
  Blob Forward(const Blob& in, bool train) override;
  Blob Backward(const Blob& grad_out) override;
  void CollectParams(std::vector<ParamRef>* out) override;
  void InitParams(Rng* rng) override;  // gamma = 1, beta = 0

 private:
  std::string name_;
  int channels_;
  Eigen::VectorXd gamma_, beta_, dgamma_, dbeta_;
  Blob cached_in_;
};

class Relu : public Layer {
 public:
  Blob Forward(const Blob& in, bool train) override;
  Blob Backward(const Blob& grad_out) override;

 private:
  Eigen::MatrixXd mask_;
  int n_ = 0, c_ = 0, h_ = 0, w_ = 0;
};

// 2x2 mean pooling, stride 2.
class AvgPool2 : public Layer {
 public:
  Blob Forward(const Blob& in, bool train) override;
  Blob Backward(const Blob& grad_out) override;

 private:
  int n_ = 0, c_ = 0, h_ = 0, w_ = 0;
};

class GlobalAvgPool : public Layer {
 public:
  Blob Forward(const Blob& in, bool train) override;
  Blob Backward(const Blob& grad_out) override;

 private:
  int n_ = 0, c_ = 0, h_ = 0, w_ = 0;
};

class Linear : public Layer {
 public:
  Linear(std::string name, int in_dim, int out_dim);
  Blob Forward(const Blob& in, bool train) override;
  Blob Backward(const Blob& grad_out) override;
  void CollectParams(std::vector<ParamRef>* out) override;
  void InitParams(Rng* rng) override;  // He normal, fan_in = in_dim

 private:
  std::string name_;
  int in_dim_, out_dim_;
  Eigen::MatrixXd w_, dw_;  // out_dim x in_dim
  Eigen::VectorXd b_, db_;
  Eigen::MatrixXd cached_in_;
};

// Basic residual block: conv-affine-relu-conv-affine plus a skip path
// (identity, or strided 1x1 conv + affine when shape changes), then relu.
class ResBlock : public Layer {
 public:
  ResBlock(std::string name, int cin, int cout, int stride);
  Blob Forward(const Blob& in, bool train) override;
  Blob Backward(const Blob& grad_out) override;
  void CollectParams(std::vector<ParamRef>* out) override;
  void InitParams(Rng* rng) override;

 private:
  std::unique_ptr<Conv2d> conv1_, conv2_, proj_;
  std::unique_ptr<ChannelAffine> aff1_, aff2_, proj_aff_;
  Eigen::MatrixXd relu1_mask_, out_mask_;
};

struct ArchConfig {
  std::string kind = "small";  // "small" (3 conv blocks) or "resnet18"
  int in_channels = 3;
  int image_size = 32;
  int feature_dim = 128;  // generator output dim d
  int disc_hidden = 64;   // discriminator hidden width
  std::vector<int> widths = {8, 16, 32};  // per-block channel widths

  void Validate() const;  // throws on nonsensical dims
};

ArchConfig DeskArch();   // small backbone, d=128, hidden=64
ArchConfig PaperArch();  // resnet18-shaped backbone, d=512, hidden=512

// A stack of layers with a parameter registry.  Movable, not copyable.
class Network {
 public:
  Network() = default;
  Network(Network&&) = default;
  Network& operator=(Network&&) = default;

  void Append(std::unique_ptr<Layer> layer);
  Blob Forward(const Blob& in, bool train = true);
  // Backpropagates and accumulates parameter gradients; returns input grads.
  Blob Backward(const Blob& grad_out);
  void InitParams(uint64_t seed);
  void ZeroGrad();
  std::vector<ParamRef> Params();
  std::vector<ParamRef> Params() const;  // values readable, grads null
  int64_t ParamCount() const;
  void CopyParamsFrom(const Network& other);  // registry-order, shape-checked

 private:
  std::vector<std::unique_ptr<Layer>> layers_;
};

// images (n,3,s,s) -> features (n,d)
Network MakeFeatureGenerator(const ArchConfig& arch);
// features (n,d) -> class logits (n,2)
Network MakeClassifier(const ArchConfig& arch);
// features (n,d) -> domain logits (n,2); two linear layers with a rectifier
Network MakeDiscriminator(const ArchConfig& arch);

// Frozen copy of a feature generator's parameters; forward only.
class TeacherSnapshot {
 public:
  TeacherSnapshot() = default;
  TeacherSnapshot(const Network& g, const ArchConfig& arch);
  Eigen::MatrixXd Forward(const Blob& images) const;
  const Network& Net() const { return net_; }
  Network& MutableNetForLoad() { return net_; }  // deserialization hook
  const ArchConfig& Arch() const { return arch_; }
  bool Empty() const { return empty_; }

 private:
  ArchConfig arch_;
  mutable Network net_;  // Forward(train=false) leaves no state behind
  bool empty_ = true;
};

struct ModelBundle {
  ArchConfig arch;
  Network g, h, d_ta, d_cs;
};

// Fresh seeded parameters; the two discriminators share architecture but
// have independently drawn parameters.
ModelBundle BuildModels(const ArchConfig& arch, uint64_t seed);

// Inference forward over dataset rows in fixed-size chunks (bounds the
// im2col working set); train=false throughout, rows concatenated in order.
Eigen::MatrixXd ForwardInChunks(Network* net, const DomainDataset& ds,
                                const std::vector<int>& indices,
                                int chunk_size = 128);

}  // namespace fsde

#endif  // FSDE_NETS_HPP_
