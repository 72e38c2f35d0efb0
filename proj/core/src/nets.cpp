// core/src/nets.cpp

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

#include "fsde/nets.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace fsde {

namespace {

constexpr uint64_t kNetInitStream = 0x4e4554u;

void CheckImageBlob(const Blob& in, int cin, const std::string& who) {
  if (in.c != cin) {
    throw std::invalid_argument(who + ": expected " + std::to_string(cin) +
                                " input channels, got " + std::to_string(in.c));
  }
  if (in.m.rows() != in.n || in.m.cols() != in.Cols()) {
    throw std::invalid_argument(who + ": blob storage/shape mismatch");
  }
}

}  // namespace

Blob FeatureBlob(const Eigen::MatrixXd& features) {
  Blob b;
  b.n = static_cast<int>(features.rows());
  b.c = static_cast<int>(features.cols());
  b.h = b.w = 1;
  b.m = features;
  return b;
}

Blob DatasetBlob(const DomainDataset& ds, const std::vector<int>& indices) {
  if (indices.empty()) throw std::invalid_argument("DatasetBlob: empty index list");
  const ImageBuf& first = ds.samples.at(indices[0]).image;
  Blob b(static_cast<int>(indices.size()), first.channels, first.height,
         first.width);
  for (size_t r = 0; r < indices.size(); ++r) {
    const ImageBuf& img = ds.samples.at(indices[r]).image;
    if (!img.SameShape(first)) {
      throw std::invalid_argument("DatasetBlob: mixed image shapes");
    }
    for (Eigen::Index j = 0; j < b.Cols(); ++j) {
      b.m(static_cast<Eigen::Index>(r), j) = img.data[j];
    }
  }
  return b;
}

// ---------- Conv2d ----------

Conv2d::Conv2d(std::string name, int cin, int cout, int k, int stride, int pad)
    : name_(std::move(name)), cin_(cin), cout_(cout), k_(k), stride_(stride),
      pad_(pad) {
  if (cin < 1 || cout < 1 || k < 1 || stride < 1 || pad < 0) {
    throw std::invalid_argument("Conv2d '" + name_ + "': invalid dims");
  }
  w_ = Eigen::MatrixXd::Zero(cout_, static_cast<Eigen::Index>(cin_) * k_ * k_);
  dw_ = w_;
  b_ = Eigen::VectorXd::Zero(cout_);
  db_ = b_;
}

Blob Conv2d::Forward(const Blob& in, bool train) {
  CheckImageBlob(in, cin_, "Conv2d '" + name_ + "'");
  const int oh = (in.h + 2 * pad_ - k_) / stride_ + 1;
  const int ow = (in.w + 2 * pad_ - k_) / stride_ + 1;
  if (oh < 1 || ow < 1) {
    throw std::invalid_argument("Conv2d '" + name_ + "': output collapses");
  }
  const int ohw = oh * ow;
  const Eigen::Index rows = static_cast<Eigen::Index>(cin_) * k_ * k_;
  Eigen::MatrixXd cols =
      Eigen::MatrixXd::Zero(rows, static_cast<Eigen::Index>(in.n) * ohw);
  for (int i = 0; i < in.n; ++i) {
    for (int ci = 0; ci < cin_; ++ci) {
      for (int ky = 0; ky < k_; ++ky) {
        for (int kx = 0; kx < k_; ++kx) {
          const Eigen::Index r = (static_cast<Eigen::Index>(ci) * k_ + ky) * k_ + kx;
          for (int oy = 0; oy < oh; ++oy) {
            const int iy = oy * stride_ + ky - pad_;
            if (iy < 0 || iy >= in.h) continue;
            for (int ox = 0; ox < ow; ++ox) {
              const int ix = ox * stride_ + kx - pad_;
              if (ix < 0 || ix >= in.w) continue;
              cols(r, static_cast<Eigen::Index>(i) * ohw + oy * ow + ox) =
                  in.m(i, (static_cast<Eigen::Index>(ci) * in.h + iy) * in.w + ix);
            }
          }
        }
      }
    }
  }

  Eigen::MatrixXd prod = w_ * cols;  // cout x (n*ohw)
  Blob out(in.n, cout_, oh, ow);
  for (int i = 0; i < in.n; ++i) {
    for (int co = 0; co < cout_; ++co) {
      for (int q = 0; q < ohw; ++q) {
        out.m(i, static_cast<Eigen::Index>(co) * ohw + q) =
            prod(co, static_cast<Eigen::Index>(i) * ohw + q) + b_(co);
      }
    }
  }

  if (train) {
    in_h_ = in.h;
    in_w_ = in.w;
    n_ = in.n;
    oh_ = oh;
    ow_ = ow;
    cols_ = std::move(cols);
  }
  return out;
}

Blob Conv2d::Backward(const Blob& grad_out) {
  const int ohw = oh_ * ow_;
  if (grad_out.n != n_ || grad_out.c != cout_ || grad_out.h != oh_ ||
      grad_out.w != ow_) {
    throw std::invalid_argument("Conv2d '" + name_ + "': backward shape mismatch");
  }
  Eigen::MatrixXd dout(cout_, static_cast<Eigen::Index>(n_) * ohw);
  for (int i = 0; i < n_; ++i) {
    for (int co = 0; co < cout_; ++co) {
      for (int q = 0; q < ohw; ++q) {
        dout(co, static_cast<Eigen::Index>(i) * ohw + q) =
            grad_out.m(i, static_cast<Eigen::Index>(co) * ohw + q);
      }
    }
  }

  dw_ += dout * cols_.transpose();
  db_ += dout.rowwise().sum();

  Eigen::MatrixXd dcols = w_.transpose() * dout;  // rows x (n*ohw)
  Blob din(n_, cin_, in_h_, in_w_);
  for (int i = 0; i < n_; ++i) {
    for (int ci = 0; ci < cin_; ++ci) {
      for (int ky = 0; ky < k_; ++ky) {
        for (int kx = 0; kx < k_; ++kx) {
          const Eigen::Index r = (static_cast<Eigen::Index>(ci) * k_ + ky) * k_ + kx;
          for (int oy = 0; oy < oh_; ++oy) {
            const int iy = oy * stride_ + ky - pad_;
            if (iy < 0 || iy >= in_h_) continue;
            for (int ox = 0; ox < ow_; ++ox) {
              const int ix = ox * stride_ + kx - pad_;
              if (ix < 0 || ix >= in_w_) continue;
              din.m(i, (static_cast<Eigen::Index>(ci) * in_h_ + iy) * in_w_ + ix) +=
                  dcols(r, static_cast<Eigen::Index>(i) * ohw + oy * ow_ + ox);
            }
          }
        }
      }
    }
  }
  return din;
}

void Conv2d::CollectParams(std::vector<ParamRef>* out) {
  out->push_back({name_ + ".w", w_.data(), dw_.data(), w_.size()});
  out->push_back({name_ + ".b", b_.data(), db_.data(), b_.size()});
}

void Conv2d::InitParams(Rng* rng) {
  const double stddev = std::sqrt(2.0 / (static_cast<double>(cin_) * k_ * k_));
  for (Eigen::Index i = 0; i < w_.size(); ++i) w_.data()[i] = rng->Normal(0.0, stddev);
  b_.setZero();
}

// ---------- ChannelAffine ----------

ChannelAffine::ChannelAffine(std::string name, int channels)
    : name_(std::move(name)), channels_(channels) {
  gamma_ = Eigen::VectorXd::Ones(channels_);
  beta_ = Eigen::VectorXd::Zero(channels_);
  dgamma_ = Eigen::VectorXd::Zero(channels_);
  dbeta_ = Eigen::VectorXd::Zero(channels_);
}

Blob ChannelAffine::Forward(const Blob& in, bool train) {
  CheckImageBlob(in, channels_, "ChannelAffine '" + name_ + "'");
  Blob out = in;
  const Eigen::Index hw = static_cast<Eigen::Index>(in.h) * in.w;
  for (int c = 0; c < channels_; ++c) {
    out.m.middleCols(c * hw, hw) =
        gamma_(c) * in.m.middleCols(c * hw, hw).array() + beta_(c);
  }
  if (train) cached_in_ = in;
  return out;
}

Blob ChannelAffine::Backward(const Blob& grad_out) {
  const Eigen::Index hw = static_cast<Eigen::Index>(cached_in_.h) * cached_in_.w;
  Blob din = grad_out;
  for (int c = 0; c < channels_; ++c) {
    dgamma_(c) += (grad_out.m.middleCols(c * hw, hw).array() *
                   cached_in_.m.middleCols(c * hw, hw).array())
                      .sum();
    dbeta_(c) += grad_out.m.middleCols(c * hw, hw).sum();
    din.m.middleCols(c * hw, hw) = gamma_(c) * grad_out.m.middleCols(c * hw, hw);
  }
  return din;
}

void ChannelAffine::CollectParams(std::vector<ParamRef>* out) {
  out->push_back({name_ + ".gamma", gamma_.data(), dgamma_.data(), gamma_.size()});
  out->push_back({name_ + ".beta", beta_.data(), dbeta_.data(), beta_.size()});
}

void ChannelAffine::InitParams(Rng* rng) {
  (void)rng;
  gamma_.setOnes();
  beta_.setZero();
}

// ---------- Relu ----------

Blob Relu::Forward(const Blob& in, bool train) {
  Blob out = in;
  out.m = in.m.cwiseMax(0.0);
  if (train) {
    mask_ = (in.m.array() > 0.0).cast<double>();
    n_ = in.n;
    c_ = in.c;
    h_ = in.h;
    w_ = in.w;
  }
  return out;
}

Blob Relu::Backward(const Blob& grad_out) {
  Blob din = grad_out;
  din.m = grad_out.m.cwiseProduct(mask_);
  din.n = n_;
  din.c = c_;
  din.h = h_;
  din.w = w_;
  return din;
}

// ---------- AvgPool2 ----------

Blob AvgPool2::Forward(const Blob& in, bool train) {
  if (in.h % 2 != 0 || in.w % 2 != 0) {
    throw std::invalid_argument("AvgPool2: input dims must be even");
  }
  const int oh = in.h / 2, ow = in.w / 2;
  Blob out(in.n, in.c, oh, ow);
  for (int i = 0; i < in.n; ++i) {
    for (int c = 0; c < in.c; ++c) {
      const Eigen::Index base_in = static_cast<Eigen::Index>(c) * in.h * in.w;
      const Eigen::Index base_out = static_cast<Eigen::Index>(c) * oh * ow;
      for (int y = 0; y < oh; ++y) {
        for (int x = 0; x < ow; ++x) {
          double s = in.m(i, base_in + (2 * y) * in.w + 2 * x) +
                     in.m(i, base_in + (2 * y) * in.w + 2 * x + 1) +
                     in.m(i, base_in + (2 * y + 1) * in.w + 2 * x) +
                     in.m(i, base_in + (2 * y + 1) * in.w + 2 * x + 1);
          out.m(i, base_out + static_cast<Eigen::Index>(y) * ow + x) = 0.25 * s;
        }
      }
    }
  }
  if (train) {
    n_ = in.n;
    c_ = in.c;
    h_ = in.h;
    w_ = in.w;
  }
  return out;
}

Blob AvgPool2::Backward(const Blob& grad_out) {
  const int oh = h_ / 2, ow = w_ / 2;
  Blob din(n_, c_, h_, w_);
  for (int i = 0; i < n_; ++i) {
    for (int c = 0; c < c_; ++c) {
      const Eigen::Index base_in = static_cast<Eigen::Index>(c) * h_ * w_;
      const Eigen::Index base_out = static_cast<Eigen::Index>(c) * oh * ow;
      for (int y = 0; y < oh; ++y) {
        for (int x = 0; x < ow; ++x) {
          double g = 0.25 * grad_out.m(i, base_out + static_cast<Eigen::Index>(y) * ow + x);
          din.m(i, base_in + (2 * y) * w_ + 2 * x) = g;
          din.m(i, base_in + (2 * y) * w_ + 2 * x + 1) = g;
          din.m(i, base_in + (2 * y + 1) * w_ + 2 * x) = g;
          din.m(i, base_in + (2 * y + 1) * w_ + 2 * x + 1) = g;
        }
      }
    }
  }
  return din;
}

// ---------- GlobalAvgPool ----------

Blob GlobalAvgPool::Forward(const Blob& in, bool train) {
  const Eigen::Index hw = static_cast<Eigen::Index>(in.h) * in.w;
  Blob out(in.n, in.c, 1, 1);
  for (int c = 0; c < in.c; ++c) {
    out.m.col(c) = in.m.middleCols(c * hw, hw).rowwise().mean();
  }
  if (train) {
    n_ = in.n;
    c_ = in.c;
    h_ = in.h;
    w_ = in.w;
  }
  return out;
}

Blob GlobalAvgPool::Backward(const Blob& grad_out) {
  const Eigen::Index hw = static_cast<Eigen::Index>(h_) * w_;
  Blob din(n_, c_, h_, w_);
  const double inv = 1.0 / static_cast<double>(hw);
  for (int c = 0; c < c_; ++c) {
    din.m.middleCols(c * hw, hw) =
        (grad_out.m.col(c) * inv).replicate(1, hw);
  }
  return din;
}

// ---------- Linear ----------

Linear::Linear(std::string name, int in_dim, int out_dim)
    : name_(std::move(name)), in_dim_(in_dim), out_dim_(out_dim) {
  if (in_dim < 1 || out_dim < 1) {
    throw std::invalid_argument("Linear '" + name_ + "': invalid dims");
  }
  w_ = Eigen::MatrixXd::Zero(out_dim_, in_dim_);
  dw_ = w_;
  b_ = Eigen::VectorXd::Zero(out_dim_);
  db_ = b_;
}

Blob Linear::Forward(const Blob& in, bool train) {
  if (in.Cols() != in_dim_) {
    throw std::invalid_argument("Linear '" + name_ + "': expected " +
                                std::to_string(in_dim_) + " inputs, got " +
                                std::to_string(in.Cols()));
  }
  Blob out(in.n, out_dim_, 1, 1);
  out.m = (in.m * w_.transpose()).rowwise() + b_.transpose();
  if (train) cached_in_ = in.m;
  return out;
}

Blob Linear::Backward(const Blob& grad_out) {
  dw_ += grad_out.m.transpose() * cached_in_;
  db_ += grad_out.m.colwise().sum();
  Blob din(static_cast<int>(cached_in_.rows()), in_dim_, 1, 1);
  din.m = grad_out.m * w_;
  return din;
}

void Linear::CollectParams(std::vector<ParamRef>* out) {
  out->push_back({name_ + ".w", w_.data(), dw_.data(), w_.size()});
  out->push_back({name_ + ".b", b_.data(), db_.data(), b_.size()});
}

void Linear::InitParams(Rng* rng) {
  const double stddev = std::sqrt(2.0 / static_cast<double>(in_dim_));
  for (Eigen::Index i = 0; i < w_.size(); ++i) w_.data()[i] = rng->Normal(0.0, stddev);
  b_.setZero();
}

// ---------- ResBlock ----------

ResBlock::ResBlock(std::string name, int cin, int cout, int stride) {
  conv1_ = std::make_unique<Conv2d>(name + ".conv1", cin, cout, 3, stride, 1);
  aff1_ = std::make_unique<ChannelAffine>(name + ".affine1", cout);
  conv2_ = std::make_unique<Conv2d>(name + ".conv2", cout, cout, 3, 1, 1);
  aff2_ = std::make_unique<ChannelAffine>(name + ".affine2", cout);
  if (stride != 1 || cin != cout) {
    proj_ = std::make_unique<Conv2d>(name + ".proj", cin, cout, 1, stride, 0);
    proj_aff_ = std::make_unique<ChannelAffine>(name + ".proj_affine", cout);
  }
}

Blob ResBlock::Forward(const Blob& in, bool train) {
  Blob main = conv1_->Forward(in, train);
  main = aff1_->Forward(main, train);
  Eigen::MatrixXd mask1 = (main.m.array() > 0.0).cast<double>();
  main.m = main.m.cwiseMax(0.0);
  main = conv2_->Forward(main, train);
  main = aff2_->Forward(main, train);

  Blob skip = in;
  if (proj_) {
    skip = proj_->Forward(in, train);
    skip = proj_aff_->Forward(skip, train);
  }
  main.m += skip.m;
  Eigen::MatrixXd mask2 = (main.m.array() > 0.0).cast<double>();
  main.m = main.m.cwiseMax(0.0);
  if (train) {
    relu1_mask_ = std::move(mask1);
    out_mask_ = std::move(mask2);
  }
  return main;
}

Blob ResBlock::Backward(const Blob& grad_out) {
  Blob g = grad_out;
  g.m = grad_out.m.cwiseProduct(out_mask_);

  Blob gm = aff2_->Backward(g);
  gm = conv2_->Backward(gm);
  gm.m = gm.m.cwiseProduct(relu1_mask_);
  gm = aff1_->Backward(gm);
  Blob din = conv1_->Backward(gm);

  if (proj_) {
    Blob gs = proj_aff_->Backward(g);
    gs = proj_->Backward(gs);
    din.m += gs.m;
  } else {
    din.m += g.m;
  }
  return din;
}

void ResBlock::CollectParams(std::vector<ParamRef>* out) {
  conv1_->CollectParams(out);
  aff1_->CollectParams(out);
  conv2_->CollectParams(out);
  aff2_->CollectParams(out);
  if (proj_) {
    proj_->CollectParams(out);
    proj_aff_->CollectParams(out);
  }
}

void ResBlock::InitParams(Rng* rng) {
  conv1_->InitParams(rng);
  aff1_->InitParams(rng);
  conv2_->InitParams(rng);
  aff2_->InitParams(rng);
  if (proj_) {
    proj_->InitParams(rng);
    proj_aff_->InitParams(rng);
  }
}

// ---------- ArchConfig / Network ----------

void ArchConfig::Validate() const {
  if (kind != "small" && kind != "resnet18") {
    throw std::invalid_argument("arch kind must be 'small' or 'resnet18'");
  }
  if (in_channels < 1) throw std::invalid_argument("in_channels must be >= 1");
  if (image_size < 8) throw std::invalid_argument("image_size must be >= 8");
  if (feature_dim < 1) throw std::invalid_argument("feature_dim must be >= 1");
  if (disc_hidden < 1) throw std::invalid_argument("disc_hidden must be >= 1");
  const size_t need = kind == "small" ? 3 : 4;
  if (widths.size() != need) {
    throw std::invalid_argument("arch '" + kind + "' needs " +
                                std::to_string(need) + " block widths");
  }
  for (int w : widths) {
    if (w < 1) throw std::invalid_argument("block widths must be >= 1");
  }
}

ArchConfig DeskArch() { return ArchConfig{}; }

ArchConfig PaperArch() {
  ArchConfig cfg;
  cfg.kind = "resnet18";
  cfg.image_size = 256;
  cfg.feature_dim = 512;
  cfg.disc_hidden = 512;
  cfg.widths = {64, 128, 256, 512};
  return cfg;
}

void Network::Append(std::unique_ptr<Layer> layer) {
  layers_.push_back(std::move(layer));
}

Blob Network::Forward(const Blob& in, bool train) {
  Blob cur = in;
  for (auto& layer : layers_) cur = layer->Forward(cur, train);
  return cur;
}

Blob Network::Backward(const Blob& grad_out) {
  Blob cur = grad_out;
  for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) {
    cur = (*it)->Backward(cur);
  }
  return cur;
}

void Network::InitParams(uint64_t seed) {
  Rng rng(seed);
  for (auto& layer : layers_) layer->InitParams(&rng);
}

void Network::ZeroGrad() {
  for (ParamRef& p : Params()) {
    std::memset(p.grad, 0, static_cast<size_t>(p.size) * sizeof(double));
  }
}

std::vector<ParamRef> Network::Params() {
  std::vector<ParamRef> out;
  for (auto& layer : layers_) layer->CollectParams(&out);
  return out;
}

std::vector<ParamRef> Network::Params() const {
  auto out = const_cast<Network*>(this)->Params();
  for (ParamRef& p : out) p.grad = nullptr;
  return out;
}

int64_t Network::ParamCount() const {
  int64_t n = 0;
  for (const ParamRef& p : Params()) n += p.size;
  return n;
}

void Network::CopyParamsFrom(const Network& other) {
  auto dst = Params();
  auto src = other.Params();
  if (dst.size() != src.size()) {
    throw std::invalid_argument("CopyParamsFrom: parameter list mismatch");
  }
  for (size_t i = 0; i < dst.size(); ++i) {
    if (dst[i].size != src[i].size || dst[i].name != src[i].name) {
      throw std::invalid_argument("CopyParamsFrom: parameter '" + dst[i].name +
                                  "' mismatch");
    }
    std::memcpy(dst[i].value, src[i].value,
                static_cast<size_t>(src[i].size) * sizeof(double));
  }
}

Network MakeFeatureGenerator(const ArchConfig& arch) {
  arch.Validate();
  Network net;
  if (arch.kind == "small") {
    int cin = arch.in_channels;
    for (size_t b = 0; b < arch.widths.size(); ++b) {
      const std::string tag = "block" + std::to_string(b + 1);
      net.Append(std::make_unique<Conv2d>(tag + ".conv", cin, arch.widths[b], 3, 1, 1));
      net.Append(std::make_unique<ChannelAffine>(tag + ".affine", arch.widths[b]));
      net.Append(std::make_unique<Relu>());
      net.Append(std::make_unique<AvgPool2>());
      cin = arch.widths[b];
    }
    net.Append(std::make_unique<GlobalAvgPool>());
    net.Append(std::make_unique<Linear>("feat", cin, arch.feature_dim));
  } else {
    net.Append(std::make_unique<Conv2d>("stem.conv", arch.in_channels,
                                        arch.widths[0], 3, 1, 1));
    net.Append(std::make_unique<ChannelAffine>("stem.affine", arch.widths[0]));
    net.Append(std::make_unique<Relu>());
    int cin = arch.widths[0];
    for (size_t s = 0; s < arch.widths.size(); ++s) {
      const int cout = arch.widths[s];
      const int stride = s == 0 ? 1 : 2;
      const std::string tag = "stage" + std::to_string(s + 1);
      net.Append(std::make_unique<ResBlock>(tag + ".block1", cin, cout, stride));
      net.Append(std::make_unique<ResBlock>(tag + ".block2", cout, cout, 1));
      cin = cout;
    }
    net.Append(std::make_unique<GlobalAvgPool>());
    net.Append(std::make_unique<Linear>("feat", cin, arch.feature_dim));
  }
  return net;
}

Network MakeClassifier(const ArchConfig& arch) {
  arch.Validate();
  Network net;
  net.Append(std::make_unique<Linear>("cls", arch.feature_dim, 2));
  return net;
}

Network MakeDiscriminator(const ArchConfig& arch) {
  arch.Validate();
  Network net;
  net.Append(std::make_unique<Linear>("fc1", arch.feature_dim, arch.disc_hidden));
  net.Append(std::make_unique<Relu>());
  net.Append(std::make_unique<Linear>("fc2", arch.disc_hidden, 2));
  return net;
}

TeacherSnapshot::TeacherSnapshot(const Network& g, const ArchConfig& arch)
    : arch_(arch), net_(MakeFeatureGenerator(arch)), empty_(false) {
  net_.CopyParamsFrom(g);
}

Eigen::MatrixXd TeacherSnapshot::Forward(const Blob& images) const {
  if (empty_) throw std::logic_error("TeacherSnapshot: forward on empty snapshot");
  return net_.Forward(images, /*train=*/false).m;
}

Eigen::MatrixXd ForwardInChunks(Network* net, const DomainDataset& ds,
                                const std::vector<int>& indices,
                                int chunk_size) {
  if (chunk_size < 1) throw std::invalid_argument("chunk_size must be >= 1");
  Eigen::MatrixXd out;
  size_t pos = 0;
  while (pos < indices.size()) {
    const size_t take = std::min(static_cast<size_t>(chunk_size),
                                 indices.size() - pos);
    std::vector<int> chunk(indices.begin() + pos, indices.begin() + pos + take);
    Eigen::MatrixXd part = net->Forward(DatasetBlob(ds, chunk), false).m;
    if (out.size() == 0) {
      out.resize(static_cast<Eigen::Index>(indices.size()), part.cols());
    }
    out.middleRows(static_cast<Eigen::Index>(pos), part.rows()) = part;
    pos += take;
  }
  return out;
}

ModelBundle BuildModels(const ArchConfig& arch, uint64_t seed) {
  arch.Validate();
  ModelBundle models;
  models.arch = arch;
  models.g = MakeFeatureGenerator(arch);
  models.h = MakeClassifier(arch);
  models.d_ta = MakeDiscriminator(arch);
  models.d_cs = MakeDiscriminator(arch);
  models.g.InitParams(DeriveSeed(seed, {kNetInitStream, 0}));
  models.h.InitParams(DeriveSeed(seed, {kNetInitStream, 1}));
  models.d_ta.InitParams(DeriveSeed(seed, {kNetInitStream, 2}));
  models.d_cs.InitParams(DeriveSeed(seed, {kNetInitStream, 3}));
  return models;
}

}  // namespace fsde
