// tests/acceptance/acceptance_main.cpp

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

// Release gate.  Usage: acceptance <configs_dir> <cli_binary>
//
// Runs nine numbered checks and prints one PASS/FAIL line each; the exit
// code is the number of failures.  Checks 1-6 are self-contained property
// suites; 7 and 8 run the shipped benchmark configs end to end; 9 reruns
// CLI commands and compares their outputs byte for byte.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fsde/bench.hpp"
#include "fsde/canvas.hpp"
#include "fsde/config.hpp"
#include "fsde/evalmetrics.hpp"
#include "fsde/io.hpp"
#include "fsde/losses.hpp"
#include "fsde/nets.hpp"
#include "fsde/rng.hpp"
#include "fsde/stylizer.hpp"
#include "fsde/synthdata.hpp"
#include "fsde/trainer.hpp"
#include "fsde/wavelet.hpp"
#include "fsde/wct.hpp"

namespace {

using namespace fsde;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

std::string g_configs_dir;
std::string g_cli;
fs::path g_work;

void Expect(bool ok, const std::string& what) {
  if (!ok) throw std::runtime_error(what);
}

void ExpectNear(double got, double want, double tol, const std::string& what) {
  if (!(std::abs(got - want) <= tol)) {
    std::ostringstream os;
    os << what << ": got " << got << ", want " << want << " +/- " << tol;
    throw std::runtime_error(os.str());
  }
}

double RelErr(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-6});
}

Eigen::MatrixXd RandomMat(int r, int c, uint64_t seed, double scale) {
  Rng rng(seed);
  Eigen::MatrixXd m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = scale * rng.Normal();
  return m;
}

// Single zero-initialized linear map with chosen weight entries poked in
// (flat index into the column-major out_dim x in_dim weight matrix).
Network PokedLinear(int in_dim, int out_dim,
                    const std::vector<std::pair<int, double>>& pokes) {
  Network n;
  n.Append(std::make_unique<Linear>("d", in_dim, out_dim));
  for (ParamRef& p : n.Params()) {
    if (p.name != "d.w") continue;
    for (const auto& [idx, v] : pokes) p.value[idx] = v;
  }
  return n;
}

// ---------------------------------------------------------------------------
// 1. Loss value oracles to 1e-6 absolute.
std::string Criterion1() {
  const double kTol = 1e-6;
  const double kLn2 = std::log(2.0);

  // rows: 0-1 source, 2-3 target, 4-5 aux; labels alternate live/spoof
  const std::vector<RowMeta> meta = {
      {DomainKind::kSource, kLive}, {DomainKind::kSource, kSpoof},
      {DomainKind::kTarget, kLive}, {DomainKind::kTarget, kSpoof},
      {DomainKind::kAux, kLive},    {DomainKind::kAux, kSpoof}};

  // alignment pulls same-class cross-domain rows together
  {
    Eigen::MatrixXd f = Eigen::MatrixXd::Ones(6, 2);
    ExpectNear(SemanticAlignmentLoss(f, meta, {{0, 2}}, nullptr), 0.0, kTol,
               "alignment of identical rows");
    f.row(0) << 1.0, 0.0;
    f.row(2) << 0.0, 1.0;
    ExpectNear(SemanticAlignmentLoss(f, meta, {{0, 2}}, nullptr), 1.0, kTol,
               "alignment at squared distance 2");
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(6, 2);
    g.row(0) << 1.0, 0.0;
    g.row(2) << 0.0, 1.0;  // d^2 = 2
    g.row(1) << 2.0, 2.0;
    g.row(3) << 0.0, 0.0;  // d^2 = 8
    ExpectNear(SemanticAlignmentLoss(g, meta, {{0, 2}, {1, 3}}, nullptr), 5.0,
               kTol, "alignment sums 0.5*(2 + 8)");
  }

  // separation pushes different-class rows beyond the margin
  {
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(6, 2);
    f.row(0) << 2.0, 0.0;
    f.row(3) << 0.0, 0.0;  // d^2 = 4 >= margin
    ExpectNear(SeparationLoss(f, meta, {{0, 3}}, 1.0, nullptr), 0.0, kTol,
               "separation beyond the margin");
    f.row(0) << std::sqrt(0.5), 0.0;  // d^2 = 0.5
    ExpectNear(SeparationLoss(f, meta, {{0, 3}}, 1.0, nullptr), 0.25, kTol,
               "separation at squared distance 0.5");
    Eigen::MatrixXd g = Eigen::MatrixXd::Ones(6, 2);
    ExpectNear(SeparationLoss(g, meta, {{0, 3}, {1, 2}}, 1.0, nullptr), 1.0,
               kTol, "separation of identical rows is margin/2 per pair");
  }

  // combined contrastive objective
  {
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(6, 2);
    ExpectNear(ContrastiveLoss(f, meta, {}, {}, 1.0, nullptr), 0.0, kTol,
               "contrastive with no pairs");
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(6, 2);
    g.row(0) << 1.0, 0.0;
    g.row(2) << 0.0, 1.0;             // positive (0,2): 1.0
    g.row(3) << std::sqrt(0.5), 0.0;  // negative (1,3): d^2 = 0.5 -> 0.25
    const double combo = ContrastiveLoss(g, meta, {{0, 2}}, {{1, 3}}, 1.0,
                                         nullptr);
    ExpectNear(combo, 1.25, kTol, "contrastive 1.0 + 0.25");
    const double twice = ContrastiveLoss(g, meta, {{0, 2}, {0, 2}},
                                         {{1, 3}, {1, 3}}, 1.0, nullptr);
    ExpectNear(twice, 2.0 * combo, kTol, "doubling pairs doubles the loss");
  }

  // classification CE
  {
    Eigen::MatrixXd z = Eigen::MatrixXd::Zero(4, 2);
    ExpectNear(ClassificationLoss(z, {0, 1, 0, 1}, nullptr), kLn2, kTol,
               "uniform logits give ln 2");
    Eigen::MatrixXd big(1, 2);
    big << 0.0, 20.0;
    Expect(ClassificationLoss(big, {1}, nullptr) < 1e-6,
           "saturated correct logit is < 1e-6");
    Eigen::MatrixXd m = RandomMat(4, 2, 501, 1.0);
    const std::vector<int> labels = {1, 0, 0, 1};
    double mean = ClassificationLoss(m, labels, nullptr);
    double acc = 0.0;
    for (int i = 0; i < 4; ++i) {
      Eigen::MatrixXd row = m.row(i);
      acc += ClassificationLoss(row, {labels[static_cast<size_t>(i)]}, nullptr);
    }
    ExpectNear(mean, acc / 4.0, 1e-12, "batch mean equals mean of singles");
  }

  // domain discriminator CE
  {
    Eigen::MatrixXd z = Eigen::MatrixXd::Zero(4, 2);
    ExpectNear(DomainAdversarialLoss(z, {0, 1, 0, 1}, nullptr, nullptr), kLn2,
               kTol, "uniform domain logits give ln 2");
    Eigen::MatrixXd big(2, 2);
    big << 20.0, 0.0, 0.0, 20.0;
    Expect(DomainAdversarialLoss(big, {0, 1}, nullptr, nullptr) < 1e-3,
           "saturated discriminator loss < 1e-3");
  }

  // progressive staging with hand-built counting discriminators
  {
    // logits = (0, x0): the loss counts rows by their first coordinate
    Network count_ta = PokedLinear(2, 2, {{1, 1.0}});
    Network count_cs = PokedLinear(2, 2, {{1, 1.0}});
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(2, 2);
    t.col(0).setConstant(10.0);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(4, 2);
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(2, 2);
    s.col(0).setConstant(10.0);

    AdvLossValues ta = ProgressiveAdvLoss(Stage::kTA, t, a, s, &count_ta,
                                          &count_cs, false);
    Expect(ta.cs == 0.0, "TA stage leaves the combined-vs-source term at 0");
    const double want_ta =
        (2.0 * std::log1p(std::exp(10.0)) + 4.0 * kLn2) / 6.0;
    ExpectNear(ta.ta, want_ta, kTol, "TA stage averages over |t|+|a| rows");
    ExpectNear(ta.Total(), ta.ta, kTol, "TA total is the TA term");

    // zeroed combined side: the 6 pooled rows each cost ln 2, the two
    // saturated source rows almost nothing
    Eigen::MatrixXd t0 = Eigen::MatrixXd::Zero(2, 2);
    AdvLossValues cs = ProgressiveAdvLoss(Stage::kCS, t0, a, s, &count_ta,
                                          &count_cs, false);
    Expect(cs.ta == 0.0, "CS stage drops the TA term");
    const double want_cs =
        (6.0 * kLn2 + 2.0 * std::log1p(std::exp(-10.0))) / 8.0;
    ExpectNear(cs.cs, want_cs, kTol,
               "CS stage pools |t|+|a| = 6 rows against source");

    Network flat_ta = PokedLinear(2, 2, {});
    Network flat_cs = PokedLinear(2, 2, {});
    AdvLossValues flat = ProgressiveAdvLoss(Stage::kCS, t, a, s, &flat_ta,
                                            &flat_cs, false);
    ExpectNear(flat.Total(), kLn2, kTol, "uniform discriminators give ln 2");
  }

  // feature anchoring to the teacher
  {
    Eigen::MatrixXd g = Eigen::MatrixXd::Ones(2, 2);
    ExpectNear(LessForgettingLoss(g, g, nullptr), 0.0, kTol,
               "anchoring of identical features");
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(1, 2);
    Eigen::MatrixXd o = Eigen::MatrixXd::Ones(1, 2);
    ExpectNear(LessForgettingLoss(o, t, nullptr), 2.0, kTol,
               "anchoring (1,1) vs (0,0) is 2");
    Eigen::MatrixXd g2(2, 2), t2(2, 2);
    g2 << 1.0, 1.0, 0.5, 0.0;
    t2 << 0.0, 0.0, 0.0, 0.0;  // per-sample 2.0 and 0.25
    ExpectNear(LessForgettingLoss(g2, t2, nullptr), 2.25, kTol,
               "anchoring sums per-sample squared distances");
  }

  // total objective
  {
    LossParts parts{1.0, 1.0, 1.0, 1.0};
    LossConfig cfg;  // lambda = (1e-3, 1.0, 10.0)
    ExpectNear(TotalLoss(parts, cfg), 12.001, kTol,
               "unit parts at default weights");
    LossConfig zero;
    zero.lambda1 = zero.lambda2 = zero.lambda3 = 0.0;
    LossParts p2{0.37, 4.0, 5.0, 6.0};
    Expect(TotalLoss(p2, zero) == 0.37, "zero weights leave the CE term");
    for (int k = 0; k < 3; ++k) {
      auto at = [&](double v) {
        LossConfig c;
        c.lambda1 = k == 0 ? v : 0.0;
        c.lambda2 = k == 1 ? v : 0.0;
        c.lambda3 = k == 2 ? v : 0.0;
        return TotalLoss(p2, c);
      };
      const double d1 = at(1.0) - at(0.0);
      const double d2 = at(2.0) - at(1.0);
      ExpectNear(d1, d2, 1e-12, "total is linear in each weight");
    }
  }
  return "value oracles hold to 1e-6";
}

// ---------------------------------------------------------------------------
// 2. Finite-difference gradient suite, >= 10 probes per term.
std::string Criterion2() {
  const auto t0 = Clock::now();
  const double kStep = 1e-3;
  const double kTol = 1e-4;
  const int kProbes = 10;
  const std::vector<RowMeta> meta = {
      {DomainKind::kSource, kLive}, {DomainKind::kSource, kSpoof},
      {DomainKind::kTarget, kLive}, {DomainKind::kTarget, kSpoof},
      {DomainKind::kAux, kLive},    {DomainKind::kAux, kSpoof}};
  std::vector<FeaturePair> pos, neg;
  BuildBatchPairs(meta, &pos, &neg);

  auto fd_check = [&](const std::function<double(const Eigen::MatrixXd&)>& f,
                      const Eigen::MatrixXd& x, const Eigen::MatrixXd& grad,
                      const std::string& name) {
    Eigen::MatrixXd probe = x;
    for (int i = 0; i < x.rows(); ++i) {
      for (int j = 0; j < x.cols(); ++j) {
        probe(i, j) = x(i, j) + kStep;
        const double up = f(probe);
        probe(i, j) = x(i, j) - kStep;
        const double dn = f(probe);
        probe(i, j) = x(i, j);
        const double fd = (up - dn) / (2.0 * kStep);
        if (std::abs(fd) < 1e-9 && std::abs(grad(i, j)) < 1e-9) continue;
        Expect(RelErr(fd, grad(i, j)) < kTol,
               name + " gradient disagrees with finite differences");
      }
    }
  };

  for (int p = 0; p < kProbes; ++p) {
    const uint64_t seed = 1000 + static_cast<uint64_t>(p);

    {  // alignment
      Eigen::MatrixXd x = RandomMat(6, 4, seed, 0.5);
      Eigen::MatrixXd g = Eigen::MatrixXd::Zero(6, 4);
      SemanticAlignmentLoss(x, meta, pos, &g);
      fd_check([&](const Eigen::MatrixXd& m) {
        return SemanticAlignmentLoss(m, meta, pos, nullptr);
      }, x, g, "alignment");
    }

    {  // separation, sampled away from the hinge kink
      Eigen::MatrixXd x;
      bool ok = false;
      for (uint64_t attempt = 0; attempt < 200 && !ok; ++attempt) {
        x = RandomMat(6, 4, DeriveSeed(seed, {7, attempt}), 0.3);
        ok = true;
        for (const FeaturePair& q : neg) {
          const double d2 = (x.row(q.a) - x.row(q.b)).squaredNorm();
          if (std::abs(1.0 - d2) < 0.1) ok = false;
        }
      }
      Expect(ok, "could not sample separation probe away from the kink");
      Eigen::MatrixXd g = Eigen::MatrixXd::Zero(6, 4);
      SeparationLoss(x, meta, neg, 1.0, &g);
      fd_check([&](const Eigen::MatrixXd& m) {
        return SeparationLoss(m, meta, neg, 1.0, nullptr);
      }, x, g, "separation");
    }

    {  // anchoring
      Eigen::MatrixXd x = RandomMat(5, 4, seed + 50, 1.0);
      const Eigen::MatrixXd t = RandomMat(5, 4, seed + 60, 1.0);
      Eigen::MatrixXd g = Eigen::MatrixXd::Zero(5, 4);
      LessForgettingLoss(x, t, &g);
      fd_check([&](const Eigen::MatrixXd& m) {
        return LessForgettingLoss(m, t, nullptr);
      }, x, g, "anchoring");
    }

    {  // classification CE wrt logits
      Eigen::MatrixXd x = RandomMat(6, 2, seed + 70, 1.0);
      const std::vector<int> labels = {0, 1, 1, 0, 1, 0};
      Eigen::MatrixXd g;
      ClassificationLoss(x, labels, &g);
      fd_check([&](const Eigen::MatrixXd& m) {
        return ClassificationLoss(m, labels, nullptr);
      }, x, g, "classification");
    }

    {  // discriminator CE through a real net, plus the reversal identity
      const int d = 4, hidden = 5, n = 6;
      Network disc;
      disc.Append(std::make_unique<Linear>("a", d, hidden));
      disc.Append(std::make_unique<Relu>());
      disc.Append(std::make_unique<Linear>("b", hidden, 2));
      disc.InitParams(seed + 80);
      const std::vector<int> domains = {0, 1, 0, 1, 1, 0};
      Eigen::MatrixXd x = RandomMat(n, d, seed + 90, 0.8);

      auto loss_of = [&](const Eigen::MatrixXd& m) {
        Blob out = disc.Forward(FeatureBlob(m), false);
        return DomainAdversarialLoss(out.m, domains, nullptr, nullptr);
      };
      disc.ZeroGrad();
      Blob out = disc.Forward(FeatureBlob(x), true);
      Eigen::MatrixXd dlogits;
      DomainAdversarialLoss(out.m, domains, &dlogits, nullptr);
      Blob din = disc.Backward(FeatureBlob(dlogits));
      fd_check(loss_of, x, din.m, "discriminator");

      // reversal: the generator objective is the negated discriminator
      // loss, so its analytic gradient is exactly -din and must match the
      // finite differences of -loss
      const Eigen::MatrixXd gen_grad = -din.m;
      Eigen::MatrixXd fd_gen(n, d);
      Eigen::MatrixXd probe = x;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < d; ++j) {
          probe(i, j) = x(i, j) + kStep;
          const double up = -loss_of(probe);
          probe(i, j) = x(i, j) - kStep;
          const double dn = -loss_of(probe);
          probe(i, j) = x(i, j);
          fd_gen(i, j) = (up - dn) / (2.0 * kStep);
        }
      }
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < d; ++j) {
          if (std::abs(fd_gen(i, j)) < 1e-9 &&
              std::abs(gen_grad(i, j)) < 1e-9) {
            continue;
          }
          Expect(RelErr(fd_gen(i, j), gen_grad(i, j)) < kTol,
                 "reversed gradient disagrees with finite differences");
        }
      }
      Expect((gen_grad + din.m).cwiseAbs().maxCoeff() < 1e-8,
             "reversal identity: generator grad is the exact negation");
    }
  }

  const double secs =
      std::chrono::duration<double>(Clock::now() - t0).count();
  Expect(secs < 60.0, "gradient suite exceeded one minute");
  std::ostringstream os;
  os << kProbes << " probes per term, rel err < 1e-4, " << std::fixed
     << std::setprecision(1) << secs << "s";
  return os.str();
}

// ---------------------------------------------------------------------------
// 3. Stylizer suite.
std::string Criterion3() {
  const auto t0 = Clock::now();

  // random image, depth-3 analysis
  ImageBuf im(3, 32, 32);
  {
    Rng rng(42);
    for (float& v : im.data) v = static_cast<float>(rng.Uniform());
  }
  const WaveletPyramid pyr = HaarDecompose(im, 3);
  const ImageBuf back = HaarReconstruct(pyr);
  double maxdiff = 0.0;
  for (size_t i = 0; i < im.data.size(); ++i) {
    maxdiff = std::max(maxdiff,
                       std::abs(static_cast<double>(im.data[i]) - back.data[i]));
  }
  Expect(maxdiff < 1e-6, "analysis/synthesis round trip drifted");
  Expect(std::abs(ImageEnergy(im) - PyramidEnergy(pyr)) < 1e-6,
         "orthonormal analysis must conserve energy");

  // whitening / coloring on correlated features
  const int kDim = 6, kN = 400;
  Eigen::MatrixXd base = RandomMat(kDim, kN, 77, 1.0);
  Eigen::MatrixXd mix = RandomMat(kDim, kDim, 78, 0.6);
  mix.diagonal().array() += 1.0;
  Eigen::MatrixXd feats = mix * base;
  feats.colwise() += Eigen::VectorXd::LinSpaced(kDim, -0.5, 0.8);

  const FeatureStats stats = ComputeStats(feats, 1e-8);
  const Eigen::MatrixXd white = WhitenFeatures(feats, stats);
  Eigen::MatrixXd cov =
      (white * white.transpose()) / static_cast<double>(kN);
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) {
      if (i == j) continue;
      Expect(std::abs(cov(i, j)) < 1e-5, "whitened covariance off-diagonal");
    }
  }

  Eigen::MatrixXd style_base = RandomMat(kDim, kN, 79, 1.0);
  Eigen::MatrixXd style_mix = RandomMat(kDim, kDim, 80, 0.4);
  style_mix.diagonal().array() += 1.5;
  Eigen::MatrixXd style = style_mix * style_base;
  style.colwise() += Eigen::VectorXd::Constant(kDim, 0.3);
  const FeatureStats sstats = ComputeStats(style, 1e-8);
  const Eigen::MatrixXd colored = ColorFeatures(white, sstats);
  Eigen::VectorXd cmean = colored.rowwise().mean();
  Eigen::MatrixXd centered = colored.colwise() - cmean;
  Eigen::MatrixXd ccov =
      (centered * centered.transpose()) / static_cast<double>(kN);
  const Eigen::MatrixXd target_cov = sstats.FlooredCovariance();
  Expect((ccov - target_cov).cwiseAbs().maxCoeff() < 1e-4,
         "colored covariance must match the style");

  const Eigen::MatrixXd round = ColorFeatures(white, stats);
  Expect((round - feats).cwiseAbs().maxCoeff() < 1e-5,
         "color must invert whiten under the same stats");

  // alpha = 0 keeps the content bit for bit
  DomainSpec cs, ts;
  cs.kind = DomainKind::kSource;
  cs.name = "s";
  cs.n_subjects = 2;
  cs.frames_per_subject = 2;
  ts.kind = DomainKind::kTarget;
  ts.name = "t";
  ts.n_subjects = 2;
  ts.frames_per_subject = 2;
  ts.style_signal.gain[0] = 0.6;
  const DomainDataset content = GenerateDomain(cs, 5);
  const DomainDataset styleset = GenerateDomain(ts, 6);
  StylizerConfig sc;
  sc.alpha = 0.0;
  const Sample& c0 = content.samples[0];
  const Sample* s0 = nullptr;
  for (const Sample& s : styleset.samples) {
    if (s.label == c0.label) {
      s0 = &s;
      break;
    }
  }
  Expect(s0 != nullptr, "no same-class style sample");
  const Sample out = Stylize(c0, *s0, sc);
  Expect(out.image.data == c0.image.data, "alpha = 0 must return the content");

  const double secs =
      std::chrono::duration<double>(Clock::now() - t0).count();
  Expect(secs < 60.0, "stylizer suite exceeded one minute");
  return "round trip, energy, whiten/color, alpha=0 all hold";
}

// ---------------------------------------------------------------------------
// 4. Metric identities.
std::string Criterion4() {
  // exact mean identity on random score sets
  Rng rng(4040);
  for (int rep = 0; rep < 30; ++rep) {
    ScoreSet set;
    const int n = 40 + static_cast<int>(rng.UniformInt(0, 60));
    for (int i = 0; i < n; ++i) {
      set.scores.push_back(rng.Uniform());
      set.labels.push_back(i % 2 == 0 ? kLive : kSpoof);
      set.sample_index.push_back(i);
    }
    const double tau = rng.Uniform(0.1, 0.9);
    const ErrorRates r = ComputeErrorRates(set, tau);
    Expect(r.acer == (r.apcer + r.bpcer) / 2.0, "ACER mean identity");
    Expect(Hter(set, tau) == r.acer, "HTER equals ACER at the same threshold");
  }

  // published-row consistency: cells are averaged in percent space
  const double acer_pct = (0.91 + 1.36) / 2.0;
  ExpectNear(acer_pct, 1.135, 1e-12, "0.91/1.36 mean");
  const std::string cell = FormatPercentCell(acer_pct / 100.0, 0.0);
  Expect(cell.rfind("1.14", 0) == 0,
         "1.135 must print as 1.14, got " + cell);

  // equal-error residual bound, including heavily tied score sets
  for (uint64_t seed = 0; seed < 20; ++seed) {
    Rng r2(9000 + seed);
    ScoreSet set;
    const int n_live = 30 + static_cast<int>(r2.UniformInt(0, 200));
    const int n_spoof = 30 + static_cast<int>(r2.UniformInt(0, 200));
    // Continuous draws keep the scores distinct; the 1/min bound only holds
    // without ties (a fully tied set forces a residual of 1 at any threshold).
    for (int i = 0; i < n_live; ++i) {
      set.scores.push_back(0.35 + 0.65 * r2.Uniform());
      set.labels.push_back(kLive);
      set.sample_index.push_back(i);
    }
    for (int i = 0; i < n_spoof; ++i) {
      set.scores.push_back(0.65 * r2.Uniform());
      set.labels.push_back(kSpoof);
      set.sample_index.push_back(n_live + i);
    }
    const double tau = SelectThreshold(set);
    const ErrorRates r = ComputeErrorRates(set, tau);
    const double bound = 1.0 / std::min(n_live, n_spoof);
    Expect(std::abs(r.apcer - r.bpcer) <= bound + 1e-12,
           "equal-error residual exceeded 1/min(n_live, n_spoof)");
  }
  return "ACER identity exact, 1.135 prints 1.14, EER residual bounded";
}

// ---------------------------------------------------------------------------
// 5. Batch composition and pairing invariants.
std::string Criterion5() {
  DomainSpec ss, ts;
  ss.kind = DomainKind::kSource;
  ss.name = "src";
  ss.n_subjects = 8;
  ss.frames_per_subject = 4;
  ss.image_height = ss.image_width = 8;
  ts.kind = DomainKind::kTarget;
  ts.name = "tgt";
  ts.n_subjects = 3;
  ts.frames_per_subject = 3;
  ts.image_height = ts.image_width = 8;
  ts.style_signal.gain[0] = 0.7;
  DomainDataset src = SplitDataset(
      GenerateDomain(ss, 21), {{"train", 0.75}, {"val", 0.25}}, 22);
  DomainDataset tgt = GenerateDomain(ts, 23);
  StylizerConfig sc;
  sc.wavelet_depth = 1;
  sc.detail_min_level = 1;
  sc.aux_ratio = 0.5;
  DomainDataset aux = BuildAuxDomain(src, tgt, sc, 24);

  BatchSizes sizes;  // 64 / 4 / 8
  Expect(sizes.source == 64 && sizes.target == 4 && sizes.aux == 8,
         "default composition must be 64/4/8");
  for (uint64_t seed = 0; seed < 50; ++seed) {
    const Batch b = ComposeBatch(&src, &tgt, &aux, sizes, seed);
    Expect(b.TotalSize() == 76, "batch total");
    const BatchSlice* s = b.Find(DomainKind::kSource);
    const BatchSlice* t = b.Find(DomainKind::kTarget);
    const BatchSlice* a = b.Find(DomainKind::kAux);
    Expect(s && t && a, "all three slices present");
    Expect(s->CountLabel(kLive) == 32 && s->CountLabel(kSpoof) == 32,
           "source slice balance");
    Expect(t->CountLabel(kLive) == 2 && t->CountLabel(kSpoof) == 2,
           "target slice balance");
    Expect(a->CountLabel(kLive) == 4 && a->CountLabel(kSpoof) == 4,
           "aux slice balance");
  }

  // 10,000 draws per legal domain combination; nothing else is accepted
  const std::vector<IndexPair> st = SampleSameClassPairs(src, tgt, 10000, 31);
  Expect(st.size() == 10000, "draw count");
  for (const IndexPair& q : st) {
    Expect(src.samples[static_cast<size_t>(q.a)].label ==
               tgt.samples[static_cast<size_t>(q.b)].label,
           "(source, target) pair labels must agree");
  }
  const std::vector<IndexPair> ta = SampleSameClassPairs(tgt, aux, 10000, 32);
  for (const IndexPair& q : ta) {
    Expect(tgt.samples[static_cast<size_t>(q.a)].label ==
               aux.samples[static_cast<size_t>(q.b)].label,
           "(target, aux) pair labels must agree");
  }
  bool threw = false;
  try {
    SampleSameClassPairs(src, aux, 1, 33);
  } catch (const std::exception&) {
    threw = true;
  }
  Expect(threw, "(source, aux) pairing must be rejected");

  // batch-level pair enumeration stays within the legal combinations
  size_t checked = 0;
  for (uint64_t seed = 0; seed < 40; ++seed) {
    const Batch b = ComposeBatch(&src, &tgt, &aux, sizes, 100 + seed);
    std::vector<RowMeta> meta;
    for (const BatchSlice& sl : b.slices) {
      for (int idx : sl.indices) {
        meta.push_back({sl.kind, sl.dataset->samples[static_cast<size_t>(idx)].label});
      }
    }
    std::vector<FeaturePair> pos, negp;
    BuildBatchPairs(meta, &pos, &negp);
    ValidatePairs(pos, meta, true, false);
    ValidatePairs(negp, meta, false, true);
    for (const FeaturePair& q : pos) {
      const DomainKind da = meta[static_cast<size_t>(q.a)].domain;
      const DomainKind db = meta[static_cast<size_t>(q.b)].domain;
      const bool legal =
          (da == DomainKind::kSource && db == DomainKind::kTarget) ||
          (da == DomainKind::kTarget && db == DomainKind::kAux);
      Expect(legal, "enumerated pair outside the legal combinations");
    }
    checked += pos.size() + negp.size();
  }
  Expect(checked >= 10000, "pair enumeration sample too small");
  return "balance 32/32, 2/2, 4/4; 20k draws + " +
         std::to_string(checked) + " enumerated pairs all legal";
}

// ---------------------------------------------------------------------------
// 6. Staging invariants on a real training rig.
struct TinyRig {
  DomainDataset src, tgt, aux;
  ModelBundle models;
  TeacherSnapshot teacher;
  ArchConfig arch;
};

TinyRig MakeRig(uint64_t seed) {
  TinyRig r;
  DomainSpec ss, ts;
  ss.kind = DomainKind::kSource;
  ss.name = "src";
  ss.n_subjects = 6;
  ss.frames_per_subject = 4;
  ss.image_height = ss.image_width = 8;
  ts.kind = DomainKind::kTarget;
  ts.name = "tgt";
  ts.n_subjects = 2;
  ts.frames_per_subject = 2;
  ts.image_height = ts.image_width = 8;
  ts.style_signal.gain[0] = 0.7;
  ts.style_signal.bias[2] = 0.1;
  r.src = SplitDataset(GenerateDomain(ss, seed),
                       {{"train", 0.75}, {"val", 0.25}}, seed + 1);
  r.tgt = GenerateDomain(ts, seed + 2);
  StylizerConfig sc;
  sc.wavelet_depth = 1;
  sc.detail_min_level = 1;
  sc.aux_ratio = 0.25;
  r.aux = BuildAuxDomain(r.src, r.tgt, sc, seed + 3);
  r.arch.image_size = 8;
  r.arch.widths = {2, 3, 4};
  r.arch.feature_dim = 5;
  r.arch.disc_hidden = 4;
  r.models = BuildModels(r.arch, seed + 4);
  r.teacher = TeacherSnapshot(r.models.g, r.arch);
  return r;
}

std::string Criterion6() {
  // the combined-vs-source discriminator waits for the stage switch
  {
    TinyRig rig = MakeRig(61);
    TrainConfig cfg;
    cfg.steps = 8;
    cfg.switch_fraction = 0.5;
    cfg.batch = {8, 2, 2};
    cfg.seed = 6;
    Trainer tr(&rig.models, &rig.teacher, &rig.src, &rig.tgt, &rig.aux, cfg);
    for (int i = 0; i < 4; ++i) {
      const StepLogRow row = tr.StepOnce();
      Expect(row.stage == "TA", "first half must sit in the TA stage");
      Expect(row.l_adv_cs == 0.0, "no combined-vs-source loss before switch");
      Expect(tr.State().d_cs_updates == 0,
             "combined-vs-source discriminator updated before the switch");
    }
    for (int i = 0; i < 4; ++i) tr.StepOnce();
    Expect(tr.State().d_cs_updates > 0,
           "combined-vs-source discriminator never updated after the switch");
    Expect(tr.State().d_ta_updates == 4,
           "target-vs-aux discriminator must stop at the switch");
  }

  // spoof rows contribute no adversarial gradient under the live-only flag
  {
    TinyRig rig = MakeRig(62);
    TrainConfig cfg;
    cfg.steps = 1;
    cfg.progressive = false;
    cfg.adv_live_only = true;
    cfg.batch = {8, 4, 4};
    cfg.seed = 7;
    Trainer tr(&rig.models, &rig.teacher, &rig.src, &rig.tgt, &rig.aux, cfg);
    tr.StepOnce();
    const Eigen::MatrixXd& g = tr.LastAdvFeatureGrad();
    const std::vector<RowMeta>& meta = tr.LastBatchMeta();
    Expect(g.rows() == static_cast<Eigen::Index>(meta.size()),
           "gradient probe shape");
    int live_nonzero = 0, live_rows = 0;
    for (size_t i = 0; i < meta.size(); ++i) {
      const double norm = g.row(static_cast<Eigen::Index>(i)).norm();
      if (meta[i].label == kSpoof) {
        Expect(norm == 0.0, "spoof row received adversarial gradient");
      } else {
        ++live_rows;
        if (norm > 0.0) ++live_nonzero;
      }
    }
    Expect(live_rows > 0, "no live rows in the probe batch");
    Expect(live_nonzero > live_rows / 2,
           "live rows carry no adversarial gradient at all");
  }
  return "D_cs waits for the switch; spoof rows carry zero adversarial grad";
}

// ---------------------------------------------------------------------------
// 7. End-to-end directional reproduction on the shipped ST protocol.
double MeanOverTargets(const ProtocolResult& res, const ProtocolSpec& spec,
                       const std::string& method,
                       double MethodTargetResult::* field) {
  double acc = 0.0;
  for (const DomainSpec& t : spec.targets) {
    acc += res.Find(method, t.name).*field;
  }
  return acc / static_cast<double>(spec.targets.size());
}

std::string Criterion7() {
  const auto t0 = Clock::now();
  const Config c = Config::FromFile(g_configs_dir + "/protocol_st.cfg");
  const ProtocolSpec spec = ProtocolFromConfig(c);
  Expect(spec.seeds.size() == 3, "the shipped protocol must run 3 seeds");
  const fs::path out = g_work / "st";
  fs::remove_all(out);
  const ProtocolResult res = RunProtocolSt(spec, out.string());
  const double secs =
      std::chrono::duration<double>(Clock::now() - t0).count();

  const double sasa_h =
      MeanOverTargets(res, spec, "sasa", &MethodTargetResult::mean_target_hter);
  const double joint_h =
      MeanOverTargets(res, spec, "joint", &MethodTargetResult::mean_target_hter);
  const double srconly_h = MeanOverTargets(
      res, spec, "source_only", &MethodTargetResult::mean_target_hter);
  const double sasa_acer = MeanOverTargets(
      res, spec, "sasa", &MethodTargetResult::mean_source_acer);
  const double srconly_acer = MeanOverTargets(
      res, spec, "source_only", &MethodTargetResult::mean_source_acer);

  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << "target HTER% sasa "
     << 100.0 * sasa_h << " vs joint " << 100.0 * joint_h << " vs source-only "
     << 100.0 * srconly_h << "; source ACER% sasa " << 100.0 * sasa_acer
     << " vs " << 100.0 * srconly_acer << "; " << std::setprecision(0) << secs
     << "s";
  const std::string detail = os.str();

  Expect(secs < 1800.0, "protocol exceeded 30 minutes (" + detail + ")");
  Expect(sasa_h <= 0.8 * joint_h,
         "adapted method must cut target HTER to 0.8x joint (" + detail + ")");
  Expect(sasa_acer <= srconly_acer + 0.010,
         "adapted method gave up more than 1pp source ACER (" + detail + ")");
  Expect(joint_h < srconly_h,
         "joint training must beat the source-only transfer (" + detail + ")");
  return detail;
}

// ---------------------------------------------------------------------------
// 8. Ablation directions on the shipped config.
std::string Criterion8() {
  const Config c = Config::FromFile(g_configs_dir + "/ablation.cfg");
  const ProtocolSpec spec = ProtocolFromConfig(c);
  Expect(spec.seeds.size() == 3, "the ablation must run 3 seeds");
  const fs::path out = g_work / "ablation";
  fs::remove_all(out);
  const std::vector<AblationRow> rows = RunAblation(spec, out.string());

  auto find = [&](const std::string& name) -> const AblationRow& {
    for (const AblationRow& r : rows) {
      if (r.name == name) return r;
    }
    throw std::runtime_error("ablation row missing: " + name);
  };
  const double joint_h = find("joint").mean_target_hter;
  const double aux_h = find("aux").mean_target_hter;
  const double aux_acer = find("aux").mean_source_acer;
  const double auxlfc_acer = find("aux_lfc").mean_source_acer;
  const double sasa_h = find("sasa").mean_target_hter;
  const double nonprog_h = find("sasa_nonprog").mean_target_hter;

  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << "HTER% joint " << 100.0 * joint_h
     << " aux " << 100.0 * aux_h << " sasa " << 100.0 * sasa_h << " nonprog "
     << 100.0 * nonprog_h << "; source ACER% aux " << 100.0 * aux_acer
     << " aux_lfc " << 100.0 * auxlfc_acer;
  const std::string detail = os.str();

  Expect(aux_h < joint_h, "aux data must reduce target HTER (" + detail + ")");
  Expect(auxlfc_acer < aux_acer,
         "anchoring must reduce source ACER (" + detail + ")");
  for (const char* m : {"aux_lfc", "aux_lfc_cont", "aux_lfc_adv"}) {
    Expect(sasa_h <= find(m).mean_target_hter,
           "full method must have the lowest target HTER (" + detail + ")");
  }
  Expect(sasa_h <= nonprog_h,
         "progressive schedule must not lose to non-progressive (" + detail +
             ")");
  return detail;
}

// ---------------------------------------------------------------------------
// 9. CLI rerun reproducibility.
int RunCli(const std::string& args, const fs::path& log) {
  const std::string cmd = g_cli + " " + args + " > " + log.string() + " 2>&1";
  return std::system(cmd.c_str());
}

std::vector<fs::path> SortedFiles(const fs::path& root) {
  std::vector<fs::path> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) out.push_back(fs::relative(e.path(), root));
  }
  std::sort(out.begin(), out.end());
  return out;
}

void ExpectTreesEqual(const fs::path& a, const fs::path& b,
                      const std::string& what) {
  const std::vector<fs::path> fa = SortedFiles(a);
  const std::vector<fs::path> fb = SortedFiles(b);
  Expect(!fa.empty(), what + ": no output files");
  Expect(fa == fb, what + ": file lists differ");
  for (const fs::path& rel : fa) {
    std::ifstream ia(a / rel, std::ios::binary);
    std::ifstream ib(b / rel, std::ios::binary);
    const std::string da((std::istreambuf_iterator<char>(ia)),
                         std::istreambuf_iterator<char>());
    const std::string db((std::istreambuf_iterator<char>(ib)),
                         std::istreambuf_iterator<char>());
    Expect(da == db, what + ": " + rel.string() + " differs between reruns");
  }
}

std::string Criterion9() {
  const fs::path dir = g_work / "cli";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path cfg = dir / "tiny.cfg";
  {
    std::ofstream f(cfg);
    f << "protocol.kind = st\n"
         "protocol.targets = shifted\n"
         "protocol.pretrain_steps = 6\n"
         "source.n_subjects = 6\n"
         "source.frames_per_subject = 2\n"
         "source.image_height = 8\n"
         "source.image_width = 8\n"
         "target.shifted.n_subjects = 3\n"
         "target.shifted.frames_per_subject = 2\n"
         "target.shifted.image_height = 8\n"
         "target.shifted.image_width = 8\n"
         "target.shifted.gain0 = 0.8\n"
         "arch.image_size = 8\n"
         "arch.widths = 2,3,4\n"
         "arch.feature_dim = 5\n"
         "arch.disc_hidden = 4\n"
         "stylizer.wavelet_depth = 1\n"
         "stylizer.detail_min_level = 1\n"
         "stylizer.aux_ratio = 0.5\n"
         "trainer.steps = 6\n";
  }
  const std::string base = " --config " + cfg.string();
  struct Cmd {
    std::string name;
    std::string args;
  };
  const std::vector<Cmd> cmds = {
      {"gen-data", "gen-data" + base},
      {"augment", "augment" + base + " --seed 3"},
      {"pretrain", "pretrain" + base + " --seed 2"},
  };
  for (const Cmd& cmd : cmds) {
    const fs::path d1 = dir / (cmd.name + "_1");
    const fs::path d2 = dir / (cmd.name + "_2");
    for (const fs::path& d : {d1, d2}) {
      const int rc = RunCli(cmd.args + " --out " + d.string(),
                            dir / (cmd.name + ".log"));
      Expect(rc == 0, cmd.name + " exited nonzero");
    }
    ExpectTreesEqual(d1, d2, cmd.name);
  }
  return "gen-data, augment, pretrain reruns byte-identical";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: acceptance <configs_dir> <cli_binary>\n");
    return 64;
  }
  g_configs_dir = argv[1];
  g_cli = argv[2];
  g_work = fs::temp_directory_path() / "fsde_acceptance";
  fs::create_directories(g_work);

  struct Entry {
    int id;
    const char* title;
    std::function<std::string()> fn;
  };
  const std::vector<Entry> entries = {
      {1, "loss value oracles", Criterion1},
      {2, "finite-difference gradient suite", Criterion2},
      {3, "stylizer suite", Criterion3},
      {4, "metric identities", Criterion4},
      {5, "batch and pairing invariants", Criterion5},
      {6, "staging invariants", Criterion6},
      {7, "single-target benchmark directions", Criterion7},
      {8, "ablation directions", Criterion8},
      {9, "command rerun reproducibility", Criterion9},
  };

  int failures = 0;
  for (const Entry& e : entries) {
    std::string note;
    bool ok = true;
    try {
      note = e.fn();
    } catch (const std::exception& ex) {
      ok = false;
      note = ex.what();
    }
    std::printf("criterion %d: %s — %s: %s\n", e.id, ok ? "PASS" : "FAIL",
                e.title, note.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  fs::remove_all(g_work);
  return failures;
}
