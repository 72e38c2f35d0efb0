// benchmarks/bench_main.cpp

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

// Microbenchmarks for the per-step hot paths: wavelet analysis, style
// transfer, the generator forward pass, and one full training step.

#include <benchmark/benchmark.h>

#include "fsde/nets.hpp"
#include "fsde/rng.hpp"
#include "fsde/stylizer.hpp"
#include "fsde/synthdata.hpp"
#include "fsde/trainer.hpp"
#include "fsde/wavelet.hpp"

namespace {

using namespace fsde;

ImageBuf RandomImage(int side, uint64_t seed) {
  ImageBuf im(3, side, side);
  Rng rng(seed);
  for (float& v : im.data) v = static_cast<float>(rng.Uniform());
  return im;
}

void BM_HaarRoundTrip(benchmark::State& state) {
  const ImageBuf im = RandomImage(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) {
    WaveletPyramid pyr = HaarDecompose(im, 2);
    ImageBuf back = HaarReconstruct(pyr);
    benchmark::DoNotOptimize(back.data.data());
  }
}
BENCHMARK(BM_HaarRoundTrip)->Arg(32)->Arg(64);

struct StylizePair {
  DomainDataset src, tgt;
};

StylizePair MakePair(int side) {
  DomainSpec s, t;
  s.kind = DomainKind::kSource;
  s.name = "s";
  s.n_subjects = 4;
  s.frames_per_subject = 2;
  s.image_height = s.image_width = side;
  t = s;
  t.kind = DomainKind::kTarget;
  t.name = "t";
  t.style_signal.gain[0] = 0.7;
  t.style_signal.bias[1] = 0.1;
  return {GenerateDomain(s, 11), GenerateDomain(t, 12)};
}

void BM_Stylize(benchmark::State& state) {
  const StylizePair p = MakePair(static_cast<int>(state.range(0)));
  StylizerConfig cfg;
  const Sample& content = p.src.samples[0];
  const Sample& style = p.tgt.samples[0];  // same slot -> same label
  for (auto _ : state) {
    Sample out = Stylize(content, style, cfg);
    benchmark::DoNotOptimize(out.image.data.data());
  }
}
BENCHMARK(BM_Stylize)->Arg(32)->Arg(64);

void BM_GeneratorForward(benchmark::State& state) {
  const ArchConfig arch = DeskArch();
  ModelBundle models = BuildModels(arch, 5);
  DomainSpec s;
  s.n_subjects = 4;
  s.frames_per_subject = 8;
  const DomainDataset ds = GenerateDomain(s, 6);
  std::vector<int> rows(static_cast<size_t>(state.range(0)));
  for (size_t i = 0; i < rows.size(); ++i) rows[i] = static_cast<int>(i);
  const Blob in = DatasetBlob(ds, rows);
  for (auto _ : state) {
    Blob f = models.g.Forward(in, /*train=*/false);
    benchmark::DoNotOptimize(f.m.data());
  }
}
BENCHMARK(BM_GeneratorForward)->Arg(16)->Arg(64);

void BM_TrainStep(benchmark::State& state) {
  DomainSpec ss, ts;
  ss.kind = DomainKind::kSource;
  ss.name = "src";
  ss.n_subjects = 8;
  ss.frames_per_subject = 8;
  ts.kind = DomainKind::kTarget;
  ts.name = "tgt";
  ts.n_subjects = 2;
  ts.frames_per_subject = 4;
  ts.style_signal.gain[0] = 0.7;
  DomainDataset src = SplitDataset(GenerateDomain(ss, 21),
                                   {{"train", 0.75}, {"val", 0.25}}, 22);
  DomainDataset tgt = GenerateDomain(ts, 23);
  StylizerConfig sc;
  sc.aux_ratio = 0.25;
  DomainDataset aux = BuildAuxDomain(src, tgt, sc, 24);

  ModelBundle models = BuildModels(DeskArch(), 25);
  TeacherSnapshot teacher(models.g, models.arch);
  TrainConfig cfg;
  cfg.steps = 1 << 30;  // stepped manually
  cfg.progressive = false;
  Trainer trainer(&models, &teacher, &src, &tgt, &aux, cfg);
  for (auto _ : state) {
    StepLogRow row = trainer.StepOnce();
    benchmark::DoNotOptimize(row.l_total);
  }
}
BENCHMARK(BM_TrainStep);

}  // namespace

BENCHMARK_MAIN();
