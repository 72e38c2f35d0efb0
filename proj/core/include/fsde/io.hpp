// core/include/fsde/io.hpp

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

#ifndef FSDE_IO_HPP_
#define FSDE_IO_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "fsde/evalmetrics.hpp"
#include "fsde/stylizer.hpp"
#include "fsde/synthdata.hpp"

namespace fsde {

void EnsureDir(const std::string& dir);
void WriteTextFile(const std::string& path, const std::string& text);
std::string ReadTextFile(const std::string& path);

// Raw little-endian doubles, no header; the manifest that references the
// file records the element count.
void WriteDoubleArray(const std::string& path, const double* data, int64_t n);
std::vector<double> ReadDoubleArray(const std::string& path, int64_t expected);

// Dataset directory layout: manifest.json (name, kind, seed, spec, splits),
// images.bin (row-major float32, sample-major), labels.csv
// (index,label,subject_id).
void SaveDataset(const std::string& dir, const DomainDataset& ds);
DomainDataset LoadDataset(const std::string& dir);

// Aux provenance: CSV (aux_index, content_index, style_index, alpha).
void SaveProvenance(const std::string& path,
                    const std::vector<AuxProvenance>& rows);
std::vector<AuxProvenance> LoadProvenance(const std::string& path);

// Score CSV: header sample_index,domain,label,score.
void SaveScoreCsv(const std::string& path, const ScoreSet& set);
ScoreSet LoadScoreCsv(const std::string& path);

// Per-seed evaluation reports plus cross-seed aggregation, serialized with
// the fixed schema {threshold, per_domain, seeds, mean, std}: per_domain
// maps domain -> metric -> per-seed value list (raw fractions); mean/std
// map domain -> metric -> scalar.
struct SeedReports {
  std::vector<uint64_t> seeds;
  std::vector<MetricsReport> reports;  // parallel to seeds
};

void SaveReportJson(const std::string& path, const SeedReports& agg);
SeedReports LoadReportJson(const std::string& path);

// "mm.dd ± ss.ss" percent cell used by the results tables.
std::string FormatPercentCell(double mean_fraction, double std_fraction);

// Full-precision decimal for machine-readable CSV fields.
std::string FormatDouble(double v);

}  // namespace fsde

#endif  // FSDE_IO_HPP_
