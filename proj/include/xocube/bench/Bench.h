////////////////////////////////////////////////////////////////////////////////
/// Copyright 2026 The xocube Authors
///
/// Licensed under the Apache License, Version 2.0 (the "License");
/// you may not use this file except in compliance with the License.
/// You may obtain a copy of the License at
///
///     http://www.apache.org/licenses/LICENSE-2.0
///
/// Unless required by applicable law or agreed to in writing, software
/// distributed under the License is distributed on an "AS IS" BASIS,
/// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
/// See the License for the specific language governing permissions and
/// limitations under the License.
////////////////////////////////////////////////////////////////////////////////

#pragma once

#include "xocube/cube/Cube.h"
#include "xocube/encoding/Encoders.h"
#include "xocube/olap/Olap.h"
#include "xocube/query/ValueIndex.h"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace xocube::bench {

inline constexpr int kFormatVersion = 1;
inline constexpr char const* kManifestFile = "manifest.txt";

/// Parameters a dataset directory was generated from; enough to regenerate
/// the canonical instance for the oracle.
struct Manifest {
  std::size_t nFacts = 0;
  std::uint64_t seed = 0;
  std::int64_t fanout = 0;
  int formatVersion = kFormatVersion;
  std::vector<encoding::ModelKind> models;
};

/// `n10000`
std::string datasetDirName(std::size_t size);

/// File names of one model's documents: facts first, then dimensions.
std::vector<std::string> modelFiles(encoding::ModelKind model);

/// Writes `<outdir>/n<size>/` with the six XML files and the manifest for
/// every size. Throws IoError naming the path.
std::vector<std::filesystem::path> generateDatasets(
    std::vector<std::size_t> const& sizes, std::uint64_t seed,
    std::int64_t fanout, std::filesystem::path const& outdir);

void writeDataset(cube::CubeInstance const& instance, Manifest const& manifest,
                  std::filesystem::path const& dir);

Manifest readManifest(std::filesystem::path const& dir);
/// The canonical instance the manifest describes.
cube::CubeInstance regenerate(Manifest const& manifest);
encoding::EncodedDataset loadModel(std::filesystem::path const& dir,
                                   encoding::ModelKind model);
/// Sizes of the `n<size>` dataset directories under `dataDir`, ascending.
std::vector<std::size_t> discoverSizes(std::filesystem::path const& dataDir);

struct SuiteEntry {
  std::string id;
  olap::OlapRequest request;
};

/// Eight requests from coarse to fine: [continent], [family], [country],
/// [category], [continent,family], [continent,category], [country,family],
/// [country,category]. The last one is Query 1.
std::vector<SuiteEntry> defaultSuite();

/// Every join attribute (ref, id, toNode, node, name) and every level
/// element of the schema.
std::vector<query::IndexTarget> defaultIndexTargets(
    cube::CubeSchema const& schema);

struct BenchmarkPlan {
  std::vector<std::size_t> sizes;
  std::vector<encoding::ModelKind> models{encoding::kAllModels.begin(),
                                          encoding::kAllModels.end()};
  std::vector<olap::QueryForm> forms{olap::QueryForm::Iterate,
                                     olap::QueryForm::Grouped};
  std::vector<SuiteEntry> suite = defaultSuite();
  std::size_t runsPerQuery = 4;
  std::size_t discard = 1;
  bool useIndex = true;
};

struct TimingRecord {
  std::size_t size = 0;
  encoding::ModelKind model = encoding::ModelKind::Flat;
  olap::QueryForm form = olap::QueryForm::Iterate;
  std::string requestId;
  std::string keyLevels;
  std::size_t groupCount = 0;
  std::vector<double> wallMs;
  /// Mean of the runs after the discarded ones; empty for a correctness
  /// failure.
  std::optional<double> reportedMs;
  std::string failure;

  bool correct() const noexcept { return reportedMs.has_value(); }
};

std::string csvHeader();
std::string toCsvRow(TimingRecord const& record);

/// Loaded documents of one model plus their index.
class LoadedModel {
 public:
  LoadedModel(encoding::EncodedDataset dataset,
              std::vector<query::IndexTarget> const& targets);
  LoadedModel(LoadedModel const&) = delete;
  LoadedModel& operator=(LoadedModel const&) = delete;

  encoding::ModelKind model() const noexcept { return _dataset.model; }
  query::DocumentSet const& documents() const noexcept { return _docs; }
  query::ValueIndex const& index() const noexcept { return _index; }

 private:
  encoding::EncodedDataset _dataset;
  query::DocumentSet _docs;
  query::ValueIndex _index;
};

/// Times one compiled query: every run is checked against `expected`
/// outside the timed region; a mismatch or evaluation error yields a
/// record without timings.
TimingRecord measure(LoadedModel const& loaded, std::size_t size,
                     olap::QueryForm form, SuiteEntry const& entry,
                     cube::GroupTable const& expected,
                     cube::CubeSchema const& schema, std::size_t runs,
                     std::size_t discard, bool useIndex = true);

struct RunCallbacks {
  std::function<void(TimingRecord const&)> onRecord;
  std::function<void(std::string const&)> onProgress;
};

/// Runs the plan over `<dataDir>/n<size>` datasets, sizes in plan order,
/// one model resident at a time. Throws IoError for missing datasets.
std::vector<TimingRecord> runBenchmark(BenchmarkPlan const& plan,
                                       std::filesystem::path const& dataDir,
                                       RunCallbacks const& callbacks = {});

/// Fig. 5 analogue: time against group count at one size.
struct GroupCountRow {
  std::string model;
  std::string form;
  std::string requestId;
  std::size_t groupCount = 0;
  double reportedMs = 0;
};

/// Fig. 6 analogue: suite total per size.
struct SizeTotalRow {
  std::string model;
  std::string form;
  std::size_t size = 0;
  double totalMs = 0;
  std::size_t failures = 0;
};

struct Report {
  std::size_t groupCountSize = 0;
  std::vector<GroupCountRow> byGroupCount;
  std::vector<SizeTotalRow> bySize;
};

/// Throws MalformedCsv with the line number.
std::vector<TimingRecord> parseCsv(std::string_view text);

/// Table A uses `fixedSize` when present in the records, otherwise the
/// largest size. Correctness failures are left out of both tables and
/// counted in table B.
Report buildReport(std::vector<TimingRecord> const& records,
                   std::size_t fixedSize = 10000);

std::string tableACsv(Report const& report);
std::string tableBCsv(Report const& report);
std::string tableAText(Report const& report);
std::string tableBText(Report const& report);

}  // namespace xocube::bench
