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

#include "xocube/bench/Bench.h"

#include "xocube/Errors.h"
#include "xocube/query/Evaluator.h"

#include <algorithm>
#include <chrono>
#include <cstdio>

namespace fs = std::filesystem;

namespace xocube::bench {

LoadedModel::LoadedModel(encoding::EncodedDataset dataset,
                         std::vector<query::IndexTarget> const& targets)
    : _dataset(std::move(dataset)) {
  _docs.add(_dataset.factsDoc);
  if (_dataset.dimsDoc) {
    _docs.add(*_dataset.dimsDoc);
  }
  _index = query::ValueIndex::build(_docs, targets);
}

TimingRecord measure(LoadedModel const& loaded, std::size_t size,
                     olap::QueryForm form, SuiteEntry const& entry,
                     cube::GroupTable const& expected,
                     cube::CubeSchema const& schema, std::size_t runs,
                     std::size_t discard, bool useIndex) {
  if (runs <= discard) {
    throw InvalidParam("runs per query must exceed the discarded runs");
  }
  TimingRecord record;
  record.size = size;
  record.model = loaded.model();
  record.form = form;
  record.requestId = entry.id;
  record.keyLevels = entry.request.keysToString();
  record.groupCount = expected.rows.size();

  std::vector<double> times;
  try {
    auto query = olap::compile(entry.request, schema, loaded.model(), form);
    query::ValueIndex const* index = useIndex ? &loaded.index() : nullptr;
    for (std::size_t run = 0; run < runs; ++run) {
      auto start = std::chrono::steady_clock::now();
      auto result = query::evaluate(query, loaded.documents(), index);
      auto stop = std::chrono::steady_clock::now();
      auto table = olap::extractGroupTable(result.items, entry.request);
      if (table != expected) {
        record.failure = "result differs from the oracle: " +
                         cube::describeDifference(expected, table, 3);
        return record;
      }
      times.push_back(
          std::chrono::duration<double, std::milli>(stop - start).count());
    }
  } catch (Error const& e) {
    record.failure = e.what();
    return record;
  }

  double sum = 0;
  for (std::size_t i = discard; i < times.size(); ++i) {
    sum += times[i];
  }
  record.reportedMs = sum / double(times.size() - discard);
  record.wallMs = std::move(times);
  return record;
}

std::vector<TimingRecord> runBenchmark(BenchmarkPlan const& plan,
                                       fs::path const& dataDir,
                                       RunCallbacks const& callbacks) {
  auto progress = [&](std::string const& message) {
    if (callbacks.onProgress) {
      callbacks.onProgress(message);
    }
  };

  std::vector<TimingRecord> records;
  for (std::size_t size : plan.sizes) {
    auto dir = dataDir / datasetDirName(size);
    if (!fs::is_directory(dir)) {
      throw IoError("missing dataset directory " + dir.string());
    }
    Manifest manifest = readManifest(dir);
    cube::CubeInstance instance = regenerate(manifest);

    std::vector<cube::GroupTable> expected;
    for (auto const& entry : plan.suite) {
      expected.push_back(cube::bruteForceGroup(
          instance, entry.request.keyLevels, entry.request.measure,
          entry.request.aggregate));
    }
    auto targets = defaultIndexTargets(instance.schema);

    for (auto model : plan.models) {
      if (std::find(manifest.models.begin(), manifest.models.end(), model) ==
          manifest.models.end()) {
        throw IoError(dir.string() + " has no " +
                      std::string(encoding::toString(model)) + " encoding");
      }
      progress("loading " + std::string(encoding::toString(model)) + " n=" +
               std::to_string(size));
      LoadedModel loaded(loadModel(dir, model), targets);

      for (auto form : plan.forms) {
        for (std::size_t i = 0; i < plan.suite.size(); ++i) {
          auto record = measure(loaded, size, form, plan.suite[i],
                                expected[i], instance.schema,
                                plan.runsPerQuery, plan.discard,
                                plan.useIndex);
          char line[160];
          if (record.correct()) {
            std::snprintf(line, sizeof(line), "  %s/%s %s groups=%zu %.3f ms",
                          std::string(encoding::toString(model)).c_str(),
                          std::string(olap::toString(form)).c_str(),
                          record.requestId.c_str(), record.groupCount,
                          *record.reportedMs);
            progress(line);
          } else {
            progress("  " + std::string(encoding::toString(model)) + "/" +
                     std::string(olap::toString(form)) + " " +
                     record.requestId + " CORRECTNESS FAILURE: " +
                     record.failure);
          }
          if (callbacks.onRecord) {
            callbacks.onRecord(record);
          }
          records.push_back(std::move(record));
        }
      }
    }
  }
  return records;
}

}  // namespace xocube::bench
