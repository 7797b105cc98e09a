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

#include <doctest.h>

#include "xocube/Errors.h"
#include "xocube/bench/Bench.h"

#include <fstream>
#include <random>
#include <sstream>

using namespace xocube;
namespace fs = std::filesystem;

namespace {

/// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    _path = fs::temp_directory_path() /
            ("xocube-test-" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(_path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(_path, ec);
  }
  fs::path const& path() const { return _path; }

 private:
  fs::path _path;
};

std::string slurp(fs::path const& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bench::TimingRecord record(std::size_t size, encoding::ModelKind model,
                           olap::QueryForm form, std::string id,
                           std::size_t groups, std::vector<double> times) {
  bench::TimingRecord r;
  r.size = size;
  r.model = model;
  r.form = form;
  r.requestId = std::move(id);
  r.keyLevels = "customer.country,product.category";
  r.groupCount = groups;
  double sum = 0;
  for (std::size_t i = 1; i < times.size(); ++i) {
    sum += times[i];
  }
  r.reportedMs = sum / double(times.size() - 1);
  r.wallMs = std::move(times);
  return r;
}

}  // namespace

TEST_CASE("default suite") {
  auto suite = bench::defaultSuite();
  REQUIRE(suite.size() == 8);
  std::size_t oneKey = 0;
  for (auto const& e : suite) {
    oneKey += e.request.keyLevels.size() == 1;
  }
  CHECK(oneKey == 4);
  CHECK(suite[7].request.keysToString() == "customer.country,product.category");

  auto instance = cube::generate(cube::runningExampleSchema(), 2000, 5, 42);
  std::size_t previous = 0;
  for (auto const& e : suite) {
    CAPTURE(e.id);
    auto groups =
        cube::bruteForceGroup(instance, e.request.keyLevels, "quantity")
            .rows.size();
    CHECK(groups >= previous);
    previous = groups;
  }
}

TEST_CASE("dataset generation writes all layouts and a manifest") {
  TempDir tmp;
  auto dirs = bench::generateDatasets({300}, 9, 3, tmp.path() / "a");
  REQUIRE(dirs.size() == 1);
  std::size_t files = 0;
  for (auto const& entry : fs::directory_iterator(dirs[0])) {
    (void)entry;
    ++files;
  }
  CHECK(files == 7);
  for (auto model : encoding::kAllModels) {
    for (auto const& name : bench::modelFiles(model)) {
      CHECK(fs::exists(dirs[0] / name));
    }
  }

  auto manifest = bench::readManifest(dirs[0]);
  CHECK(manifest.nFacts == 300);
  CHECK(manifest.seed == 9);
  CHECK(manifest.fanout == 3);
  CHECK(manifest.models.size() == 4);
  CHECK(bench::discoverSizes(tmp.path() / "a") == std::vector<std::size_t>{300});

  // loading gives back the encoding of the regenerated instance
  auto instance = bench::regenerate(manifest);
  for (auto model : encoding::kAllModels) {
    auto loaded = bench::loadModel(dirs[0], model);
    auto encoded = encoding::encode(instance, model);
    CHECK(xml::structurallyEqual(loaded.factsDoc, encoded.factsDoc));
    CHECK(loaded.dimsDoc.has_value() == encoded.dimsDoc.has_value());
    CHECK(encoding::equivalent(instance, encoding::decode(loaded), model));
  }

  SUBCASE("same seed gives byte-identical files") {
    auto again = bench::generateDatasets({300}, 9, 3, tmp.path() / "b");
    for (auto const& entry : fs::directory_iterator(dirs[0])) {
      auto name = entry.path().filename();
      CHECK(slurp(entry.path()) == slurp(again[0] / name));
    }
  }
}

TEST_CASE("flat layout grows with the fact count") {
  TempDir tmp;
  auto dirs = bench::generateDatasets({100, 1000}, 42, 5, tmp.path());
  auto small = fs::file_size(dirs[0] / "flat.xml");
  auto large = fs::file_size(dirs[1] / "flat.xml");
  CHECK(large > 8 * small);
  CHECK(large < 12 * small);
}

TEST_CASE("dataset errors name the path") {
  TempDir tmp;
  CHECK_THROWS_AS(bench::readManifest(tmp.path() / "missing"), IoError);
  std::ofstream(tmp.path() / "manifest.txt") << "n_facts=ten\n";
  CHECK_THROWS_WITH_AS(bench::readManifest(tmp.path()),
                       doctest::Contains("manifest.txt"), IoError);
  std::ofstream(tmp.path() / "manifest.txt") << "n_facts=10\nseed=1\n";
  CHECK_THROWS_AS(bench::readManifest(tmp.path()), IoError);

  std::ofstream(tmp.path() / "flat.xml") << "<orders><order></orders>";
  CHECK_THROWS_WITH_AS(bench::loadModel(tmp.path(), encoding::ModelKind::Flat),
                       doctest::Contains("flat.xml"), IoError);

  bench::BenchmarkPlan plan;
  plan.sizes = {1000};
  CHECK_THROWS_AS(bench::runBenchmark(plan, tmp.path()), IoError);
}

TEST_CASE("benchmark run over a small dataset") {
  TempDir tmp;
  bench::generateDatasets({200}, 42, 5, tmp.path());
  bench::BenchmarkPlan plan;
  plan.sizes = {200};
  std::size_t streamed = 0;
  bench::RunCallbacks callbacks;
  callbacks.onRecord = [&](bench::TimingRecord const&) { ++streamed; };
  auto records = bench::runBenchmark(plan, tmp.path(), callbacks);
  CHECK(records.size() == 64);
  CHECK(streamed == 64);

  auto instance = bench::regenerate(bench::readManifest(tmp.path() / "n200"));
  auto suite = bench::defaultSuite();
  for (auto const& r : records) {
    CAPTURE(r.requestId);
    REQUIRE(r.correct());
    REQUIRE(r.wallMs.size() == 4);
    double mean = (r.wallMs[1] + r.wallMs[2] + r.wallMs[3]) / 3;
    CHECK(*r.reportedMs == doctest::Approx(mean));
    auto const& entry = *std::find_if(suite.begin(), suite.end(),
                                      [&](auto const& e) {
                                        return e.id == r.requestId;
                                      });
    CHECK(r.groupCount == cube::bruteForceGroup(instance,
                                                entry.request.keyLevels,
                                                "quantity")
                              .rows.size());
  }
}

TEST_CASE("a wrong answer yields no timings") {
  auto instance = cube::generate(cube::runningExampleSchema(), 100, 3, 1);
  bench::LoadedModel loaded(
      encoding::encode(instance, encoding::ModelKind::Flat),
      bench::defaultIndexTargets(instance.schema));
  auto entry = bench::defaultSuite()[0];
  auto expected = cube::bruteForceGroup(instance, entry.request.keyLevels,
                                        "quantity");
  auto good = bench::measure(loaded, 100, olap::QueryForm::Iterate, entry,
                             expected, instance.schema, 4, 1);
  CHECK(good.correct());

  expected.rows.begin()->second += Decimal::fromInteger(1);
  auto bad = bench::measure(loaded, 100, olap::QueryForm::Iterate, entry,
                            expected, instance.schema, 4, 1);
  CHECK_FALSE(bad.correct());
  CHECK(bad.wallMs.empty());
  CHECK(bad.failure.find("oracle") != std::string::npos);
  CHECK(bench::toCsvRow(bad).ends_with(",,,,,CORRECTNESS_FAILURE"));

  CHECK_THROWS_AS(bench::measure(loaded, 100, olap::QueryForm::Iterate, entry,
                                 expected, instance.schema, 1, 1),
                  InvalidParam);
}

TEST_CASE("CSV round trip") {
  using encoding::ModelKind;
  using olap::QueryForm;
  std::vector<bench::TimingRecord> records = {
      record(1000, ModelKind::Flat, QueryForm::Iterate, "q1", 5,
             {2.5, 1.0, 2.0, 3.0}),
      record(1000, ModelKind::XCube, QueryForm::Grouped, "q8", 625,
             {9.0, 4.0, 4.0, 4.0}),
  };
  bench::TimingRecord failed = records[0];
  failed.requestId = "q2";
  failed.reportedMs.reset();
  failed.wallMs.clear();
  failed.failure = "mismatch";
  records.push_back(failed);

  std::string csv = bench::csvHeader() + "\n";
  for (auto const& r : records) {
    csv += bench::toCsvRow(r) + "\n";
  }
  CHECK(csv.find("\"customer.country,product.category\"") != std::string::npos);
  auto parsed = bench::parseCsv(csv);
  REQUIRE(parsed.size() == 3);
  CHECK((parsed[0].model == ModelKind::Flat));
  CHECK(parsed[0].keyLevels == "customer.country,product.category");
  CHECK(parsed[0].wallMs == std::vector<double>{2.5, 1.0, 2.0, 3.0});
  CHECK(*parsed[0].reportedMs == doctest::Approx(2.0));
  CHECK(parsed[1].groupCount == 625);
  CHECK_FALSE(parsed[2].correct());
}

TEST_CASE("malformed CSV") {
  std::string header = bench::csvHeader() + "\n";
  CHECK(bench::parseCsv("").empty());
  CHECK(bench::parseCsv(header).empty());
  CHECK_THROWS_AS(bench::parseCsv("size,model\n"), MalformedCsv);
  CHECK_THROWS_AS(bench::parseCsv(header + "1000,flat,iterate\n"),
                  MalformedCsv);
  CHECK_THROWS_AS(
      bench::parseCsv(header + "1000,flat,sideways,q1,k,5,1,1,1,1,1\n"),
      MalformedCsv);
  CHECK_THROWS_AS(
      bench::parseCsv(header + "1000,flat,iterate,q1,k,five,1,1,1,1,1\n"),
      MalformedCsv);
  CHECK_THROWS_AS(
      bench::parseCsv(header + "1000,flat,iterate,q1,\"k,5,1,1,1,1,1\n"),
      MalformedCsv);
  CHECK_THROWS_WITH_AS(
      bench::parseCsv(header + "\n1000,flat,iterate,q1,k,5,1,1,1,1,x\n"),
      doctest::Contains("line 3"), MalformedCsv);
}

TEST_CASE("report tables") {
  using encoding::ModelKind;
  using olap::QueryForm;
  CHECK(bench::buildReport({}).byGroupCount.empty());
  CHECK(bench::buildReport({}).bySize.empty());

  std::vector<bench::TimingRecord> records;
  for (std::size_t size : {1000, 10000}) {
    for (auto model : {ModelKind::Flat, ModelKind::XCube}) {
      records.push_back(record(size, model, QueryForm::Iterate, "q8", 625,
                               {1, 2, 2, 2}));
      records.push_back(record(size, model, QueryForm::Iterate, "q1", 5,
                               {1, 1, 1, 1}));
    }
  }
  records.back().reportedMs.reset();

  auto report = bench::buildReport(records);
  CHECK(report.groupCountSize == 10000);
  // one series per (model, form), ordered by group count
  REQUIRE(report.byGroupCount.size() == 3);
  CHECK(report.byGroupCount[0].model == "flat");
  CHECK(report.byGroupCount[0].requestId == "q1");
  CHECK(report.byGroupCount[1].requestId == "q8");
  CHECK(report.byGroupCount[2].model == "xcube");

  // one point per size per series
  REQUIRE(report.bySize.size() == 4);
  CHECK(report.bySize[0].size == 1000);
  CHECK(report.bySize[0].totalMs == doctest::Approx(3.0));
  CHECK(report.bySize[3].model == "xcube");
  CHECK(report.bySize[3].failures == 1);
  CHECK(report.bySize[3].totalMs == doctest::Approx(2.0));

  CHECK(bench::tableACsv(report).starts_with(
      "model,form,request_id,group_count,reported_ms\nflat,iterate,q1,5,"
      "1.000\n"));
  CHECK(bench::tableBCsv(report).find("xcube,iterate,10000,2.000,1") !=
        std::string::npos);
  auto text = bench::tableBText(report);
  CHECK(text.find("total_ms") != std::string::npos);

  // without the fixed size the largest one is used
  CHECK(bench::buildReport(records, 5).groupCountSize == 10000);
}
