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

#include "xocube/Errors.h"
#include "xocube/bench/Bench.h"
#include "xocube/query/Evaluator.h"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace xocube;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCorrectness = 2;

std::string readFile(std::string const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

void writeFile(fs::path const& path, std::string const& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !out.write(content.data(), std::streamsize(content.size()))) {
    throw IoError("cannot write " + path.string());
  }
}

std::vector<std::string> splitList(std::string const& text) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    if (!part.empty()) {
      parts.push_back(part);
    }
  }
  return parts;
}

struct GenerateArgs {
  std::string sizes = "1000,10000,100000";
  std::uint64_t seed = 42;
  std::int64_t fanout = 5;
  std::string out;
};

int runGenerate(GenerateArgs const& args) {
  std::vector<std::size_t> sizes;
  for (auto const& s : splitList(args.sizes)) {
    sizes.push_back(std::stoull(s));
  }
  for (auto const& dir :
       bench::generateDatasets(sizes, args.seed, args.fanout, args.out)) {
    std::cerr << "wrote " << dir.string() << "\n";
  }
  return kExitOk;
}

struct BenchArgs {
  std::string data;
  std::string sizes;
  std::string models = "flat,flat-nested,hier,xcube";
  std::string forms = "iterate,grouped";
  std::string out;
  bool noIndex = false;
  bool quiet = false;
};

int runBench(BenchArgs const& args) {
  bench::BenchmarkPlan plan;
  if (args.sizes.empty()) {
    plan.sizes = bench::discoverSizes(args.data);
    if (plan.sizes.empty()) {
      throw IoError("no datasets under " + args.data);
    }
  } else {
    for (auto const& s : splitList(args.sizes)) {
      plan.sizes.push_back(std::stoull(s));
    }
  }
  plan.models.clear();
  for (auto const& m : splitList(args.models)) {
    plan.models.push_back(encoding::parseModelKind(m));
  }
  plan.forms.clear();
  for (auto const& f : splitList(args.forms)) {
    plan.forms.push_back(olap::parseQueryForm(f));
  }
  plan.useIndex = !args.noIndex;

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!args.out.empty()) {
    file.open(args.out, std::ios::trunc);
    if (!file) {
      throw IoError("cannot write " + args.out);
    }
    out = &file;
  }
  *out << bench::csvHeader() << "\n";

  bool failed = false;
  bench::RunCallbacks callbacks;
  callbacks.onRecord = [&](bench::TimingRecord const& record) {
    *out << bench::toCsvRow(record) << "\n" << std::flush;
    failed = failed || !record.correct();
  };
  if (!args.quiet) {
    callbacks.onProgress = [](std::string const& line) {
      std::cerr << line << "\n";
    };
  }
  bench::runBenchmark(plan, args.data, callbacks);
  return failed ? kExitCorrectness : kExitOk;
}

struct ReportArgs {
  std::string csv;
  std::size_t size = 10000;
  std::string csvDir;
};

int runReport(ReportArgs const& args) {
  auto report = bench::buildReport(bench::parseCsv(readFile(args.csv)),
                                   args.size);
  std::cout << "Table A: time by number of groups (n=" << report.groupCountSize
            << ")\n"
            << bench::tableAText(report) << "\n"
            << "Table B: suite total by size\n"
            << bench::tableBText(report);
  if (!args.csvDir.empty()) {
    fs::create_directories(args.csvDir);
    writeFile(fs::path(args.csvDir) / "table_a.csv", bench::tableACsv(report));
    writeFile(fs::path(args.csvDir) / "table_b.csv", bench::tableBCsv(report));
  }
  return kExitOk;
}

struct QueryArgs {
  std::string query;
  std::vector<std::string> files;
  bool noIndex = false;
  bool pretty = false;
  bool stats = false;
};

int runQuery(QueryArgs const& args) {
  std::string text =
      args.query.starts_with("@") ? readFile(args.query.substr(1)) : args.query;
  auto parsed = query::parseQuery(text);

  std::vector<xml::Document> docs;
  docs.reserve(args.files.size());
  for (auto const& file : args.files) {
    docs.push_back(xml::parseDocument(readFile(file)));
  }
  query::DocumentSet set;
  for (auto const& doc : docs) {
    set.add(doc);
  }
  std::optional<query::ValueIndex> index;
  if (!args.noIndex) {
    index = query::ValueIndex::build(
        set, bench::defaultIndexTargets(cube::runningExampleSchema()));
  }
  query::EvalStats stats;
  auto result =
      query::evaluate(parsed, set, index ? &*index : nullptr, &stats);
  std::cout << result.serialize(args.pretty);
  if (args.stats) {
    std::cerr << "indexed steps: " << stats.indexedSteps
              << ", scanned steps: " << stats.scannedSteps << "\n";
  }
  return kExitOk;
}

struct CompileArgs {
  std::string keys;
  std::string model = "flat";
  std::string form = "iterate";
  std::string measure = "quantity";
};

int runCompile(CompileArgs const& args) {
  olap::OlapRequest request;
  request.measure = args.measure;
  for (auto const& key : splitList(args.keys)) {
    request.keyLevels.push_back(cube::LevelRef::parse(key));
  }
  std::cout << olap::compileText(request, cube::runningExampleSchema(),
                                 encoding::parseModelKind(args.model),
                                 olap::parseQueryForm(args.form))
            << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"xocube: XML OLAP micro-engine and benchmark harness"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand(
      "generate", "Generate datasets in all four layouts");
  generate->add_option("--sizes", gen.sizes, "Comma-separated fact counts")
      ->capture_default_str();
  generate->add_option("--seed", gen.seed)->capture_default_str();
  generate->add_option("--fanout", gen.fanout)->capture_default_str();
  generate->add_option("--out", gen.out, "Output directory")->required();

  BenchArgs ben;
  auto* benchCmd =
      app.add_subcommand("bench", "Run the query suite and write CSV timings");
  benchCmd->add_option("--data", ben.data, "Dataset directory")->required();
  benchCmd->add_option("--sizes", ben.sizes,
                       "Comma-separated sizes (default: all found)");
  benchCmd->add_option("--models", ben.models)->capture_default_str();
  benchCmd->add_option("--forms", ben.forms)->capture_default_str();
  benchCmd->add_option("--out", ben.out, "CSV file (default: stdout)");
  benchCmd->add_flag("--no-index", ben.noIndex, "Disable the value index");
  benchCmd->add_flag("--quiet", ben.quiet, "No progress on stderr");

  ReportArgs rep;
  auto* report =
      app.add_subcommand("report", "Summarize a benchmark CSV into tables");
  report->add_option("csv", rep.csv, "CSV written by bench")->required();
  report->add_option("--size", rep.size, "Size for the group-count table")
      ->capture_default_str();
  report->add_option("--csv-dir", rep.csvDir,
                     "Also write table_a.csv and table_b.csv here");

  QueryArgs qry;
  auto* queryCmd =
      app.add_subcommand("query", "Evaluate a query over XML documents");
  queryCmd->add_option("query", qry.query, "Query text, or @file")
      ->required();
  queryCmd->add_option("files", qry.files, "XML documents");
  queryCmd->add_flag("--no-index", qry.noIndex);
  queryCmd->add_flag("--pretty", qry.pretty);
  queryCmd->add_flag("--stats", qry.stats, "Print index usage on stderr");

  CompileArgs cmp;
  auto* compileCmd = app.add_subcommand(
      "compile", "Print the query compiled for an OLAP request");
  compileCmd
      ->add_option("--keys", cmp.keys,
                   "Comma-separated dimension.level keys")
      ->required();
  compileCmd->add_option("--model", cmp.model)->capture_default_str();
  compileCmd->add_option("--form", cmp.form)->capture_default_str();
  compileCmd->add_option("--measure", cmp.measure)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*generate) {
      return runGenerate(gen);
    }
    if (*benchCmd) {
      return runBench(ben);
    }
    if (*report) {
      return runReport(rep);
    }
    if (*queryCmd) {
      return runQuery(qry);
    }
    return runCompile(cmp);
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
