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

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace xocube::bench {

using encoding::ModelKind;

namespace {

void writeFile(fs::path const& path, std::string const& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) {
    throw IoError("write failed for " + path.string());
  }
}

std::string readFile(fs::path const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

template<typename T>
T parseNumber(std::string_view text, std::string const& key,
              fs::path const& path) {
  T value{};
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                   value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw IoError(path.string() + ": bad value for " + key);
  }
  return value;
}

}  // namespace

std::string datasetDirName(std::size_t size) {
  return "n" + std::to_string(size);
}

std::vector<std::string> modelFiles(ModelKind model) {
  switch (model) {
    case ModelKind::Flat:
      return {"flat.xml"};
    case ModelKind::FlatNested:
      return {"flat_nested.xml"};
    case ModelKind::Hierarchical:
      return {"hier_facts.xml", "hier_dims.xml"};
    case ModelKind::XCube:
      return {"xcube_facts.xml", "xcube_dims.xml"};
  }
  return {};
}

void writeDataset(cube::CubeInstance const& instance, Manifest const& manifest,
                  fs::path const& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create " + dir.string() + ": " + ec.message());
  }
  for (ModelKind model : manifest.models) {
    auto encoded = encoding::encode(instance, model);
    auto files = modelFiles(model);
    writeFile(dir / files[0], xml::serialize(encoded.factsDoc, true));
    if (encoded.dimsDoc) {
      writeFile(dir / files[1], xml::serialize(*encoded.dimsDoc, true));
    }
  }

  std::string text;
  text += "format_version=" + std::to_string(manifest.formatVersion) + "\n";
  text += "n_facts=" + std::to_string(manifest.nFacts) + "\n";
  text += "seed=" + std::to_string(manifest.seed) + "\n";
  text += "fanout=" + std::to_string(manifest.fanout) + "\n";
  text += "models=";
  for (std::size_t i = 0; i < manifest.models.size(); ++i) {
    if (i > 0) {
      text += ',';
    }
    text += encoding::toString(manifest.models[i]);
  }
  text += "\n";
  writeFile(dir / kManifestFile, text);
}

std::vector<fs::path> generateDatasets(std::vector<std::size_t> const& sizes,
                                       std::uint64_t seed, std::int64_t fanout,
                                       fs::path const& outdir) {
  std::vector<fs::path> dirs;
  for (std::size_t size : sizes) {
    Manifest manifest;
    manifest.nFacts = size;
    manifest.seed = seed;
    manifest.fanout = fanout;
    manifest.models.assign(encoding::kAllModels.begin(),
                           encoding::kAllModels.end());
    auto dir = outdir / datasetDirName(size);
    writeDataset(regenerate(manifest), manifest, dir);
    dirs.push_back(std::move(dir));
  }
  return dirs;
}

Manifest readManifest(fs::path const& dir) {
  auto path = dir / kManifestFile;
  std::istringstream in(readFile(path));
  Manifest manifest;
  bool seen[4] = {false, false, false, false};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') {
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw IoError(path.string() + ": expected key=value, got '" + line + "'");
    }
    std::string key = line.substr(0, eq);
    std::string_view value = std::string_view(line).substr(eq + 1);
    if (key == "format_version") {
      manifest.formatVersion = parseNumber<int>(value, key, path);
    } else if (key == "n_facts") {
      manifest.nFacts = parseNumber<std::size_t>(value, key, path);
      seen[0] = true;
    } else if (key == "seed") {
      manifest.seed = parseNumber<std::uint64_t>(value, key, path);
      seen[1] = true;
    } else if (key == "fanout") {
      manifest.fanout = parseNumber<std::int64_t>(value, key, path);
      seen[2] = true;
    } else if (key == "models") {
      while (!value.empty()) {
        auto comma = value.find(',');
        try {
          manifest.models.push_back(
              encoding::parseModelKind(value.substr(0, comma)));
        } catch (InvalidParam const& e) {
          throw IoError(path.string() + ": " + e.what());
        }
        value = comma == std::string_view::npos ? std::string_view()
                                                : value.substr(comma + 1);
      }
      seen[3] = true;
    }
  }
  if (manifest.formatVersion != kFormatVersion) {
    throw IoError(path.string() + ": unsupported format_version " +
                  std::to_string(manifest.formatVersion));
  }
  if (!(seen[0] && seen[1] && seen[2] && seen[3])) {
    throw IoError(path.string() +
                  ": n_facts, seed, fanout and models are required");
  }
  return manifest;
}

cube::CubeInstance regenerate(Manifest const& manifest) {
  return cube::generate(cube::runningExampleSchema(), manifest.nFacts,
                        manifest.fanout, manifest.seed);
}

encoding::EncodedDataset loadModel(fs::path const& dir, ModelKind model) {
  auto files = modelFiles(model);
  auto load = [&](std::string const& name) {
    auto path = dir / name;
    std::string bytes = readFile(path);
    try {
      return xml::parseDocument(bytes);
    } catch (ParseError const& e) {
      throw IoError(path.string() + ": " + e.what());
    }
  };
  encoding::EncodedDataset dataset{model, load(files[0]), std::nullopt};
  if (files.size() > 1) {
    dataset.dimsDoc.emplace(load(files[1]));
  }
  return dataset;
}

std::vector<std::size_t> discoverSizes(fs::path const& dataDir) {
  std::vector<std::size_t> sizes;
  std::error_code ec;
  for (auto const& entry : fs::directory_iterator(dataDir, ec)) {
    std::string name = entry.path().filename().string();
    if (!entry.is_directory() || name.size() < 2 || name[0] != 'n' ||
        !fs::exists(entry.path() / kManifestFile)) {
      continue;
    }
    std::size_t size = 0;
    auto [end, err] =
        std::from_chars(name.data() + 1, name.data() + name.size(), size);
    if (err == std::errc() && end == name.data() + name.size()) {
      sizes.push_back(size);
    }
  }
  if (ec) {
    throw IoError("cannot list " + dataDir.string() + ": " + ec.message());
  }
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

}  // namespace xocube::bench
