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
#include <cstdio>
#include <map>
#include <tuple>

namespace xocube::bench {

namespace {

constexpr std::size_t kRunColumns = 4;
constexpr std::string_view kFailureMarker = "CORRECTNESS_FAILURE";

std::string formatMs(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", ms);
  return buf;
}

std::string quoteIfNeeded(std::string const& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) {
    return field;
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') {
      out += '"';
    }
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> splitCsvLine(std::string_view line,
                                      std::size_t lineNo) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool wasQuoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      if (!field.empty() || wasQuoted) {
        throw MalformedCsv("line " + std::to_string(lineNo) +
                           ": stray quote");
      }
      quoted = wasQuoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      wasQuoted = false;
    } else {
      if (wasQuoted) {
        throw MalformedCsv("line " + std::to_string(lineNo) +
                           ": text after closing quote");
      }
      field += c;
    }
  }
  if (quoted) {
    throw MalformedCsv("line " + std::to_string(lineNo) +
                       ": unterminated quote");
  }
  fields.push_back(std::move(field));
  return fields;
}

template<typename T>
T parseField(std::string const& text, char const* column,
             std::size_t lineNo) {
  T value{};
  auto [end, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size()) {
    throw MalformedCsv("line " + std::to_string(lineNo) + ": bad " + column +
                       " '" + text + "'");
  }
  return value;
}

std::string alignedTable(std::vector<std::string> const& header,
                         std::vector<std::vector<std::string>> const& rows,
                         std::vector<bool> const& rightAlign) {
  std::vector<std::size_t> widths(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    widths[c] = header[c].size();
    for (auto const& row : rows) {
      widths[c] = std::max(widths[c], row[c].size());
    }
  }
  std::string out;
  auto emit = [&](std::vector<std::string> const& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::string pad(widths[c] - row[c].size(), ' ');
      if (c > 0) {
        out += "  ";
      }
      if (rightAlign[c]) {
        out += pad + row[c];
      } else if (c + 1 < row.size()) {
        out += row[c] + pad;
      } else {
        out += row[c];
      }
    }
    out += '\n';
  };
  emit(header);
  std::vector<std::string> rule;
  for (auto w : widths) {
    rule.emplace_back(w, '-');
  }
  emit(rule);
  for (auto const& row : rows) {
    emit(row);
  }
  return out;
}

}  // namespace

std::string csvHeader() {
  return "size,model,form,request_id,key_levels,group_count,run1_ms,run2_ms,"
         "run3_ms,run4_ms,reported_ms";
}

std::string toCsvRow(TimingRecord const& record) {
  std::string row = std::to_string(record.size);
  row += ',';
  row += encoding::toString(record.model);
  row += ',';
  row += olap::toString(record.form);
  row += ',' + quoteIfNeeded(record.requestId);
  row += ',' + quoteIfNeeded(record.keyLevels);
  row += ',' + std::to_string(record.groupCount);
  for (std::size_t i = 0; i < kRunColumns; ++i) {
    row += ',';
    if (record.correct() && i < record.wallMs.size()) {
      row += formatMs(record.wallMs[i]);
    }
  }
  row += ',';
  row += record.correct() ? formatMs(*record.reportedMs)
                          : std::string(kFailureMarker);
  return row;
}

std::vector<TimingRecord> parseCsv(std::string_view text) {
  std::vector<TimingRecord> records;
  std::size_t lineNo = 0;
  bool headerSeen = false;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view()
                                        : text.substr(nl + 1);
    ++lineNo;
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
    }
    if (line.find_first_not_of(" \t") == std::string_view::npos) {
      continue;
    }
    if (!headerSeen) {
      if (line != csvHeader()) {
        throw MalformedCsv("line " + std::to_string(lineNo) +
                           ": expected header '" + csvHeader() + "'");
      }
      headerSeen = true;
      continue;
    }
    auto fields = splitCsvLine(line, lineNo);
    if (fields.size() != 7 + kRunColumns) {
      throw MalformedCsv("line " + std::to_string(lineNo) + ": expected " +
                         std::to_string(7 + kRunColumns) + " fields, got " +
                         std::to_string(fields.size()));
    }
    TimingRecord record;
    record.size = parseField<std::size_t>(fields[0], "size", lineNo);
    try {
      record.model = encoding::parseModelKind(fields[1]);
      record.form = olap::parseQueryForm(fields[2]);
    } catch (Error const& e) {
      throw MalformedCsv("line " + std::to_string(lineNo) + ": " + e.what());
    }
    record.requestId = fields[3];
    record.keyLevels = fields[4];
    record.groupCount =
        parseField<std::size_t>(fields[5], "group_count", lineNo);
    std::string const& reported = fields[6 + kRunColumns];
    if (reported == kFailureMarker) {
      record.failure = std::string(kFailureMarker);
    } else {
      for (std::size_t i = 0; i < kRunColumns; ++i) {
        if (!fields[6 + i].empty()) {
          record.wallMs.push_back(
              parseField<double>(fields[6 + i], "run time", lineNo));
        }
      }
      record.reportedMs = parseField<double>(reported, "reported_ms", lineNo);
    }
    records.push_back(std::move(record));
  }
  return records;
}

Report buildReport(std::vector<TimingRecord> const& records,
                   std::size_t fixedSize) {
  Report report;
  if (records.empty()) {
    return report;
  }
  bool hasFixed = std::any_of(records.begin(), records.end(),
                              [&](auto const& r) { return r.size == fixedSize; });
  std::size_t largest = 0;
  for (auto const& r : records) {
    largest = std::max(largest, r.size);
  }
  report.groupCountSize = hasFixed ? fixedSize : largest;

  std::vector<TimingRecord const*> atSize;
  using SeriesKey = std::tuple<encoding::ModelKind, olap::QueryForm,
                               std::size_t>;
  std::map<SeriesKey, SizeTotalRow> totals;
  for (auto const& r : records) {
    if (r.size == report.groupCountSize && r.correct()) {
      atSize.push_back(&r);
    }
    auto& total = totals[{r.model, r.form, r.size}];
    total.model = encoding::toString(r.model);
    total.form = olap::toString(r.form);
    total.size = r.size;
    if (r.correct()) {
      total.totalMs += *r.reportedMs;
    } else {
      ++total.failures;
    }
  }

  std::stable_sort(atSize.begin(), atSize.end(), [](auto a, auto b) {
    return std::tie(a->model, a->form, a->groupCount) <
           std::tie(b->model, b->form, b->groupCount);
  });
  for (auto const* r : atSize) {
    report.byGroupCount.push_back({std::string(encoding::toString(r->model)),
                                   std::string(olap::toString(r->form)),
                                   r->requestId, r->groupCount,
                                   *r->reportedMs});
  }
  for (auto& [key, row] : totals) {
    report.bySize.push_back(std::move(row));
  }
  return report;
}

std::string tableACsv(Report const& report) {
  std::string out = "model,form,request_id,group_count,reported_ms\n";
  for (auto const& row : report.byGroupCount) {
    out += row.model + "," + row.form + "," + quoteIfNeeded(row.requestId) +
           "," + std::to_string(row.groupCount) + "," +
           formatMs(row.reportedMs) + "\n";
  }
  return out;
}

std::string tableBCsv(Report const& report) {
  std::string out = "model,form,size,total_ms,failures\n";
  for (auto const& row : report.bySize) {
    out += row.model + "," + row.form + "," + std::to_string(row.size) + "," +
           formatMs(row.totalMs) + "," + std::to_string(row.failures) + "\n";
  }
  return out;
}

std::string tableAText(Report const& report) {
  std::vector<std::vector<std::string>> rows;
  for (auto const& row : report.byGroupCount) {
    rows.push_back({row.model, row.form, row.requestId,
                    std::to_string(row.groupCount),
                    formatMs(row.reportedMs)});
  }
  return alignedTable({"model", "form", "request", "groups", "ms"}, rows,
                      {false, false, false, true, true});
}

std::string tableBText(Report const& report) {
  std::vector<std::vector<std::string>> rows;
  for (auto const& row : report.bySize) {
    rows.push_back({row.model, row.form, std::to_string(row.size),
                    formatMs(row.totalMs), std::to_string(row.failures)});
  }
  return alignedTable({"model", "form", "size", "total_ms", "failures"}, rows,
                      {false, false, true, true, true});
}

}  // namespace xocube::bench
