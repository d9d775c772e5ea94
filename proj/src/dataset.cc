// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "knnpoison/dataset.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "knnpoison/errors.h"

namespace knnpoison {

ClassId LabelMap::Intern(const std::string& token) {
  auto it = ids_.find(token);
  if (it != ids_.end()) return it->second;
  const ClassId id = static_cast<ClassId>(names_.size());
  ids_.emplace(token, id);
  names_.push_back(token);
  return id;
}

ClassId LabelMap::Find(const std::string& token) const {
  auto it = ids_.find(token);
  if (it == ids_.end()) throw InputError("unknown label '" + token + "'");
  return it->second;
}

const std::string& LabelMap::Name(ClassId id) const {
  if (id < 0 || static_cast<size_t>(id) >= names_.size()) {
    throw InputError("unknown class id " + std::to_string(id));
  }
  return names_[id];
}

void Dataset::Add(LabeledPoint point) {
  if (point.multiplicity < 1) throw InputError("multiplicity must be >= 1");
  if (!dim_fixed_) {
    dim_ = point.features.size();
    dim_fixed_ = true;
  }
  if (point.features.size() != dim_) {
    throw InputError("point dimension " + std::to_string(point.features.size()) +
                     " does not match dataset dimension " + std::to_string(dim_));
  }
  points_.push_back(std::move(point));
}

void Dataset::Add(Vector features, ClassId label, int multiplicity) {
  Add(LabeledPoint{std::move(features), label, multiplicity});
}

void Dataset::Append(const Dataset& other) {
  for (const LabeledPoint& p : other) Add(p);
}

long Dataset::total_weight() const {
  long w = 0;
  for (const LabeledPoint& p : points_) w += p.multiplicity;
  return w;
}

namespace {

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double ParseReal(const std::string& text, size_t row) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw InputError("row " + std::to_string(row) + ": bad real '" + text + "'");
  }
  return v;
}

}  // namespace

Dataset ReadDatasetCsv(std::istream& in, LabelMap& labels) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("empty dataset CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> header = SplitCsvLine(line);
  size_t dim = 0;
  while (dim < header.size() && header[dim] == "f" + std::to_string(dim)) ++dim;
  if (dim == header.size() || header[dim] != "label") {
    throw InputError("CSV header must be f0..f{d-1},label[,mult]");
  }
  const bool has_mult = header.size() == dim + 2;
  if (header.size() > dim + 2 || (has_mult && header[dim + 1] != "mult")) {
    throw InputError("unexpected CSV columns after 'label'");
  }
  Dataset data(dim);
  size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> cells = SplitCsvLine(line);
    if (cells.size() != header.size()) {
      throw InputError("row " + std::to_string(row) + ": expected " +
                       std::to_string(header.size()) + " columns");
    }
    LabeledPoint p;
    p.features.reserve(dim);
    for (size_t i = 0; i < dim; ++i) p.features.push_back(ParseReal(cells[i], row));
    if (cells[dim].empty()) {
      throw InputError("row " + std::to_string(row) + ": empty label");
    }
    p.label = labels.Intern(cells[dim]);
    if (has_mult) {
      int m = 0;
      const std::string& t = cells[dim + 1];
      auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), m);
      if (ec != std::errc() || ptr != t.data() + t.size() || m < 1) {
        throw InputError("row " + std::to_string(row) + ": bad mult '" + t + "'");
      }
      p.multiplicity = m;
    }
    data.Add(std::move(p));
  }
  return data;
}

Dataset ReadDatasetCsv(const std::string& path, LabelMap& labels) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return ReadDatasetCsv(in, labels);
}

std::string FormatReal(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

void WriteDatasetCsv(std::ostream& out, const Dataset& data,
                     const LabelMap& labels, bool with_mult) {
  for (size_t i = 0; i < data.dim(); ++i) out << 'f' << i << ',';
  out << "label";
  if (with_mult) out << ",mult";
  out << '\n';
  for (const LabeledPoint& p : data) {
    for (double v : p.features) out << FormatReal(v) << ',';
    out << labels.Name(p.label);
    if (with_mult) out << ',' << p.multiplicity;
    out << '\n';
  }
}

void WriteDatasetCsv(const std::string& path, const Dataset& data,
                     const LabelMap& labels, bool with_mult) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  WriteDatasetCsv(out, data, labels, with_mult);
}

}  // namespace knnpoison
