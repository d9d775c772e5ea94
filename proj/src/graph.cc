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

#include "knnpoison/graph.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "knnpoison/errors.h"

namespace knnpoison {

void Graph::Validate() const {
  if (n < 0) throw InputError("negative vertex count");
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw InputError("edge endpoint out of range");
    }
    if (u == v) throw InputError("self-loops are not allowed");
    if (!seen.insert(std::minmax(u, v)).second) {
      throw InputError("duplicate edge");
    }
  }
}

Graph ReadEdgeList(std::istream& in) {
  Graph g;
  std::string line;
  int declared = -1;
  size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first) || first[0] == '#') continue;
    if (first == "n") {
      if (!(fields >> declared) || declared < 0) {
        throw InputError("line " + std::to_string(row) + ": bad vertex count");
      }
      continue;
    }
    int u = 0, v = 0;
    std::istringstream pair(line);
    std::string extra;
    if (!(pair >> u >> v) || (pair >> extra) || u < 1 || v < 1) {
      throw InputError("line " + std::to_string(row) +
                       ": expected two 1-based vertex ids");
    }
    g.edges.emplace_back(u - 1, v - 1);
    g.n = std::max({g.n, u, v});
  }
  if (declared >= 0) {
    if (declared < g.n) {
      throw InputError("declared vertex count is below the largest vertex id");
    }
    g.n = declared;
  }
  g.Validate();
  return g;
}

Graph ReadEdgeList(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return ReadEdgeList(in);
}

}  // namespace knnpoison
