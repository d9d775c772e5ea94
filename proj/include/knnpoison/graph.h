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

#ifndef KNNPOISON_GRAPH_H_
#define KNNPOISON_GRAPH_H_

#include <istream>
#include <string>
#include <utility>
#include <vector>

namespace knnpoison {

// Simple undirected graph on vertices 0..n-1.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  // Throws InputError on out-of-range endpoints or self-loops.
  void Validate() const;
};

// Edge-list text: one "i j" pair (1-based) per line. Blank lines and lines
// starting with '#' are skipped; an optional "n <count>" line declares
// isolated trailing vertices.
Graph ReadEdgeList(std::istream& in);
Graph ReadEdgeList(const std::string& path);

}  // namespace knnpoison

#endif  // KNNPOISON_GRAPH_H_
