// Copyright (c) 2026 The semikern Authors. All Rights Reserved.
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

#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <utility>
#include <vector>

#include "semikern/error.hpp"

namespace semikern::detail {

// Contiguous block ranges for `count` rows over `workers` threads. The
// partition depends only on (count, workers), never on scheduling.
inline std::vector<std::pair<std::uint32_t, std::uint32_t>> row_blocks(
    std::uint32_t count, int workers) {
  if (workers < 1) throw InvalidArgument("workers must be >= 1");
  const std::uint64_t nw =
      std::min<std::uint64_t>(static_cast<std::uint64_t>(workers),
                              count > 0 ? count : 1);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> blocks;
  blocks.reserve(nw);
  for (std::uint64_t w = 0; w < nw; ++w) {
    const auto begin = static_cast<std::uint32_t>(count * w / nw);
    const auto end = static_cast<std::uint32_t>(count * (w + 1) / nw);
    blocks.emplace_back(begin, end);
  }
  return blocks;
}

// Runs fn(block_index, row_begin, row_end) over the partition. Each row
// belongs to exactly one block, so fn instances write disjoint output.
// Exceptions from workers are rethrown in the calling thread.
template <typename Fn>
void parallel_row_blocks(std::uint32_t count, int workers, Fn&& fn) {
  const auto blocks = row_blocks(count, workers);
  if (blocks.size() <= 1) {
    fn(std::size_t{0}, blocks[0].first, blocks[0].second);
    return;
  }
  std::vector<std::exception_ptr> errors(blocks.size());
  std::vector<std::thread> pool;
  pool.reserve(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    pool.emplace_back([&, b] {
      try {
        fn(b, blocks[b].first, blocks[b].second);
      } catch (...) {
        errors[b] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace semikern::detail
