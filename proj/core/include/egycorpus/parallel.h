// Copyright 2026 The egycorpus Authors.
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

#ifndef EGYCORPUS_PARALLEL_H_
#define EGYCORPUS_PARALLEL_H_

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

namespace egycorpus {

// Bounded reader -> worker pool -> re-ordering sink.
//
// `source` is called from a single reader thread until it returns nullopt.
// `transform` runs on `workers` threads. `sink` runs on the calling thread
// and receives results strictly in source order. At most `capacity`
// batches are queued for the workers and at most `capacity` finished
// batches wait for the sink, so memory stays bounded however slow the sink
// is. The first exception from any stage stops the pipeline and is
// rethrown here.
template <class Batch, class Result>
void RunOrderedPipeline(int workers, size_t capacity,
                        const std::function<std::optional<Batch>()>& source,
                        const std::function<Result(Batch&)>& transform,
                        const std::function<void(Result&)>& sink) {
  if (workers <= 1) {
    while (std::optional<Batch> batch = source()) {
      Result r = transform(*batch);
      sink(r);
    }
    return;
  }
  if (capacity == 0) capacity = 1;

  std::mutex mu;
  std::condition_variable input_cv;   // input queue changed
  std::condition_variable output_cv;  // output map changed / sink advanced
  std::deque<std::pair<uint64_t, Batch>> input;
  std::map<uint64_t, Result> output;
  bool input_done = false;
  bool failed = false;
  std::exception_ptr error;
  uint64_t next_to_sink = 0;
  uint64_t produced = 0;

  auto fail = [&](std::exception_ptr e) {
    std::lock_guard<std::mutex> lock(mu);
    if (!failed) {
      failed = true;
      error = e;
    }
    input_cv.notify_all();
    output_cv.notify_all();
  };

  std::thread reader([&] {
    try {
      for (uint64_t seq = 0;; ++seq) {
        std::optional<Batch> batch = source();
        std::unique_lock<std::mutex> lock(mu);
        if (!batch) {
          input_done = true;
          produced = seq;
          input_cv.notify_all();
          output_cv.notify_all();
          return;
        }
        input_cv.wait(lock, [&] { return failed || input.size() < capacity; });
        if (failed) return;
        input.emplace_back(seq, std::move(*batch));
        input_cv.notify_all();
      }
    } catch (...) {
      fail(std::current_exception());
    }
  });

  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        for (;;) {
          std::pair<uint64_t, Batch> item;
          {
            std::unique_lock<std::mutex> lock(mu);
            input_cv.wait(lock, [&] { return failed || !input.empty() || input_done; });
            if (failed || input.empty()) return;
            item = std::move(input.front());
            input.pop_front();
            input_cv.notify_all();
          }
          Result r = transform(item.second);
          std::unique_lock<std::mutex> lock(mu);
          // Keep the reorder window bounded: wait until the sink is close.
          output_cv.wait(lock, [&] { return failed || item.first < next_to_sink + capacity; });
          if (failed) return;
          output.emplace(item.first, std::move(r));
          output_cv.notify_all();
        }
      } catch (...) {
        fail(std::current_exception());
      }
    });
  }

  try {
    for (;;) {
      Result r;
      {
        std::unique_lock<std::mutex> lock(mu);
        output_cv.wait(lock, [&] {
          return failed || output.count(next_to_sink) > 0 ||
                 (input_done && next_to_sink >= produced);
        });
        if (failed) break;
        auto it = output.find(next_to_sink);
        if (it == output.end()) break;  // all batches sunk
        r = std::move(it->second);
        output.erase(it);
      }
      sink(r);
      std::lock_guard<std::mutex> lock(mu);
      ++next_to_sink;
      output_cv.notify_all();
    }
  } catch (...) {
    fail(std::current_exception());
  }

  reader.join();
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace egycorpus

#endif  // EGYCORPUS_PARALLEL_H_
