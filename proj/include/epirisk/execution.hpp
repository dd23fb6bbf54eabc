// Copyright 2026 The epirisk Authors
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

#ifndef EPIRISK_EXECUTION_HPP_
#define EPIRISK_EXECUTION_HPP_

#include <cstddef>
#include <cstdint>
#include <exception>

namespace epirisk {

// Every data-parallel kernel has an OpenMP path and a plain serial loop.
// Both produce identical results; the serial path is the reference the
// tests compare against.
enum class Execution { kParallel, kSerial };

// Calls fn(i) for i in [0, n). Each index must write only its own output
// slot. The first exception thrown by any index is rethrown after the loop.
template <class Fn>
void for_each_index(std::size_t n, Execution exec, Fn&& fn) {
  if (exec == Execution::kSerial) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr error;
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(epirisk_for_each_index)
      {
        if (!error) error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace epirisk

#endif  // EPIRISK_EXECUTION_HPP_
