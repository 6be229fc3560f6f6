/// @file parallel.hpp
/// @brief Thread-count policy and a deterministic parallel map.
///
/// CBF_THREADS selects the worker count: unset or 0 means automatic
/// (hardware concurrency clamped to [1,16]); any other value is clamped to
/// [1,64].  parallel_for is only used for pure map loops with disjoint
/// writes, so results are bit-identical for every thread count; reductions
/// are always sequential (see norms.hpp).

#pragma once

#include <cstdint>
#include <functional>

namespace cbf::fields {

/// Resolved worker count for this process (reads CBF_THREADS once).
int thread_count();

/// Run fn(i) for i in [begin, end).  Splits into contiguous chunks when
/// more than one worker is configured and the range is large enough to be
/// worth the thread launch; otherwise runs inline.
void parallel_for(std::int64_t begin, std::int64_t end,
                  const std::function<void(std::int64_t)>& fn);

/// Chunked variant: fn(chunk_begin, chunk_end) on contiguous subranges.
void parallel_for_chunks(std::int64_t begin, std::int64_t end,
                         const std::function<void(std::int64_t, std::int64_t)>& fn);

}  // namespace cbf::fields
