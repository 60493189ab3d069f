#pragma once

#include <cstddef>
#include <functional>

namespace charwalk {

/// Worker count: `requested` when nonzero, else CHARWALK_THREADS, else the
/// hardware concurrency (at least 1).
unsigned resolve_threads(unsigned requested);

/// Runs body(chunk) for every chunk in [0, chunks) on up to `threads`
/// workers. Chunks are claimed dynamically, so callers must write results
/// into per-chunk slots and reduce them in chunk order afterwards. The first
/// exception thrown by a body is rethrown on the calling thread.
void parallel_for_chunks(std::size_t chunks, unsigned threads,
                         const std::function<void(std::size_t)>& body);

}  // namespace charwalk
