#pragma once

#include <cstddef>
#include <functional>

namespace btt {

// Upper bound on worker threads used for the independent block
// exponentials and averaging runs. Defaults to 1 (serial).
void set_max_threads(unsigned count);
unsigned max_threads();

// Calls body(i) for i in [0, count). Iterations must be independent.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace btt
