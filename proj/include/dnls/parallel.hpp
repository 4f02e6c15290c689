#pragma once

#include <functional>

namespace dnls {

// Worker cap for the enumeration-heavy loops. 0 means hardware concurrency.
void set_threads(int n);
int threads();

// Runs body(i) for i in [0, count), indices handed out one at a time. Callers
// write into per-index slots and reduce in index order, so results do not
// depend on the thread count.
void parallel_for(int count, const std::function<void(int)>& body);

} // namespace dnls
