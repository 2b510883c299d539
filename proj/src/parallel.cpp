#include "lfk/parallel.hpp"

#include <atomic>

namespace lfk {

namespace {
std::atomic<bool> g_parallel{true};
}

void set_parallel(bool enabled) { g_parallel.store(enabled); }
bool parallel_enabled() { return g_parallel.load(); }

}  // namespace lfk
