#pragma once

namespace lfk {

// Global switch for the OpenMP paths. Results are bit-identical either way:
// parallel loops fill indexed slots and reductions run in ascending order.
void set_parallel(bool enabled);
bool parallel_enabled();

}  // namespace lfk
