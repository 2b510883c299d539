#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lfk::cli {

// Runs one CLI invocation. Returns 0 when all requested verdicts pass,
// 2 on a verdict failure, 1 on usage or parameter errors. The serialized
// RunReport goes to `out` (or the file given by --out).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lfk::cli
