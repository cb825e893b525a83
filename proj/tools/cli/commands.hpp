#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace editmbr::cli {

enum ExitStatus : int {
  kSuccess = 0,
  kUsageError = 1,
  kDataError = 2,
};

// Runs the edit-mbr command line. `args` excludes the program name.
//
//   extract SOURCE HYP            hypothesis edits as M2
//   combine SOURCE HYP...         combine system outputs
//   score   SOURCE HYP REF.m2     edit-level P/R/F-beta
//   apply   SOURCE EDITS.m2       apply annotator-0 edits
//   replay  MANIFEST              re-run a recorded invocation and check digests
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace editmbr::cli
