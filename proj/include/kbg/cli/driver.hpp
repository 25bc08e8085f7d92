#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace kbg::cli {

using EnvLookup = std::function<const char*(const char*)>;

// args[0] is the program name. Returns the process exit status:
// 0 success, 1 failed check or computation error, 2 usage error.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const EnvLookup& env = {});

}  // namespace kbg::cli
