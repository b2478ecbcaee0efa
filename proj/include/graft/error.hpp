#pragma once

#include <stdexcept>
#include <string>

namespace graft {

// Base for every error raised by the library. The CLI maps these to exit
// code 2 (data error).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace graft
