#ifndef EVPROP_ERROR_HPP
#define EVPROP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace evprop {

/// Malformed or inconsistent input (bad CSV row, unknown link type, frame
/// mismatch, invalid configuration). The CLI maps it to exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be opened, read or written. The CLI maps it to exit code 2.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace evprop

#endif  // EVPROP_ERROR_HPP
