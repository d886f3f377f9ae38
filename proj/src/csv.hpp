#ifndef EVPROP_SRC_CSV_HPP
#define EVPROP_SRC_CSV_HPP

#include <charconv>
#include <fstream>
#include <istream>
#include <string>
#include <vector>

#include "evprop/error.hpp"

namespace evprop::csv {

/// Line-oriented reader for the comma-separated formats used here (no
/// quoting). Tracks line numbers for error messages.
class Reader {
 public:
  Reader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  /// Next non-blank line split on commas; false at end of input.
  bool next(std::vector<std::string>& fields);
  std::size_t line() const { return line_; }

  /// Reads the header row; returns false for empty input. Throws when the
  /// header differs from `expected`.
  bool expect_header(const std::vector<std::string>& expected);

  [[noreturn]] void fail(const std::string& message) const;

  template <typename T>
  T parse_number(const std::string& field, const char* what) const {
    T value{};
    const char* first = field.data();
    const char* last = first + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || field.empty()) {
      fail(std::string("invalid ") + what + " '" + field + "'");
    }
    return value;
  }

 private:
  std::istream& in_;
  std::string source_;
  std::size_t line_ = 0;
};

/// Shortest decimal representation that reads back to the same double.
std::string format_double(double v);

std::ifstream open_input(const std::string& path);
std::ofstream open_output(const std::string& path);

}  // namespace evprop::csv

#endif  // EVPROP_SRC_CSV_HPP
