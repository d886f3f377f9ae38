#include "csv.hpp"

#include <array>

namespace evprop::csv {

bool Reader::next(std::vector<std::string>& fields) {
  std::string raw;
  while (std::getline(in_, raw)) {
    ++line_;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.find_first_not_of(" \t") == std::string::npos) continue;
    fields.clear();
    std::size_t start = 0;
    while (true) {
      const auto comma = raw.find(',', start);
      std::string field = raw.substr(start, comma - start);
      const auto b = field.find_first_not_of(" \t");
      const auto e = field.find_last_not_of(" \t");
      fields.push_back(b == std::string::npos ? std::string{} : field.substr(b, e - b + 1));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return true;
  }
  return false;
}

bool Reader::expect_header(const std::vector<std::string>& expected) {
  std::vector<std::string> fields;
  if (!next(fields)) return false;
  if (fields != expected) {
    std::string want;
    for (const auto& f : expected) want += (want.empty() ? "" : ",") + f;
    fail("expected header '" + want + "'");
  }
  return true;
}

void Reader::fail(const std::string& message) const {
  throw InputError(source_ + ":" + std::to_string(line_) + ": " + message);
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace evprop::csv
