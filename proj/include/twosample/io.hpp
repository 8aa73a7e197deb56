#ifndef TWOSAMPLE_IO_HPP
#define TWOSAMPLE_IO_HPP

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace twosample {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {
inline std::string trim(const std::string& s) {
  std::size_t lo = 0, hi = s.size();
  while (lo < hi && std::isspace(static_cast<unsigned char>(s[lo]))) ++lo;
  while (hi > lo && std::isspace(static_cast<unsigned char>(s[hi - 1]))) --hi;
  return s.substr(lo, hi - lo);
}
}  // namespace detail

// One numeric value per line; blank lines and `#` comments are skipped.
// With column > 0, lines are split on commas and the 1-based column is read.
inline std::vector<double> read_values(const std::string& path,
                                       unsigned column = 0) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  std::vector<double> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string token = detail::trim(line);
    if (token.empty() || token[0] == '#') continue;
    if (column > 0) {
      std::stringstream ss(token);
      std::string field;
      unsigned c = 0;
      while (std::getline(ss, field, ',') && ++c < column) {}
      if (c != column)
        throw ParseError(path + ":" + std::to_string(line_no) +
                         ": fewer than " + std::to_string(column) + " columns");
      token = detail::trim(field);
    }
    try {
      std::size_t used = 0;
      const double v = std::stod(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ParseError(path + ":" + std::to_string(line_no) +
                       ": not a number: '" + token + "'");
    }
  }
  return out;
}

}  // namespace twosample

#endif  // TWOSAMPLE_IO_HPP
