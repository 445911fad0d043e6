#include "osg/density_io.hpp"

#include <charconv>
#include <cstdio>
#include <string>
#include <vector>

#include "osg/errors.hpp"

namespace osg {

void write_density_csv(std::ostream& out, const Matrix4c& m) {
  char buf[96];
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", m(r, c).real(), m(r, c).imag());
      out << buf;
    }
  }
}

Matrix4c read_density_matrix_csv(std::istream& in) {
  std::vector<double> values;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      auto end = line.find(',', pos);
      if (end == std::string::npos) end = line.size();
      std::string token = line.substr(pos, end - pos);
      const auto b = token.find_first_not_of(" \t\r");
      const auto e = token.find_last_not_of(" \t\r");
      if (b == std::string::npos) {
        throw ValidationError("density csv line " + std::to_string(lineno) + ": empty field");
      }
      token = token.substr(b, e - b + 1);
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
      if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ValidationError("density csv line " + std::to_string(lineno) + ": bad number '" + token + "'");
      }
      values.push_back(v);
      pos = end + 1;
    }
  }
  if (values.size() != 32) {
    throw ValidationError("density csv: expected 32 numbers (16 re,im pairs), got " +
                          std::to_string(values.size()));
  }
  Matrix4c m;
  for (std::size_t i = 0; i < 16; ++i) m(i / 4, i % 4) = {values[2 * i], values[2 * i + 1]};
  return m;
}

TwoQubitDensity read_density_csv(std::istream& in) { return TwoQubitDensity(read_density_matrix_csv(in)); }

}  // namespace osg
