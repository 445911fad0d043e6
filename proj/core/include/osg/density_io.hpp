#pragma once

#include <istream>
#include <ostream>

#include "osg/entanglement.hpp"

namespace osg {

/// Writes the 16 entries row-major, one `re,im` pair per line, with enough
/// digits to round-trip exactly. Lines starting with `#` are comments.
void write_density_csv(std::ostream& out, const Matrix4c& m);

/// Reads 16 `re,im` pairs row-major. Pairs may be spread over lines in any
/// layout (commas and newlines both separate values); `#` lines are skipped.
/// Throws ValidationError on malformed input or a count other than 32 numbers.
Matrix4c read_density_matrix_csv(std::istream& in);

/// read_density_matrix_csv followed by TwoQubitDensity validation.
TwoQubitDensity read_density_csv(std::istream& in);

}  // namespace osg
