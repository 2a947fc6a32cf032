#pragma once

#include <string>

#include "ems/multiseg.hpp"

namespace ems {

// Plain-text symbol block: a header line, one "rho <lit>" line per block,
// a column-label line, then one glyph line per extended segment in order.
// ASCII glyphs < > + - stand for the paper-style cap and sign marks:
// ([A,B],l,eta) renders as l leading '<' at columns B..B+l-1, alternating
// '+'/'-' starting with '+' iff eta = +1 at columns B+l..A-l, and l
// trailing '>' at columns A-l+1..A.
std::string render_symbol(const ExtendedMultiSegment& e);

// Inverse of render_symbol up to weak equivalence.  Rejects non-alternating
// interior signs, mismatched '<'/'>' counts and ragged rows.
ExtendedMultiSegment parse_symbol(const std::string& text);

}  // namespace ems
