#pragma once

#include <string_view>

#include "mmlogic/formula.hpp"
#include "mmlogic/theory.hpp"

namespace mmlogic {

/// Parses `<i>`/`[i]` modalities, `~ & | -> <->` (tightest first, `->`
/// right-associative), `true`, `false`, identifiers and parentheses.
/// `#` starts a comment. Throws ParseError.
Formula parse_formula(std::string_view text);

/// Parses `sig <n> <m>;` followed by clauses `[label:] A1, ..., Ak -> H [;]`
/// with atoms `R<i>(v,w)`. Rejects negation, equality, multiple heads and
/// head variables missing from the body. Throws ParseError.
FrameTheory parse_theory(std::string_view text);

}  // namespace mmlogic
