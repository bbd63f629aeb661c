#pragma once

#include <string>

#include "core/multivector.hpp"

namespace twistdeform {

/* Twist mini-language over a fixed algebra basis.  Clauses are separated
 * by commas or whitespace:
 *   - "lij=v" (dot form "li.j=v" for multi-digit indices) adds
 *     (v/2) e_i ^ e_j, the coefficient convention of
 *     t = (1/2) sum_ij lambda_ij e_i ^ e_j;
 *   - "A^B:c" adds c * A ^ B, where A and B are basis labels or integer
 *     combinations in parentheses such as "(2Z1-Z2)";
 *   - "0" adds nothing.
 * Values are rational or decimal literals.  Parse errors name the
 * offending clause. */
Multivector parse_twist(const AlgebraPtr& g, const std::string& spec);

}  // namespace twistdeform
