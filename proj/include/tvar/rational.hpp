#pragma once

#include <gmpxx.h>

#include <string>

namespace tvar {

/**
 * Exact rational scalar. GMP's mpq_class already guarantees the canonical
 * form we need (reduced fraction, positive denominator), so the alias is the
 * whole type; the helpers below add the parsing/formatting conventions used
 * across the library ("p/q" with q > 1, otherwise just "p").
 */
using Rat = mpq_class;

/** Parse "p" or "p/q". Throws std::invalid_argument on malformed input or q = 0. */
Rat rat_parse(const std::string& text);

/** Canonical textual form, inverse of rat_parse. */
std::string rat_str(const Rat& r);

bool rat_is_integer(const Rat& r);

/** Least integer >= r, as a machine integer. Throws std::overflow_error if it does not fit. */
long rat_ceil(const Rat& r);

/** Greatest integer <= r. */
long rat_floor(const Rat& r);

/** Exact conversion; requires rat_is_integer(r). */
long rat_to_long(const Rat& r);

/** Least positive integer d with d*r integral (denominator of the reduced form). */
long rat_denominator(const Rat& r);

}  // namespace tvar
