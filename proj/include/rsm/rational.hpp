#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace rsm {

using Integer = mpz_class;
using Rational = mpq_class;

// Malformed user input: bad files, bad dimensions, unknown names.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Zero raised to a negative power somewhere in an evaluation.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An operation needs metadata (ambient rank, group provenance) the rsm lacks.
class MissingMetadataError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Builds num/den in lowest terms. Throws InputError on a zero denominator.
Rational make_rational(const Integer& num, const Integer& den);
Rational make_rational(long num, long den = 1);

/// Parses "7", "-3/4", " 12/8 " (reduced on the way in).
Rational parse_rational(std::string_view text);

/// base^exp for any integer exp; PoleError when base == 0 and exp < 0.
Rational pow_int(const Rational& base, long exp);

std::string to_string(const Rational& value);

inline bool is_integer(const Rational& value) { return value.get_den() == 1; }

}  // namespace rsm
