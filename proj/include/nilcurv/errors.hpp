#pragma once

#include <stdexcept>
#include <string>

namespace nilcurv {

/// Input outside an operation's domain (mismatched totals, zero matrix, ...).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A constant or construction that is undefined because every Jordan chain
/// has length one (C of (1^n), D of (n), type-R matrices that vanish).
class degenerate_error : public domain_error {
 public:
  using domain_error::domain_error;
};

class not_nilpotent_error : public domain_error {
 public:
  using domain_error::domain_error;
};

/// Malformed textual input (partition strings, CSV rows, matrix files).
class parse_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace nilcurv
