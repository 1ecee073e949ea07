#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace selchow {

using cx = std::complex<double>;

// Base class for every library error.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text (coefficient files, grid files, CLI forms).
struct parse_error : error {
  using error::error;
};

// A structural precondition on user-supplied data failed.
struct invariant_violation : error {
  using error::error;
};

// Evaluation requested at (or within guard distance of) a pole.  Carries the
// pole location and, when cheaply available, the residue of the simple pole.
struct pole_error : error {
  cx location;
  std::optional<cx> residue;
  explicit pole_error(cx where, std::optional<cx> res = std::nullopt)
      : error("evaluation at a pole"), location(where), residue(res) {}
};

// The requested tolerance could not be certified within the configured caps.
struct accuracy_error : error {
  using error::error;
};

struct non_positive_argument_error : error {
  using error::error;
};

struct outside_domain_error : error {
  using error::error;
};

// Double-series evaluation requested left of its abscissa of absolute
// convergence; use a continuation route instead.
struct outside_absolute_convergence_error : error {
  using error::error;
};

struct unsupported_pair_error : error {
  using error::error;
};

struct non_primitive_character_error : error {
  using error::error;
};

// Operation requires Delta(s) = Gamma(s) (one-dimensional gamma factor).
struct not_class_a_error : error {
  using error::error;
};

// Parity-sensitive operation fed pairs of mismatched (or wrong) parity.
struct parity_error : error {
  using error::error;
};

struct index_error : error {
  using error::error;
};

// A product/merge enumeration exceeded its configured entry cap.
struct sequence_overflow_error : error {
  using error::error;
};

// A Laurent constant was required but neither stored nor computable.
struct missing_laurent_error : error {
  using error::error;
};

// Evaluation parameter sits on the identity's excluded set.
struct excluded_point_error : error {
  using error::error;
};

// A Hardy-type value that must be real came out with a nontrivial
// imaginary part: the pair is not real self-dual.
struct reality_error : error {
  using error::error;
};

// A hypothesis of the theorem backing the operation fails for this input.
struct hypothesis_error : error {
  using error::error;
};

// Residue extraction detected growth incompatible with a simple pole.
struct not_simple_pole_error : error {
  using error::error;
};

}  // namespace selchow
