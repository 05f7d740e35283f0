#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace squeezelab {

using cdouble = std::complex<double>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain where the requested quantity is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Malformed input file or configuration.
class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// A series did not meet its stopping rule within the term budget.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, cdouble partial_sum, double last_term_magnitude,
                   std::size_t terms)
      : Error(what), partial_sum_(partial_sum), last_term_(last_term_magnitude), terms_(terms) {}

  cdouble partial_sum() const noexcept { return partial_sum_; }
  double last_term_magnitude() const noexcept { return last_term_; }
  std::size_t terms() const noexcept { return terms_; }

 private:
  cdouble partial_sum_;
  double last_term_;
  std::size_t terms_;
};

/// Ray integration failure. `r_star` is the radius where the failure was
/// detected; `ray_index` is filled in when the ray belongs to a field.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double r_star, std::optional<std::size_t> ray_index = {})
      : Error(what), r_star_(r_star), ray_index_(ray_index) {}

  double r_star() const noexcept { return r_star_; }
  std::optional<std::size_t> ray_index() const noexcept { return ray_index_; }

 private:
  double r_star_;
  std::optional<std::size_t> ray_index_;
};

/// The Taylor recurrence hit a vanishing pivot.
class RecurrenceBreakdown : public Error {
 public:
  enum class Kind { inconsistent, underdetermined };

  RecurrenceBreakdown(const std::string& what, Kind kind, std::size_t index,
                      std::size_t free_dimension)
      : Error(what), kind_(kind), index_(index), free_dimension_(free_dimension) {}

  Kind kind() const noexcept { return kind_; }
  /// Taylor index whose coefficient could not be determined.
  std::size_t index() const noexcept { return index_; }
  /// Dimension of the solution freedom left at the breakdown.
  std::size_t free_dimension() const noexcept { return free_dimension_; }

 private:
  Kind kind_;
  std::size_t index_;
  std::size_t free_dimension_;
};

}  // namespace squeezelab
