#ifndef LNLAPLACE_ERRORS_HPP
#define LNLAPLACE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lnlaplace {

// Base class for all numeric failures raised by this library. Input-contract
// violations (bad parameters, malformed meshes) throw std::invalid_argument
// instead.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Gamma evaluated at a nonpositive integer.
class PoleError : public Error {
  public:
    using Error::Error;
};

// A result (or an unavoidable intermediate) exceeds the representable range.
class OverflowError : public Error {
  public:
    using Error::Error;
};

// Polynomial/series degree above the supported limit.
class DegreeError : public Error {
  public:
    using Error::Error;
};

// A series failed its tail bound within the configured term budget.
class NonConvergence : public Error {
  public:
    using Error::Error;
};

// Adaptive quadrature could not reach the requested tolerance in budget.
class QuadratureFailure : public Error {
  public:
    using Error::Error;
};

// Filon mesh endpoints truncate a non-negligible part of the integrand.
class MeshTooNarrow : public Error {
  public:
    using Error::Error;
};

// Invalid contour abscissa for a Mellin-Barnes evaluation.
class ContourError : public Error {
  public:
    using Error::Error;
};

// Contour truncation cannot satisfy the decay requirement within budget.
class TruncationError : public Error {
  public:
    using Error::Error;
};

// A single series term overflows even after log-domain pairing.
class TermOverflow : public Error {
  public:
    TermOverflow(const std::string& what, int term_index)
        : Error(what), term_index_(term_index) {}
    int term_index() const noexcept { return term_index_; }

  private:
    int term_index_;
};

// Boundary mesh construction produced an unusable mesh.
class MeshError : public Error {
  public:
    using Error::Error;
};

// Boundary samples stop before the inversion integrand becomes negligible.
class TailError : public Error {
  public:
    using Error::Error;
};

// Logarithmic derivative requested where the transform modulus underflows.
class DivisionError : public Error {
  public:
    using Error::Error;
};

}  // namespace lnlaplace

#endif
