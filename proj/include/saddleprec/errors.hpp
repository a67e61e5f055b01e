#pragma once

#include <stdexcept>
#include <string>

namespace saddleprec {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// dense-core
class NotSymmetric : public Error {
public:
  explicit NotSymmetric(const std::string& msg) : Error(msg) {}
};
class NotPositiveDefinite : public Error {
public:
  explicit NotPositiveDefinite(const std::string& msg) : Error(msg) {}
};
class NoConvergence : public Error {
public:
  explicit NoConvergence(const std::string& msg) : Error(msg) {}
};
class SingularMatrix : public Error {
public:
  explicit SingularMatrix(const std::string& msg) : Error(msg) {}
};

// problem-gen
class DegenerateDraw : public Error {
public:
  explicit DegenerateDraw(const std::string& msg) : Error(msg) {}
};
class NotSplittable : public Error {
public:
  explicit NotSplittable(const std::string& msg) : Error(msg) {}
};

// preconditioners
class AugmentNotSPD : public Error {
public:
  explicit AugmentNotSPD(const std::string& msg) : Error(msg) {}
};
class SchurSingular : public Error {
public:
  explicit SchurSingular(const std::string& msg) : Error(msg) {}
};
class BorderedSingular : public Error {
public:
  explicit BorderedSingular(const std::string& msg) : Error(msg) {}
};
class ReducedHessianNotSPD : public Error {
public:
  explicit ReducedHessianNotSPD(const std::string& msg) : Error(msg) {}
};
class MiddleSchurSingular : public Error {
public:
  explicit MiddleSchurSingular(const std::string& msg) : Error(msg) {}
};
class LeadingBlockNotSPD : public Error {
public:
  explicit LeadingBlockNotSPD(const std::string& msg) : Error(msg) {}
};

// krylov
class PreconditionerNotSPD : public Error {
public:
  explicit PreconditionerNotSPD(const std::string& msg) : Error(msg) {}
};
class Stagnation : public Error {
public:
  explicit Stagnation(const std::string& msg) : Error(msg) {}
};

// I/O
class IoError : public Error {
public:
  explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace saddleprec
