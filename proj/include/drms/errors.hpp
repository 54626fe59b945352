#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace drms {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Binary operation on scalars of different algebras.
class KindMismatch : public Error {
 public:
  using Error::Error;
};

/// Paracomplex operand lies on the null cone re = +-im.
class ZeroDivisor : public Error {
 public:
  using Error::Error;
};

class ZeroOperand : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of an elementary function.
class DomainError : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Imaginary unit that does not belong to the configured algebra.
class KindError : public Error {
 public:
  KindError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Evaluation failure; wraps the algebra error and names the failing node.
class EvalError : public Error {
 public:
  EvalError(const std::string& node, const std::string& cause)
      : Error("cannot evaluate '" + node + "': " + cause), node_(node) {}
  const std::string& node() const { return node_; }

 private:
  std::string node_;
};

/// Marching produced a non-finite state.
class StepFailure : public Error {
 public:
  using Error::Error;
};

/// Synthesis requested on data that failed validation.
class ValidationRefused : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration or input file.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace drms
