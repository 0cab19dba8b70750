#pragma once

#include <stdexcept>
#include <string>

namespace spincorr {

// A state vector whose norm is too small to normalize.
class NullStateError : public std::domain_error {
 public:
  explicit NullStateError(const std::string& what) : std::domain_error(what) {}
};

// A matrix fed into a trace-form routine was not Hermitian (or produced an
// imaginary residue above tolerance where a real value is required).
class NonHermitianInput : public std::invalid_argument {
 public:
  explicit NonHermitianInput(const std::string& what) : std::invalid_argument(what) {}
};

class NotUnitary : public std::invalid_argument {
 public:
  explicit NotUnitary(const std::string& what) : std::invalid_argument(what) {}
};

// Kraus set fails completeness or an operator is not normal.
class InvalidKrausSet : public std::invalid_argument {
 public:
  explicit InvalidKrausSet(const std::string& what) : std::invalid_argument(what) {}
};

// Parameter outside its documented domain (e.g. scattering angle at a pole).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

class EmptyTable : public std::invalid_argument {
 public:
  explicit EmptyTable(const std::string& what) : std::invalid_argument(what) {}
};

// Rejection-style random generation exhausted its retry budget.
class GenerationFailure : public std::runtime_error {
 public:
  explicit GenerationFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spincorr
