#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hyfr {

struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DegenerateGeometry : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StabilityConstraintViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UndefinedTrace : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularLocalProblem : std::runtime_error {
  SingularLocalProblem(const std::string& what, int elem) : std::runtime_error(what), element(elem) {}
  int element = -1;
};

struct SingularMatrix : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Krylov non-convergence; carries the residual history for diagnostics.
struct SolverFailure : std::runtime_error {
  SolverFailure(const std::string& what, std::vector<double> hist)
      : std::runtime_error(what), residual_history(std::move(hist)) {}
  std::vector<double> residual_history;
};

struct UnsupportedScheme : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PostProcessingFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InternalConsistencyError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace hyfr
