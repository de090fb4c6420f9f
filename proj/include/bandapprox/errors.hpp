#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bandapprox {

// Raised when an iterative procedure stops short of its tolerance. Carries the
// last residual so callers can report how far off the iterate was.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class NoSolutionFound : public std::runtime_error {
 public:
  NoSolutionFound(const std::string& what,
                  std::vector<std::pair<std::string, double>> attempts)
      : std::runtime_error(what), attempts_(std::move(attempts)) {}
  const std::vector<std::pair<std::string, double>>& attempts() const {
    return attempts_;
  }

 private:
  std::vector<std::pair<std::string, double>> attempts_;
};

}  // namespace bandapprox
