#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace pcpr {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Parameter or input rejected before any computation ran.
class validation_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An iterative solver failed to meet its contract.
class convergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class io_fault {
  not_found,
  malformed_header,
  dimension_overflow,
  truncated_payload,
  bad_value,
};

class io_error : public std::runtime_error {
 public:
  io_error(io_fault fault, const std::string& msg)
      : std::runtime_error(msg), fault_(fault) {}
  io_fault fault() const noexcept { return fault_; }

 private:
  io_fault fault_;
};

}  // namespace pcpr
