#pragma once

#include <stdexcept>
#include <string>

namespace isofield {

// File / serialization problems (CLI exit code 3).
struct format_error : std::runtime_error {
  explicit format_error(const std::string& what) : std::runtime_error(what) {}
};

// Violations of numerical contracts (CLI exit code 4).
struct numerical_contract_error : std::runtime_error {
  explicit numerical_contract_error(const std::string& what)
      : std::runtime_error(what) {}
};

// Requested band limit exceeds what the grid integrates exactly.
struct band_limit_error : numerical_contract_error {
  explicit band_limit_error(const std::string& what)
      : numerical_contract_error(what) {}
};

// Power spectrum matrix is not symmetric PSD, or violates support rules.
struct spectrum_error : numerical_contract_error {
  explicit spectrum_error(const std::string& what)
      : numerical_contract_error(what) {}
};

// Radial covariance is not PSD.
struct covariance_error : numerical_contract_error {
  explicit covariance_error(const std::string& what)
      : numerical_contract_error(what) {}
};

}  // namespace isofield
