#pragma once

// Wide CSV datasets and labelled distance matrices. See FORMATS.md.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "ibmetric/dataset.hpp"
#include "ibmetric/integrated_ball.hpp"

namespace ibmetric::cli {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitParse = 3;
inline constexpr int kExitGrid = 4;
inline constexpr int kExitLabel = 5;

/// A failure that maps onto a process exit code.
class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& message) : std::runtime_error(message), code_(code) {}
  int code() const noexcept { return code_; }

 private:
  int code_;
};

/// printf "%.17g", which round-trips every finite double.
std::string format_double(double x);

void write_dataset_csv(std::ostream& out, const Dataset& data);

/// Throws CliError(kExitParse) on malformed text and CliError(kExitGrid) when
/// the time column is not a valid grid or a curve misses a grid point. The
/// grid gets uniform weights.
Dataset read_dataset_csv(std::istream& in);

void write_matrix_csv(std::ostream& out, const std::vector<std::string>& labels,
                      const DistanceMatrix& matrix);

/// Parses a matrix written by write_matrix_csv.
DistanceMatrix read_matrix_csv(std::istream& in, std::vector<std::string>* labels = nullptr);

}  // namespace ibmetric::cli
