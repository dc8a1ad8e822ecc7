#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ibmetric/core.hpp"

namespace ibmetric {

/// Labelled curves on one shared grid. When produced by a simulation, the
/// first `n_base` curves are the base cohort.
struct Dataset {
  std::vector<std::string> labels;
  std::vector<SampledFunction> curves;
  std::size_t n_base = 0;

  std::size_t size() const noexcept { return curves.size(); }
  std::optional<std::size_t> index_of(const std::string& label) const;
  bool operator==(const Dataset&) const = default;
};

}  // namespace ibmetric
