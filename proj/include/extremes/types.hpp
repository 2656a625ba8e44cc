#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace extremes {

/// Which tail a GEV model describes. Maxima use the usual distribution
/// function; Minima use the mirrored convention in which a larger location
/// means warmer minima.
enum class Orientation { Maxima, Minima };

constexpr std::string_view to_string(Orientation o) noexcept {
  return o == Orientation::Maxima ? "maxima" : "minima";
}

/// One extreme per block of `block_length` years.
struct BlockExtremes {
  Orientation orientation = Orientation::Maxima;
  int block_length = 1;
  std::vector<double> values;

  [[nodiscard]] std::size_t n_blocks() const noexcept { return values.size(); }
};

}  // namespace extremes
