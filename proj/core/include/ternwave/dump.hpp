#pragma once

// Binary coefficient dumps.
//
//   char[4]  magic        "TWV1" (ternary) or "CDF1"
//   u32      kind         0 = site-centered, 1 = edge-centered, 2 = CDF-9/7
//   u32      depth        circuit depth (0 for CDF-9/7)
//   u32      level count
//   u32      dims         1 or 2
//   u64[]    per level: input length (1-D) or width, height (2-D)
//   u32      channels     2-D only
//   u64      width, height of the full plane (2-D only)
//   f64[]    coefficients
//
// All integers and floats little-endian. 1-D coefficients are the final
// scaling band followed by each level's wavelet bands, coarsest level first
// (wav+ then wav- for ternary, detail for CDF). 2-D dumps store each
// channel's coefficient plane row-major in the pyramid layout.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ternwave/cdf97.hpp"
#include "ternwave/ternary.hpp"
#include "ternwave/transform2d.hpp"

namespace ternwave {

struct CoefficientDump {
  std::string magic;
  std::uint32_t kind = 0;
  std::uint32_t depth = 0;
  std::uint32_t dims = 1;
  std::vector<std::uint64_t> level_sizes;  // dims entries per level
  std::uint32_t channels = 1;
  std::uint64_t width = 0, height = 0;
  std::vector<double> values;

  std::size_t level_count() const noexcept { return dims ? level_sizes.size() / dims : 0; }
  friend bool operator==(const CoefficientDump&, const CoefficientDump&) = default;
};

CoefficientDump make_dump(const std::vector<Subbands1D>& pyramid, const TernaryCircuitSpec& spec);
CoefficientDump make_dump(const std::vector<Bands97>& pyramid);
/// One pyramid per channel; all must share kind and shape.
CoefficientDump make_dump(const std::vector<Pyramid2D>& channels);

void write_dump(std::ostream& out, const CoefficientDump& dump);
void write_dump(const std::string& path, const CoefficientDump& dump);
/// Throws DecodeError on a malformed stream.
CoefficientDump read_dump(std::istream& in);

/// Rebuilds the subbands of a 1-D ternary dump (plans follow from the first
/// level length). Throws DecodeError when the dump is not a 1-D ternary dump.
std::vector<Subbands1D> ternary_pyramid_from_dump(const CoefficientDump& dump);

}  // namespace ternwave
