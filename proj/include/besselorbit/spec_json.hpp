#ifndef BESSELORBIT_SPEC_JSON_HPP_
#define BESSELORBIT_SPEC_JSON_HPP_

#include <stdexcept>
#include <string>

#include "besselorbit/measure.hpp"

namespace besselorbit {

class SpecParseError : public std::runtime_error {
 public:
  explicit SpecParseError(const std::string& what) : std::runtime_error(what) {}
};

// Measure-spec JSON schema (see docs/measure-spec.md):
//
//   [ {"kind": "atoms", "atoms": [{"re": 0.5, "im": 0.0, "mass": 1.0}, ...]},
//     {"kind": "circle", "density": "1 + 0.5*cos(theta)", "sup": 1.5},
//     {"kind": "interval", "lower": -1.0, "upper": 1.0, "density": "1",
//      "singular_lower": false, "singular_upper": false},
//     {"kind": "disk", "density": "1"} ]
//
// A top-level object {"components": [...]} is accepted as well. Parse errors
// cite the offending component index.
SpectralMeasureSpec parse_spec_json(const std::string& text);
SpectralMeasureSpec parse_spec_file(const std::string& path);

std::string spec_to_json(const SpectralMeasureSpec& spec);

}  // namespace besselorbit

#endif  // BESSELORBIT_SPEC_JSON_HPP_
