#pragma once

#include "ghpath/metric_space.hpp"
#include "ghpath/sphere_paths.hpp"

#include <string>
#include <utility>
#include <vector>

namespace ghpath {

// Version string reported by the CLI and embedded in curve files.
const std::string& tool_version();

// ---------------------------------------------------------------------------
// Space files
//
// JSON layout:
//   {
//     "format": "ghpath-space",
//     "name": "...",                      (optional)
//     "labels": ["a", "b", ...],
//     "distances": [["0","3"],["3","0"]],
//     "recipe": {"kind": "...", ...}      (optional provenance, string values)
//   }
//
// Distance entries are exact scalars: fraction strings ("7/5"), decimal
// strings ("1.4"), integer strings, or plain JSON integers.  Floating-point
// JSON numbers are rejected so that files stay exact and byte-reproducible.
// ---------------------------------------------------------------------------

// Ordered key/value pairs describing how a generated space was produced.
using Recipe = std::vector<std::pair<std::string, std::string>>;

std::string space_to_json(const FiniteMetricSpace& X, const std::string& name = "",
                          const Recipe& recipe = {});

// Parses and validates a space from JSON text.  Throws errc::validation.
FiniteMetricSpace space_from_json(const std::string& text);

FiniteMetricSpace load_space(const std::string& path);
void save_space(const std::string& path, const FiniteMetricSpace& X,
                const std::string& name = "", const Recipe& recipe = {});

// ---------------------------------------------------------------------------
// Curve files
//
// JSON layout:
//   {
//     "format": "ghpath-curve",
//     "version": "...",
//     "construction": "geodesic" | "delta1" | "large" | "small" | ...,
//     "sphere": {"center": {<space>} | "center_file": "path",
//                "radius": "1/5"},                        (optional)
//     "lipschitz": "6/5",
//     "samples": [
//       {"t": "0", "space": {<space>},
//        "certificate": {"kind": "exact" | "rigidity" | "bracket",
//                        "radius": "1/5",
//                        "witness": {"m": 1, "n": 3, "pairs": [[0,0],...]},
//                        "tolerance": "1/1000000000",     (bracket only)
//                        "bracket": ["lo", "hi"],         (bracket only)
//                        "flagged": true,                 (only when set)
//                        "note": "..."}}                  (only when set)
//     ]
//   }
// ---------------------------------------------------------------------------

std::string curve_to_json(const SampledCurve& curve);

// Parses a curve from JSON text.  `base_dir` resolves relative
// "center_file" references; empty means the current directory.
SampledCurve curve_from_json(const std::string& text, const std::string& base_dir = "");

SampledCurve load_curve(const std::string& path);
void save_curve(const std::string& path, const SampledCurve& curve);

// Reads a whole file into a string (errc::validation on failure).
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace ghpath
