#pragma once

#include "cyweyl/root_data.hpp"

#include <string>
#include <string_view>

namespace cyweyl {

/// Parses the JSON descriptor schema
///
///   {"name": ..., "type": "a2"|"b2"|"bc2"|"d2"|"g2"|"rank1", "n": int, "r": 1|2,
///    "d": int, "curvature": real, "convention": "closed_form"|"geometric",
///    "multiplicities": [m | [m, m2], ...], "root_scales": [kappa, ...]}
///
/// `d`, `curvature` and `convention` are rank-one only; `multiplicities` and
/// `root_scales` are per root line and rank-two only.
SymmetricSpaceDescriptor descriptor_from_json(std::string_view json_text);

std::string descriptor_to_json(const SymmetricSpaceDescriptor& desc);

/// Built-in name, or path to a JSON descriptor file.
SymmetricSpaceDescriptor load_descriptor(const std::string& name_or_path);

}  // namespace cyweyl
