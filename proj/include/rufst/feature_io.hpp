#pragma once

#include <filesystem>

#include "rufst/finite_frame.hpp"
#include "rufst/io.hpp"
#include "rufst/scattering.hpp"

namespace rufst {

/// Feature records are written as a directory: meta.json (layout, parameters,
/// normalization constants, per-map norms), maps.npy (L x N1 x N2, <f8) and
/// norms.csv. The round trip through import_features is lossless.
void export_features(const std::filesystem::path& dir, const FeatureSet& fs,
                     const FrameSpec& spec);
FeatureSet import_features(const std::filesystem::path& dir);

/// Coefficient sets: meta.json (atom table with box geometry and offsets)
/// plus coeffs.npy (flat <c16 payload).
void export_coefficients(const std::filesystem::path& dir, const CoefficientSet& coeffs,
                         const FrameSpec& spec);
CoefficientSet import_coefficients(const std::filesystem::path& dir);

}  // namespace rufst
