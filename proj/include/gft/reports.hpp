#pragma once

#include "gft/jordan.hpp"
#include "gft/spectral.hpp"
#include "gft/total_variation.hpp"
#include "gft/transform.hpp"
#include "gft/types.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace gft {

// Machine-readable report serialization. All output is deterministic for
// fixed inputs; nothing here records wall-clock time.

nlohmann::json to_json(const ZeroVerdict& verdict);

nlohmann::json to_json(const Spectrum& spectrum);

// Manifest of eigenvalue, chain lengths, and residuals. The chain vectors
// themselves go to a separate dense Matrix Market file.
nlohmann::json chain_manifest(const ChainSet& chains);

nlohmann::json to_json(const AimSpectrum& spectrum);

std::string tv_csv(const TvReport& report);

// Two-column plot data: component index in ascending |lambda| order vs
// energy fraction of that component.
std::string energy_index_csv(const AimSpectrum& spectrum);

// Long-format plot data (component, node, magnitude) for the selected
// components.
std::string component_magnitude_csv(const AimSpectrum& spectrum,
                                    std::span<const Index> selected);

std::string projections_csv(const AimSpectrum& spectrum);

void write_matrix_market_dense(const Matrix& m,
                               const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path,
                     const std::string& contents);

}  // namespace gft
