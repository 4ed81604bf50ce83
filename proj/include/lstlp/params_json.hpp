#pragma once

#include <filesystem>
#include <string_view>

#include <nlohmann/json.hpp>

#include "lstlp/market_model.hpp"

namespace lstlp {

/// Parses a ModelParams document. Keys must be exactly
/// g, sigma, r, m, rho, p0, fee_cap_k, token_kind; unknown or missing keys
/// and non-numeric values throw InvalidParams.
ModelParams params_from_json(const nlohmann::json& doc);
ModelParams params_from_json_text(std::string_view text);
ModelParams load_params(const std::filesystem::path& path);

nlohmann::json params_to_json(const ModelParams& params);

}  // namespace lstlp
