#pragma once

#include <optional>
#include <string>

#include "actk/model.hpp"
#include "actk/ssa.hpp"

namespace actk {

// Parameter file: {"kind":"raw","d":..,"kappa":[..],"lambda":[..],"delta":..}
// or {"kind":"scaled","V":..,"D":..,"kappa_prime":[..]}.
struct ParamsConfig {
  ReactionParams params;
  std::optional<ScaledParams> scaled;  // present when kind == "scaled"
};

ParamsConfig load_params(const std::string& path);
ParamsConfig parse_params(const std::string& json_text);
std::string params_to_json(const ParamsConfig& cfg);

// Distribution CSV: a1,..,ad,n,log_prob,prob; rows sorted by (n, lex a);
// 17 significant digits.
void write_distribution_csv(const Distribution& dist, const std::string& path);
Distribution read_distribution_csv(const std::string& path);

// Occupation CSV: a1,..,ad,n,time_fraction.
void write_occupation_csv(const OccupationMeasure& occ, const std::string& path);

// Writes `text` atomically via temp-and-rename.
void write_file_atomic(const std::string& path, const std::string& text);

}  // namespace actk
