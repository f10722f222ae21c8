#pragma once

#include <json.hpp>

#include "pchar/characters.hpp"
#include "pchar/cyclotomic.hpp"

namespace pchar {

/// {"conductor": e, "coeffs": [[num, den], ...]} with num and den as decimal strings.
nlohmann::json cyclotomic_to_json(const Cyclotomic& c);
nlohmann::json table_to_json(const CharacterTable& t);

}  // namespace pchar
