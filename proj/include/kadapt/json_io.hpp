#pragma once

#include <string>
#include <variant>

#include "json.hpp"
#include "kadapt/instance.hpp"

namespace kadapt {

using Instance = std::variant<FiniteInstance, AffineInstance>;

// Exact numbers serialize as int64 when integral, as "p/q" strings otherwise;
// floating-point JSON numbers are rejected on load.
nlohmann::json rat_to_json(const Rat& r);
Rat rat_from_json(const nlohmann::json& j, const std::string& field);

nlohmann::json to_json(const FiniteInstance& inst);
nlohmann::json to_json(const AffineInstance& inst);
nlohmann::json to_json(const Instance& inst);

// Dispatches on "kind"; throws ParseError with field context on malformed
// input and on validation failures.
Instance instance_from_json(const nlohmann::json& j);

Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

}  // namespace kadapt
