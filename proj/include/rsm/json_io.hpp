#pragma once

#include <string>

#include "rsm/adversary.hpp"
#include "rsm/ambiguity.hpp"
#include "rsm/closed_form.hpp"
#include "rsm/core.hpp"

namespace rsm {

inline constexpr const char* kVersion = "0.1.0";

std::string fmt17(double x);  // 17 significant digits

std::string to_json(const Mechanism& m);
std::string to_json(const GridPoint& g);
std::string to_json(const WorstCaseCertificate& c);
std::string to_json(const AmbiguitySet& s);
std::string to_json(const QuantileInfMechanism& m);

Mechanism mechanism_from_json(const std::string& text);
AmbiguitySet set_from_json(const std::string& text);

}  // namespace rsm
