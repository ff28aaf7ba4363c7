#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "abeltoric/fan.hpp"
#include "abeltoric/obstruction.hpp"

namespace abeltoric {

inline constexpr const char* kCertificateFormat = "toric-abelian-certificate/1";

// JSON document with the fan, every trace step, the final rule and, for the
// Chow stage, the intersection table and linear data. Integers are JSON
// integers; rationals are "p/q" strings.
std::string certificate_json(const Fan& fan, const Verdict& verdict);

}  // namespace abeltoric
