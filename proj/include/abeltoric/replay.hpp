#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// Stand-alone checker for certificate documents. Re-derives every claim from
// the embedded fan; shares only the exact-arithmetic layer with the engine.
namespace abeltoric::replay {

struct Report {
  bool ok = false;
  std::size_t steps_checked = 0;
  std::vector<std::string> errors;
};

Report check(std::string_view certificate_text);

}  // namespace abeltoric::replay
