#pragma once

#include <string>
#include <vector>

#include "abeltoric/catalog.hpp"
#include "abeltoric/error.hpp"
#include "abeltoric/fan.hpp"
#include "doctest.h"

namespace testing_support {

inline abeltoric::Fan builtin(const std::string& label) {
  auto e = abeltoric::builtin_entry(label);
  REQUIRE_MESSAGE(e.has_value(), "missing builtin " << label);
  return e->fan;
}

// 1-based ray label to index.
constexpr std::size_t x(std::size_t one_based) { return one_based - 1; }

inline std::vector<abeltoric::Integer> ints(std::initializer_list<long> v) {
  return {v.begin(), v.end()};
}

template <class F>
abeltoric::ErrorKind error_kind_of(F&& f) {
  try {
    f();
  } catch (const abeltoric::Error& e) {
    return e.kind();
  }
  FAIL("expected an abeltoric::Error");
  return abeltoric::ErrorKind::Internal;
}

}  // namespace testing_support
