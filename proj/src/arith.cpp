#include "abeltoric/arith.hpp"
#include "abeltoric/error.hpp"

#include <stdexcept>

namespace abeltoric {

std::int64_t to_int64(const Integer& v) {
  if (!v.fits_slong_p()) {
    throw std::overflow_error("integer " + v.get_str() + " does not fit in 64 bits");
  }
  return v.get_si();
}

std::vector<Integer> primitive_integer_multiple(const std::vector<Rational>& v) {
  Integer den = 1;
  for (const auto& q : v) den = lcm(den, Integer(q.get_den()));
  std::vector<Integer> out;
  out.reserve(v.size());
  Integer content = 0;
  for (const auto& q : v) {
    Integer x = Integer(q.get_num()) * (den / Integer(q.get_den()));
    content = gcd(content, x);
    out.push_back(std::move(x));
  }
  if (content > 1) {
    for (auto& x : out) x /= content;
  }
  return out;
}

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedFan: return "MalformedFan";
    case ErrorKind::NotABasis: return "NotABasis";
    case ErrorKind::NotACone: return "NotACone";
    case ErrorKind::NoContainingCone: return "NoContainingCone";
    case ErrorKind::UnderdeterminedRays: return "UnderdeterminedRays";
    case ErrorKind::InconsistentRelations: return "InconsistentRelations";
    case ErrorKind::ValidationFailed: return "ValidationFailed";
    case ErrorKind::CollectionMismatch: return "CollectionMismatch";
    case ErrorKind::RankDeficiency: return "RankDeficiency";
    case ErrorKind::InvalidFan: return "InvalidFan";
    case ErrorKind::CycleDetected: return "CycleDetected";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownFamily: return "UnknownFamily";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace abeltoric
