#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "abeltoric/fan.hpp"
#include "abeltoric/obstruction.hpp"

namespace abeltoric {

struct BlowupMatch {
  std::array<std::size_t, 2> center;   // coarse indices, ascending
  std::vector<std::size_t> ray_map;    // coarse index -> fine index
  std::size_t new_ray;                 // fine index of x_i + x_j
};

// Whether fine is the star subdivision of coarse at a 2-cone, up to
// reordering of rays (rays are matched by coordinates).
std::optional<BlowupMatch> is_2blowup(const Fan& fine, const Fan& coarse);

struct BlowupEdge {
  std::size_t fine, coarse;  // catalog positions
  std::array<std::size_t, 2> center;
};

// Ordered by (fine, coarse).
std::vector<BlowupEdge> blowup_edges(const std::vector<Fan>& catalog);

enum class Source { Own, Propagated, NonPropagable };
std::string source_name(Source s);

struct SeedVerdict {
  Status status = Status::Inconclusive;
  Rule rule = Rule::None;
};

struct PropagatedVerdict {
  Status status = Status::Inconclusive;
  Rule rule = Rule::None;
  Source source = Source::Own;
  // Catalog positions from the seed down to this fan (Propagated or NonPropagable).
  std::vector<std::size_t> path;
};

// Only NoFiniteMorphism travels to blow-ups. A blow-up of a NoEmbedding-only
// seed stays Inconclusive and is tagged NonPropagable. Throws CycleDetected.
std::vector<PropagatedVerdict> propagate(std::size_t catalog_size, const std::vector<BlowupEdge>& edges,
                                         const std::vector<SeedVerdict>& seeds);

}  // namespace abeltoric
