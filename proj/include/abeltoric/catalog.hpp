#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "abeltoric/chow.hpp"
#include "abeltoric/fan.hpp"

namespace abeltoric {

// On-disk description of a fan: either explicit rays and cones, or a
// primitive-relation presentation. Indices are 0-based.
struct FanFile {
  std::string name;
  std::string type;        // empty when absent
  std::string provenance;  // empty when absent
  std::vector<LatticeVector> rays;
  std::vector<Cone> max_cones;
  std::optional<PrimitivePresentation> presentation;
  std::vector<IndexPair> chow_basis_hint;
};

// Throws ParseError.
FanFile parse_fan_file(std::string_view text);
FanFile load_fan_file(const std::filesystem::path& path);
// Canonical text; parse(serialize(f)) serializes to the same bytes.
std::string serialize_fan_file(const FanFile& file);
// Throws ValidationFailed etc. via fan_from_primitive_data, or MalformedFan.
Fan to_fan(const FanFile& file);
FanFile fan_file_of(const Fan& fan, std::string type = {}, std::string provenance = {});

// All 4-subsets of rays containing none of the given collections.
Fan fan_from_collections(const std::string& name, std::vector<LatticeVector> rays,
                         const std::vector<std::vector<std::size_t>>& collections);

// F_a-bundle over P^2 with x3 = (-1,-1,s,t), x5 = (0,0,-1,a).
Fan build_fa_bundle(long a, long s, long t);

enum class Family { I, L, M };
// I: (a,b,c). L: (a,b,c,d). M: (a,b,c). Throws ValidationFailed for bad parameters.
Fan build_family(Family family, const std::vector<long>& params);
Family parse_family(std::string_view name);  // throws UnknownFamily

PrimitivePresentation g1_presentation(long a);
PrimitivePresentation l5_presentation(long a);
PrimitivePresentation l12_presentation();
PrimitivePresentation j2_presentation();
PrimitivePresentation m5_presentation();

struct CatalogEntry {
  std::string type_label;
  std::string provenance;
  FanFile file;
  Fan fan;
};

// Every fan with explicit data; validated on construction.
const std::vector<CatalogEntry>& builtin_catalog();
std::optional<CatalogEntry> builtin_entry(std::string_view label);

// *.json files in a directory, sorted by file name. Label = type, else name.
std::vector<CatalogEntry> load_catalog_dir(const std::filesystem::path& dir);

}  // namespace abeltoric
