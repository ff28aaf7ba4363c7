#include <filesystem>
#include <fstream>
#include <set>

#include "abeltoric/catalog.hpp"
#include "abeltoric/classify.hpp"
#include "abeltoric/picard.hpp"
#include "helpers.hpp"

using namespace abeltoric;
using testing_support::builtin;
using testing_support::error_kind_of;

namespace {

std::set<std::vector<std::size_t>> collections_of(const Fan& f) {
  std::set<std::vector<std::size_t>> out;
  for (const auto& pc : primitive_collections(f)) out.insert(pc.indices);
  return out;
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto d = std::filesystem::temp_directory_path() / ("abeltoric-unit-" + name);
  std::filesystem::remove_all(d);
  std::filesystem::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("every builtin validates and round-trips byte-exactly") {
  std::set<std::string> labels;
  for (const auto& e : builtin_catalog()) {
    CAPTURE(e.type_label);
    CHECK(labels.insert(e.type_label).second);
    CHECK(validate(e.fan).ok());
    const std::string text = serialize_fan_file(e.file);
    auto parsed = parse_fan_file(text);
    CHECK(serialize_fan_file(parsed) == text);
    auto again = to_fan(parsed);
    CHECK(again.rays() == e.fan.rays());
    CHECK(again.max_cones() == e.fan.max_cones());
  }
  CHECK(builtin_catalog().size() >= 40);
}

TEST_CASE("explicit fan files round-trip") {
  auto f = fan_file_of(builtin("P4"), "P4", "test");
  const std::string text = serialize_fan_file(f);
  CHECK(serialize_fan_file(parse_fan_file(text)) == text);
  CHECK(to_fan(parse_fan_file(text)).max_cones().size() == 5);
}

TEST_CASE("fan file parse errors") {
  CHECK(error_kind_of([] { parse_fan_file("{"); }) == ErrorKind::ParseError);
  CHECK(error_kind_of([] { parse_fan_file(R"({"name": "x"})"); }) == ErrorKind::ParseError);
  CHECK(error_kind_of([] { parse_fan_file(R"({"name": "x", "rays": [[1,0,0]], "max_cones": []})"); }) ==
        ErrorKind::ParseError);
  CHECK(error_kind_of([] { load_fan_file("/nonexistent/fan.json"); }) == ErrorKind::ParseError);
}

TEST_CASE("F_a-bundles over P2 are smooth, complete and projective") {
  for (long a = 0; a <= 3; ++a)
    for (long s = -3; s <= 3; ++s)
      for (long t = -3; t <= 3; ++t) {
        auto f = build_fa_bundle(a, s, t);
        CAPTURE(f.name());
        CHECK(validate(f).ok());
        CHECK(ample_divisor(f).has_value());
        auto r = basis_relations(f, {0, 1, 3, 5});
        CHECK(r[0] == std::vector<Integer>{1, 0, -1, 0, 0, 0, 0});
        CHECK(r[1] == std::vector<Integer>{0, 1, -1, 0, 0, 0, 0});
        CHECK(r[2] == std::vector<Integer>{0, 0, s, 1, -1, 0, 0});
        CHECK(r[3] == std::vector<Integer>{0, 0, t, 0, a, 1, -1});
      }
}

TEST_CASE("D types from the F_a-bundle generator") {
  CHECK(collections_of(build_fa_bundle(1, 0, 2)) == collections_of(builtin("D1")));
  CHECK(builtin("D1").rays() == build_fa_bundle(1, 0, 2).rays());
  CHECK(builtin("D16").rays() == build_fa_bundle(1, 1, -1).rays());
}

TEST_CASE("family generators") {
  CHECK(build_family(Family::I, {1, 1, -1}).rays() == builtin("I4").rays());
  CHECK(build_family(Family::L, {1, 0, -1, 1}).rays() == builtin("L10").rays());
  CHECK(build_family(Family::M, {1, 0, 1}).rays() == builtin("M3").rays());
  CHECK(parse_family("I") == Family::I);
  CHECK(parse_family("M") == Family::M);
  CHECK(error_kind_of([] { parse_family("Q"); }) == ErrorKind::UnknownFamily);
  CHECK(error_kind_of([] { build_family(Family::I, {1, 1}); }) == ErrorKind::ValidationFailed);
}

TEST_CASE("fan from collections") {
  std::vector<LatticeVector> rays{LatticeVector(1, 0, 0, 0), LatticeVector(0, 1, 0, 0), LatticeVector(0, 0, 1, 0),
                                  LatticeVector(0, 0, 0, 1), LatticeVector(-1, -1, -1, -1)};
  auto f = fan_from_collections("P4", rays, {{0, 1, 2, 3, 4}});
  CHECK(f.max_cones().size() == 5);
  CHECK(error_kind_of([&] { fan_from_collections("bad", rays, {{0, 1}}); }) == ErrorKind::ValidationFailed);
}

TEST_CASE("catalog directories load sorted by file name") {
  auto dir = scratch_dir("catalog");
  for (const auto& label : {"P4", "L12", "G1"}) {
    auto e = builtin_entry(label);
    std::ofstream(dir / (std::string(label) + ".json")) << serialize_fan_file(e->file);
  }
  std::ofstream(dir / "notes.txt") << "ignored";
  auto entries = load_catalog_dir(dir);
  REQUIRE(entries.size() == 3);
  CHECK(entries[0].type_label == "G1");
  CHECK(entries[1].type_label == "L12");
  CHECK(entries[2].type_label == "P4");
  CHECK(entries[1].file.chow_basis_hint.size() == 6);
  std::filesystem::remove_all(dir);
}

TEST_CASE("classification rows and CSV") {
  std::vector<CatalogEntry> entries;
  for (const auto& label : {"P4", "L12", "G1", "BlP4pt"}) entries.push_back(*builtin_entry(label));
  const auto g1 = builtin("G1");
  auto sub = star_subdivision(g1, {1, 3});
  entries.push_back(CatalogEntry{"G1-blown", "test", fan_file_of(sub, "G1-blown"), sub});
  const auto l12 = builtin("L12");
  auto lsub = star_subdivision(l12, {0, 1});
  entries.push_back(CatalogEntry{"L12-blown", "test", fan_file_of(lsub, "L12-blown"), lsub});

  auto dir = scratch_dir("certs");
  auto rows = classify(entries, {2, dir});
  REQUIRE(rows.size() == 12);
  for (const auto& r : rows) {
    CAPTURE(r.type);
    CHECK(r.error.empty());
    CHECK(r.replay_ok);
  }
  const std::string csv = rows_to_csv(rows);
  CHECK(csv.rfind("type,rays,mode,verdict,rule,source\n", 0) == 0);
  // Blow-ups that certify on their own keep their own verdict.
  CHECK(csv.find("G1-blown,8,finite,NoFiniteMorphism,FullGraphConnected,own") != std::string::npos);
  CHECK(csv.find("L12-blown,9,embedding,NoFiniteMorphism") != std::string::npos);
  CHECK(csv.find("L12,8,embedding,NoEmbedding,ChowClassStage,own") != std::string::npos);
  CHECK(csv.find("P4,5,finite,Inconclusive,None,none") != std::string::npos);
  CHECK(std::filesystem::exists(dir / "L12.embedding.json"));
  CHECK(std::filesystem::exists(dir / "G1.finite.json"));

  auto again = classify(entries, {4, std::nullopt});
  CHECK(rows_to_csv(again) == csv);
  std::filesystem::remove_all(dir);
}

TEST_CASE("duplicate labels are rejected") {
  std::vector<CatalogEntry> entries{*builtin_entry("P4"), *builtin_entry("P4")};
  CHECK(error_kind_of([&] { classify(entries); }) == ErrorKind::ParseError);
}

TEST_CASE("row source text") {
  ClassificationRow r;
  CHECK(r.source_text() == "none");
  r.status = Status::NoFiniteMorphism;
  CHECK(r.source_text() == "own");
  r.source = Source::Propagated;
  r.source_path = "G1>G1/x1x2";
  CHECK(r.source_text() == "propagated:G1>G1/x1x2");
  r.source = Source::NonPropagable;
  r.status = Status::Inconclusive;
  r.source_path = "L12>L12/x1x2";
  CHECK(r.source_text() == "nonpropagable:L12>L12/x1x2");
  r.error = "InvalidFan: not complete";
  CHECK(r.source_text() == "error");
  CHECK(r.verdict_text() == "Error");
}

TEST_CASE("catalog contents") {
  CHECK(builtin("G1").size() == 7);
  CHECK(builtin("J2").size() == 8);
  CHECK(builtin("M1").size() == 8);
  CHECK_FALSE(builtin_entry("V4tilde").has_value());
  for (const char* label : {"P4", "P1xP3", "P2xP2", "P1xP1xP1xP1", "BlP4pt", "L12", "M5", "D16", "L5[a=3]"})
    CHECK(builtin_entry(label).has_value());
}
