#include "abeltoric/blowup.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include "abeltoric/error.hpp"

namespace abeltoric {

std::optional<BlowupMatch> is_2blowup(const Fan& fine, const Fan& coarse) {
  if (fine.size() != coarse.size() + 1) return std::nullopt;
  std::map<LatticeVector, std::size_t> where;
  for (std::size_t k = 0; k < fine.size(); ++k) where[fine.ray(k)] = k;
  BlowupMatch match;
  std::vector<bool> used(fine.size(), false);
  for (std::size_t k = 0; k < coarse.size(); ++k) {
    auto it = where.find(coarse.ray(k));
    if (it == where.end()) return std::nullopt;
    match.ray_map.push_back(it->second);
    used[it->second] = true;
  }
  match.new_ray = static_cast<std::size_t>(std::find(used.begin(), used.end(), false) - used.begin());
  const LatticeVector& fresh = fine.ray(match.new_ray);

  auto fine_cones = [&] {
    std::vector<RayMask> v;
    for (std::size_t c = 0; c < fine.max_cones().size(); ++c) v.push_back(fine.cone_mask(c));
    std::sort(v.begin(), v.end());
    return v;
  }();

  for (std::size_t i = 0; i < coarse.size(); ++i)
    for (std::size_t j = i + 1; j < coarse.size(); ++j) {
      if (!(coarse.ray(i) + coarse.ray(j) == fresh)) continue;
      if (!coarse.contains_face(bit(i) | bit(j))) continue;
      const Fan sub = star_subdivision(coarse, {i, j});
      std::vector<RayMask> mapped;
      for (const auto& cone : sub.max_cones()) {
        RayMask m = 0;
        for (auto k : cone) m |= bit(k == coarse.size() ? match.new_ray : match.ray_map[k]);
        mapped.push_back(m);
      }
      std::sort(mapped.begin(), mapped.end());
      if (mapped == fine_cones) {
        match.center = {i, j};
        return match;
      }
    }
  return std::nullopt;
}

std::vector<BlowupEdge> blowup_edges(const std::vector<Fan>& catalog) {
  std::vector<BlowupEdge> out;
  for (std::size_t a = 0; a < catalog.size(); ++a)
    for (std::size_t b = 0; b < catalog.size(); ++b) {
      if (a == b) continue;
      if (auto m = is_2blowup(catalog[a], catalog[b])) out.push_back({a, b, m->center});
    }
  return out;
}

std::string source_name(Source s) {
  switch (s) {
    case Source::Own: return "own";
    case Source::Propagated: return "propagated";
    case Source::NonPropagable: return "nonpropagable";
  }
  return "?";
}

std::vector<PropagatedVerdict> propagate(std::size_t count, const std::vector<BlowupEdge>& edges,
                                         const std::vector<SeedVerdict>& seeds) {
  if (seeds.size() != count) throw Error(ErrorKind::Internal, "one seed verdict per catalog entry expected");
  std::vector<std::vector<std::size_t>> finer(count);  // coarse -> its blow-ups
  std::vector<std::size_t> indegree(count, 0);
  for (const auto& e : edges) {
    if (e.fine >= count || e.coarse >= count) throw Error(ErrorKind::Internal, "edge outside the catalog");
    finer[e.coarse].push_back(e.fine);
    ++indegree[e.fine];
  }
  for (auto& v : finer) std::sort(v.begin(), v.end());

  std::vector<std::size_t> order;
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t k = 0; k < count; ++k)
    if (indegree[k] == 0) ready.push(k);
  while (!ready.empty()) {
    const std::size_t k = ready.top();
    ready.pop();
    order.push_back(k);
    for (auto f : finer[k])
      if (--indegree[f] == 0) ready.push(f);
  }
  if (order.size() != count) throw Error(ErrorKind::CycleDetected, "blow-up relations contain a cycle");

  std::vector<PropagatedVerdict> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    out[k].status = seeds[k].status;
    out[k].rule = seeds[k].rule;
  }
  for (std::size_t k : order) {
    auto& here = out[k];
    const bool finite = here.status == Status::NoFiniteMorphism;
    const bool embedding_only = here.status == Status::NoEmbedding ||
                                (here.source == Source::NonPropagable && here.status == Status::Inconclusive);
    for (auto f : finer[k]) {
      auto& there = out[f];
      if (finite) {
        if (there.status == Status::NoFiniteMorphism) continue;
        there.status = Status::NoFiniteMorphism;
        there.rule = here.rule;
        there.source = Source::Propagated;
        there.path = here.path.empty() ? std::vector<std::size_t>{k} : here.path;
        there.path.push_back(f);
      } else if (embedding_only && there.status == Status::Inconclusive && there.source == Source::Own) {
        there.source = Source::NonPropagable;
        there.path = here.path.empty() ? std::vector<std::size_t>{k} : here.path;
        there.path.push_back(f);
      }
    }
  }
  return out;
}

}  // namespace abeltoric
