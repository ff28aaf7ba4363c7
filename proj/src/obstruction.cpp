#include "abeltoric/obstruction.hpp"

#include <algorithm>
#include <numeric>

#include "abeltoric/error.hpp"
#include "abeltoric/lp.hpp"
#include "abeltoric/picard.hpp"

namespace abeltoric {

bool ZeroSet::insert(std::size_t i, std::size_t j) {
  if (i >= n_ || j >= n_) throw Error(ErrorKind::Internal, "zero-set index out of range");
  if (bits_[i * n_ + j]) return false;
  bits_[i * n_ + j] = true;
  bits_[j * n_ + i] = true;
  return true;
}

std::size_t ZeroSet::count() const {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i; j < n_; ++j) c += contains(i, j) ? 1 : 0;
  return c;
}

std::vector<IndexPair> ZeroSet::pairs() const {
  std::vector<IndexPair> out;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i; j < n_; ++j)
      if (contains(i, j)) out.emplace_back(i, j);
  return out;
}

std::string step_rule_name(const TraceStep& s) {
  struct V {
    std::string operator()(const step::DisjointDivisors&) const { return "DisjointDivisors"; }
    std::string operator()(const step::RelationRule&) const { return "RelationRule"; }
    std::string operator()(const step::Transitivity&) const { return "Transitivity"; }
    std::string operator()(const step::ChowVanishing&) const { return "ChowVanishing"; }
  };
  return std::visit(V{}, s);
}

std::string contradiction_kind_name(ContradictionKind k) {
  switch (k) {
    case ContradictionKind::FullGraphConnected: return "FullGraphConnected";
    case ContradictionKind::PicGeneratingComponent: return "PicGeneratingComponent";
    case ContradictionKind::P1FactorSubgraph: return "P1FactorSubgraph";
  }
  return "?";
}

ObstructionState initial_zeros(const Fan& fan) {
  ObstructionState state(fan.size());
  for (const auto& pc : primitive_collections(fan)) {
    if (pc.indices.size() != 2) continue;
    state.zero_set.insert(pc.indices[0], pc.indices[1]);
    state.trace.emplace_back(step::DisjointDivisors{pc.indices[0], pc.indices[1]});
  }
  return state;
}

std::optional<step::RelationRule> relation_rule_step(const Fan& fan, const ObstructionState& state) {
  const std::size_t n = fan.size();
  const auto& z = state.zero_set;
  for (std::size_t pivot = 0; pivot < n; ++pivot) {
    std::vector<std::size_t> survivors;
    for (std::size_t k = 0; k < n; ++k)
      if (!z.contains(pivot, k)) survivors.push_back(k);
    if (survivors.empty()) continue;

    std::vector<Rational> total(4, Rational(0));
    bool any = false;
    for (std::size_t t : survivors) {
      if (any) {
        Rational v = 0;
        for (std::size_t c = 0; c < 4; ++c) v += total[c] * fan.ray(t)[c];
        if (v > 0) continue;  // already covered
      }
      lp::Problem prob(4);
      for (std::size_t u : survivors) {
        RationalVector row(4);
        for (std::size_t c = 0; c < 4; ++c) row[c] = fan.ray(u)[c];
        prob.add(std::move(row), lp::Relation::GreaterEqual, u == t ? 1 : 0);
      }
      auto sol = lp::solve(prob);
      if (sol.status == lp::Status::Infeasible) continue;
      for (std::size_t c = 0; c < 4; ++c) total[c] += sol.point[c];
      any = true;
    }
    if (!any) continue;

    auto ints = primitive_integer_multiple(total);
    step::RelationRule r;
    r.pivot = pivot;
    for (std::size_t c = 0; c < 4; ++c) r.m[c] = ints[c];
    r.relation = pairing_vector(fan, r.m);
    for (std::size_t k : survivors) {
      if (r.relation[k] < 0) throw Error(ErrorKind::Internal, "relation rule produced a mixed sign");
      if (r.relation[k] > 0) r.concluded.push_back(k);
    }
    if (!r.concluded.empty()) return r;
  }
  return std::nullopt;
}

bool close_transitively(ObstructionState& state) {
  auto& z = state.zero_set;
  const std::size_t n = z.size();
  bool changed_any = false;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = i; k < n; ++k) {
        if (z.contains(i, k)) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i || j == k) continue;
          if (z.contains(i, j) && z.contains(j, k)) {
            z.insert(i, k);
            state.trace.emplace_back(step::Transitivity{i, j, k});
            changed = changed_any = true;
            break;
          }
        }
      }
  }
  return changed_any;
}

ObstructionState saturate(const Fan& fan, ObstructionState state) {
  if (state.zero_set.size() != fan.size()) throw Error(ErrorKind::Internal, "state size mismatch");
  for (;;) {
    close_transitively(state);
    auto r = relation_rule_step(fan, state);
    if (!r) break;
    for (std::size_t k : r->concluded) state.zero_set.insert(r->pivot, k);
    state.trace.emplace_back(std::move(*r));
  }
  return state;
}

std::vector<std::vector<std::size_t>> zero_graph_components(const ZeroSet& z) {
  const std::size_t n = z.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (z.contains(i, j)) parent[find(i)] = find(j);
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> slot(n, SIZE_MAX);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (slot[r] == SIZE_MAX) {
      slot[r] = out.size();
      out.emplace_back();
    }
    out[slot[r]].push_back(i);
  }
  return out;
}

namespace {

bool complete_on(const ZeroSet& z, const std::vector<std::size_t>& vs, bool squares) {
  for (std::size_t a = 0; a < vs.size(); ++a)
    for (std::size_t b = squares ? a : a + 1; b < vs.size(); ++b)
      if (!z.contains(vs[a], vs[b])) return false;
  return true;
}

}  // namespace

std::optional<Contradiction> contradiction_check(const Fan& fan, const ObstructionState& state) {
  const auto& z = state.zero_set;
  const std::size_t n = fan.size();
  const auto comps = zero_graph_components(z);
  if (n >= 2 && comps.size() == 1) {
    return Contradiction{ContradictionKind::FullGraphConnected, comps[0], std::nullopt, std::nullopt, false};
  }
  for (const auto& c : comps) {
    if (!complete_on(z, c, true)) continue;
    if (classes_generate_pic(fan, std::span<const std::size_t>(c))) {
      return Contradiction{ContradictionKind::PicGeneratingComponent, c, std::nullopt, std::nullopt, true};
    }
  }
  for (const auto& f : p1_factors(fan)) {
    std::vector<std::size_t> rest;
    for (std::size_t k = 0; k < n; ++k)
      if (k != f.first && k != f.second) rest.push_back(k);
    if (rest.size() >= 2 && complete_on(z, rest, false)) {
      return Contradiction{ContradictionKind::P1FactorSubgraph, rest,
                           std::array<std::size_t, 2>{f.first, f.second}, f.projection, false};
    }
  }
  return std::nullopt;
}

std::optional<ContractionWitness> contraction_criterion(const Fan& fan) {
  for (const auto& pc : primitive_collections(fan)) {
    if (pc.indices.size() != 4) continue;
    const auto rel = primitive_relation(fan, pc);
    if (rel.rhs.size() != 1 || rel.rhs[0].second < 1) continue;
    const std::size_t e = rel.rhs[0].first;
    RayMask neighbours = 0;
    for (std::size_t k = 0; k < fan.size(); ++k)
      if (k != e && fan.contains_face(bit(e) | bit(k))) neighbours |= bit(k);
    if (neighbours != mask_of(pc.indices)) continue;
    return ContractionWitness{{pc.indices[0], pc.indices[1], pc.indices[2], pc.indices[3]}, e, rel.rhs[0].second};
  }
  return std::nullopt;
}

namespace {

// Multipliers proving q_target <= 0 on the cone cut out by Z and q >= 0.
std::optional<step::ChowVanishing> farkas(const std::vector<IndexPair>& pairs,
                                          const std::vector<RationalVector>& f, const ZeroSet& z,
                                          std::size_t target, std::optional<std::size_t> square,
                                          int square_sign = 1) {
  const std::size_t np = pairs.size();
  const std::size_t d = f.empty() ? 0 : f[0].size();
  lp::Problem prob(np);
  for (std::size_t p = 0; p < np; ++p) prob.nonnegative[p] = !z.contains(pairs[p].first, pairs[p].second);
  for (std::size_t b = 0; b < d; ++b) {
    RationalVector row(np);
    for (std::size_t p = 0; p < np; ++p) row[p] = f[p][b];
    prob.add(std::move(row), lp::Relation::Equal, 0);
  }
  auto unit = [&](std::size_t p) {
    RationalVector row(np, Rational(0));
    row[p] = 1;
    prob.add(std::move(row), lp::Relation::GreaterEqual, 1);
  };
  unit(target);
  std::optional<std::size_t> square_pair;
  if (square) {
    for (std::size_t p = 0; p < np; ++p)
      if (pairs[p] == IndexPair{*square, *square}) square_pair = p;
    if (!square_pair || *square_pair == target) return std::nullopt;
    if (prob.nonnegative[*square_pair]) {
      unit(*square_pair);
    } else {
      // Already zero: ask for a multiplier of the given sign.
      RationalVector row(np, Rational(0));
      row[*square_pair] = square_sign;
      prob.add(std::move(row), lp::Relation::GreaterEqual, 1);
    }
  }
  // Keep the multipliers small and sparse.
  prob.objective.assign(np, Rational(0));
  for (std::size_t p = 0; p < np; ++p)
    if (prob.nonnegative[p]) prob.objective[p] = -1;
  auto sol = lp::solve(prob);
  if (sol.status == lp::Status::Infeasible) return std::nullopt;
  if (sol.status == lp::Status::Unbounded) {
    prob.objective.clear();
    sol = lp::solve(prob);
  }
  step::ChowVanishing out;
  out.target = pairs[target];
  out.square_of = square;
  for (std::size_t p = 0; p < np; ++p) {
    if (sol.point[p] == 0) continue;
    if (prob.nonnegative[p]) out.nonnegative.emplace_back(pairs[p], sol.point[p]);
    else out.on_zero_set.emplace_back(pairs[p], sol.point[p]);
  }
  return out;
}

}  // namespace

ChowStageResult chow_class_stage(const Fan& fan, const IntersectionTable& table,
                                 ObstructionState& state, std::span<const IndexPair> basis_hint) {
  ChowStageResult res;
  res.basis = codim2_basis(table, basis_hint);
  const auto& pairs = res.basis.pairs;
  const std::size_t np = pairs.size();
  const std::size_t d = res.basis.dimension();
  std::vector<RationalVector> f(np);
  for (std::size_t p = 0; p < np; ++p) f[p] = pair_functional(table, res.basis, pairs[p]);

  for (;;) {
    bool found = false;
    for (std::size_t p = 0; p < np; ++p) {
      auto& z = state.zero_set;
      if (z.contains(pairs[p].first, pairs[p].second)) continue;
      auto cert = farkas(pairs, f, z, p, std::nullopt);
      if (!cert) continue;
      bool anchored = false;
      for (std::size_t i = 0; i < fan.size() && !anchored; ++i) {
        for (int sign : {1, -1}) {
          if (sign < 0 && !z.contains(i, i)) break;
          if (auto sq = farkas(pairs, f, z, p, i, sign)) {
            cert = std::move(sq);
            anchored = true;
            break;
          }
        }
      }
      z.insert(pairs[p].first, pairs[p].second);
      state.trace.emplace_back(*cert);
      res.forced.push_back(std::move(*cert));
      found = true;
    }
    if (!found) break;
    const std::size_t before = state.trace.size();
    state = saturate(fan, std::move(state));
    res.resaturation.insert(res.resaturation.end(), state.trace.begin() + static_cast<long>(before),
                            state.trace.end());
    if (auto c = contradiction_check(fan, state)) {
      res.finite_contradiction = std::move(c);
      break;
    }
  }

  RationalMatrix zrows;
  for (const auto& zp : state.zero_set.pairs()) {
    const auto& fp = f[res.basis.pair_index(zp)];
    res.zero_functionals.emplace_back(zp, fp);
    zrows.push_back(fp);
  }
  res.span = zrows.empty() ? RationalMatrix{} : nullspace(zrows, d);
  if (zrows.empty()) {
    for (std::size_t b = 0; b < d; ++b) {
      RationalVector e(d, Rational(0));
      e[b] = 1;
      res.span.push_back(std::move(e));
    }
  }
  res.gram = basis_gram(table, res.basis);
  res.vanishing_reason.assign(d, "");
  for (std::size_t b = 0; b < d; ++b) {
    bool coeff_zero = std::all_of(res.span.begin(), res.span.end(), [&](const RationalVector& v) { return v[b] == 0; });
    if (coeff_zero) {
      res.vanishing_coordinates.push_back(b);
      res.vanishing_reason[b] = "coefficient";
      continue;
    }
    bool functional_zero = std::all_of(res.span.begin(), res.span.end(), [&](const RationalVector& v) {
      Rational s = 0;
      for (std::size_t c = 0; c < d; ++c) s += res.gram[b][c] * v[c];
      return s == 0;
    });
    if (functional_zero) res.vanishing_reason[b] = "functional";
  }
  res.self_intersection_vanishes = true;
  for (const auto& v : res.span)
    for (const auto& w : res.span) {
      Rational s = 0;
      for (std::size_t b = 0; b < d; ++b)
        for (std::size_t c = 0; c < d; ++c) s += v[b] * res.gram[b][c] * w[c];
      if (s != 0) res.self_intersection_vanishes = false;
    }
  return res;
}

std::string mode_name(Mode m) { return m == Mode::FiniteMorphism ? "finite" : "embedding"; }

std::string status_name(Status s) {
  switch (s) {
    case Status::NoFiniteMorphism: return "NoFiniteMorphism";
    case Status::NoEmbedding: return "NoEmbedding";
    case Status::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string rule_name(Rule r) {
  switch (r) {
    case Rule::None: return "None";
    case Rule::FullGraphConnected: return "FullGraphConnected";
    case Rule::PicGeneratingComponent: return "PicGeneratingComponent";
    case Rule::P1FactorSubgraph: return "P1FactorSubgraph";
    case Rule::ContractionCriterion: return "ContractionCriterion";
    case Rule::ChowClassStage: return "ChowClassStage";
  }
  return "?";
}

std::string Verdict::summary() const {
  if (status == Status::Inconclusive) return "Inconclusive";
  return status_name(status) + " (" + rule_name(rule) + ")";
}

namespace {

Rule rule_of(ContradictionKind k) {
  switch (k) {
    case ContradictionKind::FullGraphConnected: return Rule::FullGraphConnected;
    case ContradictionKind::PicGeneratingComponent: return Rule::PicGeneratingComponent;
    case ContradictionKind::P1FactorSubgraph: return Rule::P1FactorSubgraph;
  }
  return Rule::None;
}

}  // namespace

Verdict certify(const Fan& fan, Mode mode, const CertifyOptions& options) {
  const auto report = validate(fan);
  if (!report.ok()) {
    std::string msg = "fan '" + fan.name() + "' is not smooth and complete";
    if (!report.problems.empty()) msg += ": " + report.problems.front();
    throw Error(ErrorKind::InvalidFan, msg);
  }
  auto ample = ample_divisor(fan);
  if (!ample) throw Error(ErrorKind::InvalidFan, "fan '" + fan.name() + "' is not projective");

  Verdict v;
  v.fan_name = fan.name();
  v.mode = mode;
  v.ample = std::move(*ample);

  if (auto w = contraction_criterion(fan)) {
    v.status = Status::NoFiniteMorphism;
    v.rule = Rule::ContractionCriterion;
    v.contraction = *w;
    v.state = initial_zeros(fan);
    return v;
  }

  v.state = saturate(fan, initial_zeros(fan));
  if (auto c = contradiction_check(fan, v.state)) {
    v.status = Status::NoFiniteMorphism;
    v.rule = rule_of(c->kind);
    v.contradiction = std::move(c);
    return v;
  }
  if (mode == Mode::FiniteMorphism) return v;

  auto table = std::make_shared<const IntersectionTable>(fan);
  v.table = table;
  auto res = chow_class_stage(fan, *table, v.state, options.basis_hint);
  if (res.finite_contradiction) {
    v.status = Status::NoEmbedding;
    v.rule = Rule::ChowClassStage;
    v.contradiction = res.finite_contradiction;
  } else if (res.self_intersection_vanishes) {
    v.status = Status::NoEmbedding;
    v.rule = Rule::ChowClassStage;
  }
  v.chow = std::move(res);
  return v;
}

}  // namespace abeltoric
