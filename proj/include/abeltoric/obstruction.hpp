#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "abeltoric/chow.hpp"
#include "abeltoric/fan.hpp"

namespace abeltoric {

// Symmetric set of pairs (i, j) with C_i C_j = 0 forced; squares allowed.
class ZeroSet {
 public:
  explicit ZeroSet(std::size_t n = 0) : n_(n), bits_(n * n, false) {}

  std::size_t size() const { return n_; }
  bool contains(std::size_t i, std::size_t j) const { return bits_[i * n_ + j]; }
  // True if the pair was new.
  bool insert(std::size_t i, std::size_t j);
  std::size_t count() const;  // pairs with i <= j
  std::vector<IndexPair> pairs() const;

  friend bool operator==(const ZeroSet&, const ZeroSet&) = default;

 private:
  std::size_t n_;
  std::vector<bool> bits_;
};

namespace step {

// {x_i, x_j} is a primitive collection, so D_i D_j = 0 on X.
struct DisjointDivisors {
  std::size_t i, j;
};

// sum_k <m, x_k> C_pivot C_k = 0 with every surviving term of one sign.
struct RelationRule {
  std::size_t pivot;
  std::array<Integer, 4> m;         // standard dual coordinates
  std::vector<Integer> relation;    // <m, x_k> for every k
  std::vector<std::size_t> concluded;  // k with (pivot, k) now zero
};

// (i,j), (j,k) in Z give (i,k).
struct Transitivity {
  std::size_t i, j, k;
};

// sum_p y_p q_p + sum_{p in Z} z_p q_p = 0 identically on A^2, y >= 0,
// y_target > 0. Forces q_target = 0.
struct ChowVanishing {
  IndexPair target;
  std::vector<std::pair<IndexPair, Rational>> nonnegative;  // y, includes target
  std::vector<std::pair<IndexPair, Rational>> on_zero_set;  // z
  std::optional<std::size_t> square_of;  // y_(i,i) > 0 for this i
};

}  // namespace step

using TraceStep =
    std::variant<step::DisjointDivisors, step::RelationRule, step::Transitivity, step::ChowVanishing>;

std::string step_rule_name(const TraceStep& s);

struct ObstructionState {
  ZeroSet zero_set;
  std::vector<TraceStep> trace;

  explicit ObstructionState(std::size_t n = 0) : zero_set(n) {}
};

enum class ContradictionKind { FullGraphConnected, PicGeneratingComponent, P1FactorSubgraph };

std::string contradiction_kind_name(ContradictionKind k);

struct Contradiction {
  ContradictionKind kind;
  std::vector<std::size_t> vertices;  // the connected vertex set
  std::optional<std::array<std::size_t, 2>> fiber;
  std::optional<std::array<Integer, 4>> fiber_projection;
  bool relies_on_pic_generation = false;
};

ObstructionState initial_zeros(const Fan& fan);

// One application of the relation rule at the first pivot that yields new
// zero pairs. The state is not modified.
std::optional<step::RelationRule> relation_rule_step(const Fan& fan, const ObstructionState& state);

// Adds every pair implied by transitivity, recording each step.
bool close_transitively(ObstructionState& state);

// Fixpoint of the relation rule and transitivity.
ObstructionState saturate(const Fan& fan, ObstructionState state);

// Connected components of the graph on {0..n-1} with edges Z \ squares.
std::vector<std::vector<std::size_t>> zero_graph_components(const ZeroSet& z);

std::optional<Contradiction> contradiction_check(const Fan& fan, const ObstructionState& state);

// x_a + x_b + x_c + x_d = k x_e with k >= 1 and the rays adjacent to x_e
// exactly {a,b,c,d}.
struct ContractionWitness {
  std::array<std::size_t, 4> collection;
  std::size_t target;
  Integer multiplicity;
};

std::optional<ContractionWitness> contraction_criterion(const Fan& fan);

struct ChowStageResult {
  Codim2Basis basis;
  std::vector<step::ChowVanishing> forced;  // in the order derived
  std::vector<TraceStep> resaturation;      // finite steps interleaved, flattened
  // Functionals q_p in basis coordinates for every p in the final Z.
  std::vector<std::pair<IndexPair, RationalVector>> zero_functionals;
  RationalMatrix span;                        // basis of the subspace L cut out by Z
  std::vector<std::size_t> vanishing_coordinates;  // b with alpha_b = 0 on L
  // For each b: "coefficient" if alpha_b = 0 on L, "functional" if B_b . alpha = 0 on L, else "".
  std::vector<std::string> vanishing_reason;
  RationalMatrix gram;                        // B_b . B_c
  bool self_intersection_vanishes = false;
  std::optional<Contradiction> finite_contradiction;  // if re-saturation hit one
};

// Runs only the LP rounds and the final test; state is saturated on entry
// and updated in place.
ChowStageResult chow_class_stage(const Fan& fan, const IntersectionTable& table,
                                 ObstructionState& state,
                                 std::span<const IndexPair> basis_hint = {});

enum class Mode { FiniteMorphism, Embedding };
enum class Status { NoFiniteMorphism, NoEmbedding, Inconclusive };
enum class Rule { None, FullGraphConnected, PicGeneratingComponent, P1FactorSubgraph,
                  ContractionCriterion, ChowClassStage };

std::string mode_name(Mode m);
std::string status_name(Status s);
std::string rule_name(Rule r);

struct CertifyOptions {
  std::vector<IndexPair> basis_hint;
};

struct Verdict {
  std::string fan_name;
  Mode mode = Mode::FiniteMorphism;
  Status status = Status::Inconclusive;
  Rule rule = Rule::None;
  ObstructionState state;
  std::optional<Contradiction> contradiction;
  std::optional<ContractionWitness> contraction;
  std::shared_ptr<const IntersectionTable> table;  // set when the Chow stage ran
  std::optional<ChowStageResult> chow;
  std::vector<Integer> ample;  // projectivity witness

  // "NoFiniteMorphism (FullGraphConnected)", "Inconclusive", ...
  std::string summary() const;
};

// Throws InvalidFan unless the fan is smooth, complete and projective.
Verdict certify(const Fan& fan, Mode mode, const CertifyOptions& options = {});

}  // namespace abeltoric
