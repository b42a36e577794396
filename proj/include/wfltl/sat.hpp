#pragma once

#include "wfltl/cnf.hpp"

#include <bit>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace wfltl::sat {

enum class Result { Sat, Unsat };

struct SolverStats {
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t restarts = 0;
};

/// Conflict-driven clause learning solver: two watched literals, VSIDS,
/// first-UIP learning with clause minimization, phase saving, Luby restarts
/// and activity-based learnt clause deletion.
///
/// Clauses may be added between calls to solve(). With seed 0 the search is
/// fully deterministic; other seeds perturb initial activities and phases.
class Solver {
public:
  explicit Solver(std::uint64_t seed = 0);

  std::int32_t new_var();
  std::int32_t num_vars() const noexcept { return static_cast<std::int32_t>(assigns_.size()); }

  /// Returns false once the clause set is known to be unsatisfiable.
  bool add_clause(std::span<const Lit> clause);
  bool add_clause(std::initializer_list<Lit> clause) {
    return add_clause(std::span<const Lit>(clause.begin(), clause.size()));
  }
  void add(const CnfInstance &cnf);

  Result solve();

  /// Model of the last Sat answer; index 0 unused.
  const std::vector<bool> &model() const noexcept { return model_; }
  bool model_value(Lit l) const { return (l > 0) == model_[static_cast<std::size_t>(l > 0 ? l : -l)]; }

  const SolverStats &stats() const noexcept { return stats_; }

private:
  using CRef = std::uint32_t;
  static constexpr CRef kNoRef = 0xffffffffu;
  using ILit = std::uint32_t; // 2 * var + sign, var 0-based

  struct Watcher {
    CRef cref;
    ILit blocker;
  };

  // Arena layout: [size, flags, activity-bits, lits...]
  static constexpr std::uint32_t kLearnt = 1u, kDeleted = 2u;

  std::uint32_t clause_size(CRef c) const { return arena_[c]; }
  ILit *clause_lits(CRef c) { return &arena_[c + 3]; }
  bool clause_learnt(CRef c) const { return arena_[c + 1] & kLearnt; }
  bool clause_deleted(CRef c) const { return arena_[c + 1] & kDeleted; }
  float clause_activity(CRef c) const { return std::bit_cast<float>(arena_[c + 2]); }
  void set_clause_activity(CRef c, float a) { arena_[c + 2] = std::bit_cast<std::uint32_t>(a); }

  static ILit to_ilit(Lit l) {
    return l > 0 ? 2u * static_cast<ILit>(l - 1) : 2u * static_cast<ILit>(-l - 1) + 1u;
  }
  static std::uint32_t var_of(ILit l) { return l >> 1; }
  static ILit neg(ILit l) { return l ^ 1u; }
  // 0 = false, 1 = true, 2 = unassigned
  std::uint8_t value(ILit l) const {
    const std::uint8_t a = assigns_[var_of(l)];
    return a == 2 ? 2 : static_cast<std::uint8_t>(a ^ (l & 1u));
  }

  CRef alloc_clause(const std::vector<ILit> &lits, bool learnt);
  void attach(CRef c);
  bool locked(CRef c);
  void enqueue(ILit l, CRef reason);
  CRef propagate();
  void analyze(CRef conflict, std::vector<ILit> &learnt, std::uint32_t &backtrack_level);
  bool redundant(ILit l);
  void cancel_until(std::uint32_t level);
  std::uint32_t decision_level() const { return static_cast<std::uint32_t>(trail_lim_.size()); }
  ILit pick_branch();
  void bump_var(std::uint32_t v);
  void bump_clause(CRef c);
  void reduce_learnts();
  void collect_garbage();
  Result search(std::uint64_t conflict_budget);
  void simplify_level0();

  // heap of unassigned variables ordered by activity
  void heap_insert(std::uint32_t v);
  void heap_up(std::size_t i);
  void heap_down(std::size_t i);
  std::uint32_t heap_pop();
  bool heap_less(std::uint32_t a, std::uint32_t b) const { return activity_[a] > activity_[b]; }

  std::vector<std::uint32_t> arena_;
  std::size_t wasted_ = 0;
  std::vector<CRef> clauses_;
  std::vector<CRef> learnts_;
  std::vector<std::vector<Watcher>> watches_;

  std::vector<std::uint8_t> assigns_;
  std::vector<std::uint8_t> phase_;
  std::vector<std::uint32_t> level_;
  std::vector<CRef> reason_;
  std::vector<ILit> trail_;
  std::vector<std::uint32_t> trail_lim_;
  std::size_t qhead_ = 0;

  std::vector<double> activity_;
  double var_inc_ = 1.0;
  double var_decay_ = 0.95;
  float clause_inc_ = 1.0f;
  float clause_decay_ = 0.999f;
  std::vector<std::uint32_t> heap_;
  std::vector<std::int64_t> heap_index_; // -1 when absent

  std::vector<std::uint8_t> seen_;
  std::vector<ILit> analyze_stack_;
  std::vector<ILit> to_clear_;

  double max_learnts_ = 0;
  bool ok_ = true;
  std::uint64_t seed_;
  std::mt19937_64 rng_;
  std::vector<bool> model_;
  SolverStats stats_;
};

/// One-shot convenience: model (index 0 unused) when satisfiable.
std::optional<std::vector<bool>> solve(const CnfInstance &cnf, std::uint64_t seed = 0);

} // namespace wfltl::sat
