#include "wfltl/sat.hpp"

#include "wfltl/error.hpp"

#include <algorithm>
#include <cmath>

namespace wfltl::sat {
namespace {

// Luby sequence 1 1 2 1 1 2 4 ... scaled by `y`.
double luby(double y, std::uint64_t x) {
  std::uint64_t size = 1, seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  return std::pow(y, static_cast<double>(seq));
}

constexpr std::uint8_t kFalse = 0, kTrue = 1, kUndef = 2;

} // namespace

Solver::Solver(std::uint64_t seed) : seed_(seed), rng_(seed) {}

std::int32_t Solver::new_var() {
  const auto v = static_cast<std::uint32_t>(assigns_.size());
  assigns_.push_back(kUndef);
  phase_.push_back(kFalse);
  level_.push_back(0);
  reason_.push_back(kNoRef);
  seen_.push_back(0);
  watches_.emplace_back();
  watches_.emplace_back();
  double act = 0.0;
  if (seed_ != 0) {
    // Small jitter breaks ties differently per seed.
    act = static_cast<double>(rng_() >> 11) * 0x1.0p-53 * 1e-5;
    phase_.back() = static_cast<std::uint8_t>(rng_() & 1u);
  }
  activity_.push_back(act);
  heap_index_.push_back(-1);
  heap_insert(v);
  return static_cast<std::int32_t>(v + 1);
}

void Solver::add(const CnfInstance &cnf) {
  while (num_vars() < cnf.num_vars)
    new_var();
  for (const auto &c : cnf.clauses)
    if (!add_clause(c))
      return;
}

Solver::CRef Solver::alloc_clause(const std::vector<ILit> &lits, bool learnt) {
  const auto c = static_cast<CRef>(arena_.size());
  arena_.push_back(static_cast<std::uint32_t>(lits.size()));
  arena_.push_back(learnt ? kLearnt : 0u);
  arena_.push_back(std::bit_cast<std::uint32_t>(0.0f));
  arena_.insert(arena_.end(), lits.begin(), lits.end());
  return c;
}

void Solver::attach(CRef c) {
  const ILit *lits = clause_lits(c);
  watches_[neg(lits[0])].push_back({c, lits[1]});
  watches_[neg(lits[1])].push_back({c, lits[0]});
}

bool Solver::add_clause(std::span<const Lit> clause) {
  if (!ok_)
    return false;
  if (decision_level() > 0)
    cancel_until(0);
  std::vector<ILit> lits;
  lits.reserve(clause.size());
  for (Lit l : clause) {
    if (l == 0)
      throw Error("literal 0 in clause");
    const auto v = static_cast<std::int32_t>(l > 0 ? l : -l);
    while (num_vars() < v)
      new_var();
    lits.push_back(to_ilit(l));
  }
  std::sort(lits.begin(), lits.end());
  std::vector<ILit> kept;
  ILit last = 0xffffffffu;
  for (ILit l : lits) {
    if (value(l) == kTrue || (last != 0xffffffffu && l == neg(last)))
      return true; // satisfied or tautology
    if (l != last && value(l) != kFalse)
      kept.push_back(l);
    last = l;
  }
  if (kept.empty()) {
    ok_ = false;
    return false;
  }
  if (kept.size() == 1) {
    enqueue(kept[0], kNoRef);
    if (propagate() != kNoRef)
      ok_ = false;
    return ok_;
  }
  const CRef c = alloc_clause(kept, false);
  clauses_.push_back(c);
  attach(c);
  return true;
}

void Solver::enqueue(ILit l, CRef reason) {
  const std::uint32_t v = var_of(l);
  assigns_[v] = static_cast<std::uint8_t>((l & 1u) ? kFalse : kTrue);
  level_[v] = decision_level();
  reason_[v] = reason;
  trail_.push_back(l);
}

Solver::CRef Solver::propagate() {
  CRef conflict = kNoRef;
  while (qhead_ < trail_.size()) {
    const ILit p = trail_[qhead_++];
    const ILit false_lit = neg(p);
    std::vector<Watcher> &ws = watches_[p];
    ++stats_.propagations;
    std::size_t i = 0, j = 0;
    const std::size_t n = ws.size();
    while (i < n) {
      const Watcher w = ws[i];
      if (value(w.blocker) == kTrue) {
        ws[j++] = ws[i++];
        continue;
      }
      const CRef c = w.cref;
      ILit *lits = clause_lits(c);
      if (lits[0] == false_lit)
        std::swap(lits[0], lits[1]);
      ++i;
      const ILit first = lits[0];
      if (first != w.blocker && value(first) == kTrue) {
        ws[j++] = {c, first};
        continue;
      }
      const std::uint32_t size = clause_size(c);
      bool moved = false;
      for (std::uint32_t k = 2; k < size; ++k) {
        if (value(lits[k]) != kFalse) {
          lits[1] = lits[k];
          lits[k] = false_lit;
          watches_[neg(lits[1])].push_back({c, first});
          moved = true;
          break;
        }
      }
      if (moved)
        continue;
      ws[j++] = {c, first};
      if (value(first) == kFalse) {
        conflict = c;
        qhead_ = trail_.size();
        while (i < n)
          ws[j++] = ws[i++];
      } else {
        enqueue(first, c);
      }
    }
    ws.resize(j);
    if (conflict != kNoRef)
      break;
  }
  return conflict;
}

void Solver::bump_var(std::uint32_t v) {
  if ((activity_[v] += var_inc_) > 1e100) {
    for (auto &a : activity_)
      a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_index_[v] >= 0)
    heap_up(static_cast<std::size_t>(heap_index_[v]));
}

void Solver::bump_clause(CRef c) {
  const float a = clause_activity(c) + clause_inc_;
  set_clause_activity(c, a);
  if (a > 1e20f) {
    for (CRef l : learnts_)
      set_clause_activity(l, clause_activity(l) * 1e-20f);
    clause_inc_ *= 1e-20f;
  }
}

// A literal is redundant if it is implied by literals already in the learnt
// clause (marked seen) or fixed at level 0.
bool Solver::redundant(ILit l) {
  analyze_stack_.clear();
  analyze_stack_.push_back(l);
  const std::size_t top = to_clear_.size();
  while (!analyze_stack_.empty()) {
    const ILit q = analyze_stack_.back();
    analyze_stack_.pop_back();
    const CRef r = reason_[var_of(q)];
    if (r == kNoRef) {
      for (std::size_t k = top; k < to_clear_.size(); ++k)
        seen_[var_of(to_clear_[k])] = 0;
      to_clear_.resize(top);
      return false;
    }
    const ILit *lits = clause_lits(r);
    const std::uint32_t size = clause_size(r);
    for (std::uint32_t k = 1; k < size; ++k) {
      const std::uint32_t v = var_of(lits[k]);
      if (!seen_[v] && level_[v] > 0) {
        if (reason_[v] == kNoRef) {
          for (std::size_t m = top; m < to_clear_.size(); ++m)
            seen_[var_of(to_clear_[m])] = 0;
          to_clear_.resize(top);
          return false;
        }
        seen_[v] = 1;
        analyze_stack_.push_back(lits[k]);
        to_clear_.push_back(lits[k]);
      }
    }
  }
  return true;
}

void Solver::analyze(CRef conflict, std::vector<ILit> &learnt, std::uint32_t &backtrack_level) {
  learnt.clear();
  learnt.push_back(0); // asserting literal goes here
  int path = 0;
  ILit p = 0;
  bool have_p = false;
  std::size_t index = trail_.size();
  CRef c = conflict;
  do {
    if (clause_learnt(c))
      bump_clause(c);
    const ILit *lits = clause_lits(c);
    const std::uint32_t size = clause_size(c);
    for (std::uint32_t k = have_p ? 1 : 0; k < size; ++k) {
      const ILit q = lits[k];
      const std::uint32_t v = var_of(q);
      if (!seen_[v] && level_[v] > 0) {
        bump_var(v);
        seen_[v] = 1;
        if (level_[v] >= decision_level())
          ++path;
        else
          learnt.push_back(q);
      }
    }
    while (!seen_[var_of(trail_[--index])]) {
    }
    p = trail_[index];
    have_p = true;
    c = reason_[var_of(p)];
    seen_[var_of(p)] = 0;
    --path;
  } while (path > 0);
  learnt[0] = neg(p);

  to_clear_.assign(learnt.begin(), learnt.end());
  std::size_t j = 1;
  for (std::size_t i = 1; i < learnt.size(); ++i)
    if (reason_[var_of(learnt[i])] == kNoRef || !redundant(learnt[i]))
      learnt[j++] = learnt[i];
  learnt.resize(j);

  backtrack_level = 0;
  if (learnt.size() > 1) {
    std::size_t max_i = 1;
    for (std::size_t i = 2; i < learnt.size(); ++i)
      if (level_[var_of(learnt[i])] > level_[var_of(learnt[max_i])])
        max_i = i;
    std::swap(learnt[1], learnt[max_i]);
    backtrack_level = level_[var_of(learnt[1])];
  }
  for (ILit l : to_clear_)
    seen_[var_of(l)] = 0;
  to_clear_.clear();
}

void Solver::cancel_until(std::uint32_t level) {
  if (decision_level() <= level)
    return;
  for (std::size_t i = trail_.size(); i-- > trail_lim_[level];) {
    const std::uint32_t v = var_of(trail_[i]);
    phase_[v] = assigns_[v];
    assigns_[v] = kUndef;
    reason_[v] = kNoRef;
    if (heap_index_[v] < 0)
      heap_insert(v);
  }
  trail_.resize(trail_lim_[level]);
  trail_lim_.resize(level);
  qhead_ = trail_.size();
}

Solver::ILit Solver::pick_branch() {
  while (!heap_.empty()) {
    const std::uint32_t v = heap_pop();
    if (assigns_[v] == kUndef)
      return 2u * v + (phase_[v] == kTrue ? 0u : 1u);
  }
  return 0xffffffffu;
}

bool Solver::locked(CRef c) {
  const ILit first = clause_lits(c)[0];
  return reason_[var_of(first)] == c && value(first) == kTrue;
}

void Solver::reduce_learnts() {
  std::sort(learnts_.begin(), learnts_.end(), [this](CRef a, CRef b) {
    const bool bin_a = clause_size(a) <= 2, bin_b = clause_size(b) <= 2;
    if (bin_a != bin_b)
      return bin_b;
    return clause_activity(a) < clause_activity(b);
  });
  const float extra = clause_inc_ / static_cast<float>(std::max<std::size_t>(learnts_.size(), 1));
  std::size_t j = 0;
  const std::size_t half = learnts_.size() / 2;
  for (std::size_t i = 0; i < learnts_.size(); ++i) {
    const CRef c = learnts_[i];
    if (clause_size(c) > 2 && !locked(c) && (i < half || clause_activity(c) < extra)) {
      arena_[c + 1] |= kDeleted;
      wasted_ += 3 + clause_size(c);
    } else {
      learnts_[j++] = c;
    }
  }
  learnts_.resize(j);
  for (auto &ws : watches_)
    ws.erase(std::remove_if(ws.begin(), ws.end(),
                            [this](const Watcher &w) { return clause_deleted(w.cref); }),
             ws.end());
  if (wasted_ * 5 > arena_.size())
    collect_garbage();
}

void Solver::collect_garbage() {
  std::vector<std::uint32_t> fresh;
  fresh.reserve(arena_.size() - wasted_);
  auto move = [&](CRef c) {
    if (arena_[c + 1] & 4u)
      return static_cast<CRef>(arena_[c + 2]); // already moved
    const auto n = static_cast<CRef>(fresh.size());
    fresh.insert(fresh.end(), arena_.begin() + c, arena_.begin() + c + 3 + arena_[c]);
    arena_[c + 1] |= 4u;
    arena_[c + 2] = n;
    return n;
  };
  // Reasons first so that moved clauses keep consistent references.
  for (auto &cs : {&clauses_, &learnts_})
    for (auto &c : *cs)
      c = move(c);
  for (std::size_t v = 0; v < reason_.size(); ++v)
    if (reason_[v] != kNoRef && assigns_[v] != kUndef) {
      const CRef r = reason_[v];
      reason_[v] = (arena_[r + 1] & 4u) ? static_cast<CRef>(arena_[r + 2]) : kNoRef;
    }
  for (auto &ws : watches_)
    for (auto &w : ws)
      w.cref = static_cast<CRef>(arena_[w.cref + 2]);
  arena_ = std::move(fresh);
  wasted_ = 0;
}

// Remove clauses satisfied at level 0.
void Solver::simplify_level0() {
  bool removed = false;
  for (auto *cs : {&clauses_, &learnts_}) {
    std::size_t j = 0;
    for (CRef c : *cs) {
      const ILit *lits = clause_lits(c);
      bool sat = false;
      for (std::uint32_t k = 0; k < clause_size(c); ++k)
        if (value(lits[k]) == kTrue) {
          sat = true;
          break;
        }
      if (sat && !locked(c)) {
        arena_[c + 1] |= kDeleted;
        wasted_ += 3 + clause_size(c);
        removed = true;
      } else {
        (*cs)[j++] = c;
      }
    }
    cs->resize(j);
  }
  if (!removed)
    return;
  for (auto &ws : watches_)
    ws.erase(std::remove_if(ws.begin(), ws.end(),
                            [this](const Watcher &w) { return clause_deleted(w.cref); }),
             ws.end());
  if (wasted_ * 5 > arena_.size())
    collect_garbage();
}

Result Solver::search(std::uint64_t conflict_budget) {
  std::uint64_t conflicts = 0;
  std::vector<ILit> learnt;
  while (true) {
    const CRef conflict = propagate();
    if (conflict != kNoRef) {
      ++stats_.conflicts;
      ++conflicts;
      if (decision_level() == 0) {
        ok_ = false;
        return Result::Unsat;
      }
      std::uint32_t bt = 0;
      analyze(conflict, learnt, bt);
      cancel_until(bt);
      if (learnt.size() == 1) {
        enqueue(learnt[0], kNoRef);
      } else {
        const CRef c = alloc_clause(learnt, true);
        learnts_.push_back(c);
        attach(c);
        bump_clause(c);
        enqueue(learnt[0], c);
      }
      var_inc_ /= var_decay_;
      clause_inc_ /= clause_decay_;
      continue;
    }
    if (conflicts >= conflict_budget) {
      cancel_until(0);
      return Result::Sat; // restart; solve() checks model_
    }
    if (decision_level() == 0)
      simplify_level0();
    if (static_cast<double>(learnts_.size()) - static_cast<double>(trail_.size()) >= max_learnts_)
      reduce_learnts();
    const ILit next = pick_branch();
    if (next == 0xffffffffu) {
      model_.assign(assigns_.size() + 1, false);
      for (std::size_t v = 0; v < assigns_.size(); ++v)
        model_[v + 1] = assigns_[v] == kTrue;
      return Result::Sat;
    }
    ++stats_.decisions;
    trail_lim_.push_back(static_cast<std::uint32_t>(trail_.size()));
    enqueue(next, kNoRef);
  }
}

Result Solver::solve() {
  model_.clear();
  if (!ok_)
    return Result::Unsat;
  max_learnts_ = std::max(static_cast<double>(clauses_.size()) / 3.0, 2000.0);
  for (std::uint64_t round = 0;; ++round) {
    const auto budget = static_cast<std::uint64_t>(luby(2.0, round) * 100.0);
    const Result r = search(budget);
    if (r == Result::Unsat)
      return Result::Unsat;
    if (!model_.empty()) {
      cancel_until(0);
      return Result::Sat;
    }
    ++stats_.restarts;
    max_learnts_ *= 1.05;
  }
}

// ---------------------------------------------------------------------------
// Variable heap

void Solver::heap_insert(std::uint32_t v) {
  heap_index_[v] = static_cast<std::int64_t>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_.size() - 1);
}

void Solver::heap_up(std::size_t i) {
  const std::uint32_t v = heap_[i];
  while (i > 0) {
    const std::size_t parent = (i - 1) / 2;
    if (!heap_less(v, heap_[parent]))
      break;
    heap_[i] = heap_[parent];
    heap_index_[heap_[i]] = static_cast<std::int64_t>(i);
    i = parent;
  }
  heap_[i] = v;
  heap_index_[v] = static_cast<std::int64_t>(i);
}

void Solver::heap_down(std::size_t i) {
  const std::uint32_t v = heap_[i];
  while (true) {
    std::size_t child = 2 * i + 1;
    if (child >= heap_.size())
      break;
    if (child + 1 < heap_.size() && heap_less(heap_[child + 1], heap_[child]))
      ++child;
    if (!heap_less(heap_[child], v))
      break;
    heap_[i] = heap_[child];
    heap_index_[heap_[i]] = static_cast<std::int64_t>(i);
    i = child;
  }
  heap_[i] = v;
  heap_index_[v] = static_cast<std::int64_t>(i);
}

std::uint32_t Solver::heap_pop() {
  const std::uint32_t top = heap_.front();
  heap_index_[top] = -1;
  heap_.front() = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_index_[heap_.front()] = 0;
    heap_down(0);
  }
  return top;
}

std::optional<std::vector<bool>> solve(const CnfInstance &cnf, std::uint64_t seed) {
  Solver s(seed);
  s.add(cnf);
  while (s.num_vars() < cnf.num_vars)
    s.new_var();
  if (s.solve() == Result::Unsat)
    return std::nullopt;
  auto model = s.model();
  model.resize(static_cast<std::size_t>(cnf.num_vars) + 1);
  return model;
}

} // namespace wfltl::sat
