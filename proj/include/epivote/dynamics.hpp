#pragma once

#include <optional>
#include <string>
#include <vector>

#include "epivote/eval.hpp"
#include "epivote/manipulation.hpp"

namespace epivote {

/// A public announcement applied as a model transformation (as opposed to
/// the boxed operator inside formulas, which is a material conditional).
struct AnnounceResult {
    ProfileModel model;
    int point;
    EvalContext ctx;
    std::vector<std::string> surviving; // original state names, in order
};

/// Restrict the model to the states where the formula holds. The formula
/// must be true at the point; otherwise there is nothing to announce and
/// this raises AnnouncementError.
AnnounceResult announce(const ProfileModel& model, int point, const EvalContext& ctx,
                        const Formula& formula);
inline AnnounceResult announce(const ProfileModel& model, int point,
                               const EvalContext& ctx, const FormulaPtr& formula) {
    return announce(model, point, ctx, *formula);
}

/// Public assignment of declared-vote atoms; a thin alias over the shared
/// simultaneous-update primitive.
EvalContext assign(const ProfileModel& model, const EvalContext& ctx,
                   const std::vector<AssignItem>& items);

/// The batch declaring a concrete ballot: every pair of the ballot set to
/// true.
std::vector<AssignItem> declare_vote_batch(int voter, const Vote& ballot);

/// The batch declaring the truthful vote: x >>_i y := x >_i y for every
/// ordered pair, so each state picks up its own truthful ballot.
std::vector<AssignItem> declare_truthful_batch(int voter, int candidate_count);

/// The winner of the declared profile at a state, if every voter's declared
/// pairs form a complete linear order; nullopt otherwise.
std::optional<int> declared_winner(const ProfileModel& model, const EvalContext& ctx,
                                   int state);

/// Knowledge of manipulation before and after an announcement.
struct PreservationReport {
    ManipulationReport before;
    ManipulationReport after;
    FormulaPtr announced;
    std::vector<std::string> surviving;
};

PreservationReport preservation_experiment(const ProfileModel& model, int point,
                                           const EvalContext& ctx, int voter,
                                           FormulaPtr formula);

/// Trace lines for the update log consumed by the REPL transcript.
std::string announce_trace(const Formula& formula, const CandidateSet& candidates,
                           const std::vector<std::string>& surviving);
std::string assign_trace(const std::vector<AssignItem>& items,
                         const CandidateSet& candidates);

} // namespace epivote
