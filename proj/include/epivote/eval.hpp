#pragma once

#include <set>
#include <utility>
#include <vector>

#include "epivote/formula.hpp"
#include "epivote/model.hpp"

namespace epivote {

/// Per state and voter, the set of declared-vote pairs currently true.
using DeclaredPairs = std::set<std::pair<int, int>>;
using DeclaredBallots = std::vector<std::vector<DeclaredPairs>>; // [state][voter-1]

/// Everything the semantics needs besides the model itself: the voting
/// rule, the tie-break, and the declared-vote valuation (all false until an
/// assignment runs).
struct EvalContext {
    VotingRule rule;
    TieBreak tiebreak;
    DeclaredBallots declared;

    static EvalContext fresh(VotingRule rule, TieBreak tiebreak, int state_count,
                             int voters);

    /// The context induced on a subset of states (ascending old indices).
    EvalContext restricted_to(const std::vector<int>& surviving) const;
};

/// Model checking at a point.
bool eval_formula(const ProfileModel& model, int point, const EvalContext& ctx,
                  const Formula& formula);
inline bool eval_formula(const ProfileModel& model, int point, const EvalContext& ctx,
                         const FormulaPtr& formula) {
    return eval_formula(model, point, ctx, *formula);
}

/// Truth at every state of the model.
bool valid_on_model(const ProfileModel& model, const EvalContext& ctx,
                    const Formula& formula);
inline bool valid_on_model(const ProfileModel& model, const EvalContext& ctx,
                           const FormulaPtr& formula) {
    return valid_on_model(model, ctx, *formula);
}

/// The declared valuation after a simultaneous batch of assignments; every
/// right-hand side is evaluated in the pre-update context.
EvalContext apply_assignment(const ProfileModel& model, const EvalContext& ctx,
                             const std::vector<AssignItem>& items);

} // namespace epivote
