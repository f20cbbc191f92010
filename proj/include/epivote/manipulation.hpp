#pragma once

#include <string>
#include <vector>

#include "epivote/eval.hpp"
#include "epivote/formula.hpp"
#include "epivote/model.hpp"

namespace epivote {

// Defining formulas enumerate all (m!)^n profiles; this bounds the node
// count of the generated tree.
inline constexpr long long kDefaultFormulaNodeBudget = 40'000'000;

/// The five notions of (knowledge of) manipulation at a point, with the
/// witnessing ballots for the two de-re notions.
struct ManipulationReport {
    bool actual = false;
    bool considers_possible = false;
    bool de_dicto = false;
    bool de_re = false;
    bool de_re_weak = false;
    std::vector<Vote> de_re_witnesses;      // lexicographic
    std::vector<Vote> de_re_weak_witnesses; // lexicographic

    bool operator==(const ManipulationReport&) const = default;
};

/// Classify a voter's knowledge of manipulation at the model's point,
/// literally by quantifying over her equivalence class. Voters are not
/// assumed to know their own vote.
ManipulationReport classify(const ProfileModel& model, int point, int voter,
                            const VotingRule& rule, const TieBreak& tiebreak,
                            int max_candidates = kDefaultBallotEnumerationCap);

enum class ManipulationNotion { actual, de_dicto, de_re, de_re_weak };

/// The defining formula of a notion: a disjunction over explicit profile
/// descriptions with outcome-preference atoms carrying the voting function.
/// Rule and tie-break are part of the atom semantics, not of the tree, so
/// the same formula checks any rule; they are accepted here to size-check
/// the enumeration they imply.
FormulaPtr defining_formula(ManipulationNotion notion, int voter,
                            const VotingRule& rule, const TieBreak& tiebreak,
                            int voters, int candidate_count,
                            long long node_budget = kDefaultFormulaNodeBudget);

/// True iff, for every notion, evaluating the defining formula at the point
/// agrees with the direct classifier.
bool formulas_agree(const ProfileModel& model, int point, const EvalContext& ctx,
                    int voter, long long node_budget = kDefaultFormulaNodeBudget);

/// Flag-per-line serialization, then the two witness sets as ballots.
std::string report_to_string(const ManipulationReport& report,
                             const CandidateSet& candidates);

} // namespace epivote
