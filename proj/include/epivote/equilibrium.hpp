#pragma once

#include <string>
#include <vector>

#include "epivote/model.hpp"

namespace epivote {

inline constexpr long long kDefaultEquilibriumSearchCap = 1'000'000;

/// A voter's equivalence classes in canonical order: sorted by their
/// lexicographically least state name.
std::vector<std::vector<int>> sorted_classes(const ProfileModel& model, int voter);

/// One ballot per equivalence class per voter; the strategy objects of the
/// conditional voting game. ballots[i-1][k] is voter i's ballot at her k-th
/// class in sorted_classes order.
struct ConditionalProfile {
    std::vector<std::vector<Vote>> ballots;

    auto operator<=>(const ConditionalProfile&) const = default;
};

/// The winner at a state when every voter casts the ballot her conditional
/// vote assigns to her class of that state.
int outcome_at(const ProfileModel& model, const ConditionalProfile& cp, int state,
               const VotingRule& rule, const TieBreak& tiebreak);

/// The winners of the induced play at every state, in state order.
std::vector<int> outcome_vector(const ProfileModel& model, const ConditionalProfile& cp,
                                const VotingRule& rule, const TieBreak& tiebreak);

/// The risk-averse value of a class for a voter: the worst outcome over the
/// class, judged by her truthful vote there. PreconditionError if her
/// truthful vote varies over the class.
int maximin_value(const ProfileModel& model, const ConditionalProfile& cp, int voter,
                  int class_index, const VotingRule& rule, const TieBreak& tiebreak);

/// True iff replacing the voter's ballot at this class alone can strictly
/// raise her maximin value.
bool has_local_improvement(const ProfileModel& model, const ConditionalProfile& cp,
                           int voter, int class_index, const VotingRule& rule,
                           const TieBreak& tiebreak,
                           int max_candidates = kDefaultBallotEnumerationCap);

/// No voter has a class-local improvement anywhere. PreconditionError
/// unless every voter knows her truthful vote on each of her classes.
bool is_conditional_equilibrium(const ProfileModel& model, const ConditionalProfile& cp,
                                const VotingRule& rule, const TieBreak& tiebreak,
                                int max_candidates = kDefaultBallotEnumerationCap);

/// Exhaustive equilibrium search over the conditional strategy grid. With
/// `reduce_ballots` and plurality, ballots are quotiented by top candidate
/// (outcome-equivalent representatives).
std::vector<ConditionalProfile> enumerate_equilibria(
    const ProfileModel& model, const VotingRule& rule, const TieBreak& tiebreak,
    bool reduce_ballots, long long max_combinations = kDefaultEquilibriumSearchCap);

/// The whole conditional strategy grid, in the same deterministic order the
/// equilibrium search visits it.
std::vector<ConditionalProfile> enumerate_all_conditional_profiles(
    const ProfileModel& model, const VotingRule& rule, bool reduce_ballots,
    long long max_combinations = kDefaultEquilibriumSearchCap);

/// The conditional game as a matrix for two-voter models: rows are voter
/// 1's conditional ballots, columns voter 2's.
struct GameMatrix {
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    std::vector<std::vector<std::string>> cells;
};

/// Cells list the per-state outcomes in state order; voters who cannot tell
/// some states apart get their per-class worst outcomes appended. With
/// `payoffs`, cells hold each voter's per-class ranking payoff instead.
GameMatrix game_matrix(const ProfileModel& model, const VotingRule& rule,
                       const TieBreak& tiebreak, bool payoffs = false,
                       long long max_combinations = kDefaultEquilibriumSearchCap);

std::string to_tsv(const GameMatrix& matrix);

/// The cell text of one conditional profile (shared by the matrix and the
/// flat listing used for more than two voters).
std::string cell_string(const ProfileModel& model, const ConditionalProfile& cp,
                        const VotingRule& rule, const TieBreak& tiebreak,
                        bool payoffs);

/// Ballot label for one voter's conditional vote: top candidates
/// concatenated when reduced, full ballots joined by commas otherwise.
std::string conditional_vote_label(const ProfileModel& model,
                                   const std::vector<Vote>& ballots, bool reduced);

} // namespace epivote
