#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "epivote/errors.hpp"

namespace epivote {

// Candidates beyond this many make m! ballot enumerations unreasonable.
inline constexpr int kDefaultBallotEnumerationCap = 6;

/// The candidate roster of one election. Candidates are addressed by their
/// declaration index everywhere; names only matter at the I/O boundary.
class CandidateSet {
  public:
    explicit CandidateSet(std::vector<std::string> names);

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int index) const;
    int index_of(std::string_view name) const; // DomainError if unknown
    bool contains(std::string_view name) const;

    bool operator==(const CandidateSet&) const = default;

  private:
    std::vector<std::string> names_;
};

/// One voter's strict total ranking, most preferred candidate first.
class Vote {
  public:
    explicit Vote(std::vector<int> ranking);

    static Vote from_names(const CandidateSet& candidates,
                           const std::vector<std::string>& names);

    int size() const { return static_cast<int>(ranking_.size()); }
    const std::vector<int>& ranking() const { return ranking_; }
    int at(int position) const { return ranking_.at(position); }
    int top() const { return ranking_.front(); }

    /// 0-based position of a candidate in this ranking.
    int rank_of(int candidate) const;

    bool prefers(int x, int y) const;

    std::string to_string(const CandidateSet& candidates,
                          std::string_view separator = ">") const;

    auto operator<=>(const Vote& other) const { return ranking_ <=> other.ranking_; }
    bool operator==(const Vote& other) const { return ranking_ == other.ranking_; }

  private:
    std::vector<int> ranking_;
    std::vector<int> rank_of_;
};

/// All m! ballots over m candidates in lexicographic (declaration-index)
/// order. Guarded: this is the one combinatorial explosion every search in
/// the package shares.
std::vector<Vote> all_votes(int candidate_count,
                            int max_candidates = kDefaultBallotEnumerationCap);

/// One vote per voter. Voters are addressed 1..n, as in formulas.
class Profile {
  public:
    explicit Profile(std::vector<Vote> votes);

    int voters() const { return static_cast<int>(votes_.size()); }
    int candidates() const { return votes_.front().size(); }
    const Vote& vote(int voter) const; // voter in 1..n

    /// The profile with `voter`'s vote replaced.
    Profile with_vote(int voter, Vote replacement) const;

    auto operator<=>(const Profile& other) const = default;

  private:
    std::vector<Vote> votes_;
};

/// Exogenous tie-breaking order: the most preferred tied cowinner wins.
struct TieBreak {
    Vote order;
};

/// A positional scoring rule. Plurality and Borda are the two named members
/// of the family.
class VotingRule {
  public:
    static VotingRule plurality(int candidate_count);
    static VotingRule borda(int candidate_count);
    static VotingRule positional(std::vector<int> scores);

    const std::vector<int>& scores() const { return scores_; }
    int candidates() const { return static_cast<int>(scores_.size()); }
    bool is_plurality() const;
    bool is_borda() const;

    bool operator==(const VotingRule&) const = default;

  private:
    explicit VotingRule(std::vector<int> scores) : scores_(std::move(scores)) {}
    std::vector<int> scores_;
};

/// Per-candidate score sums, in declaration order.
std::vector<int> positional_scores(const VotingRule& rule, const Profile& profile);

/// All candidates with maximal score, in declaration order. Never empty.
std::vector<int> cowinners(const VotingRule& rule, const Profile& profile);

/// The tie-break-maximal cowinner.
int winner(const VotingRule& rule, const TieBreak& tiebreak, const Profile& profile);

/// True iff casting `alternative` instead of the truthful ballot gives
/// `voter` a strictly better outcome, judged by the truthful ballot.
bool successful_manipulation(const VotingRule& rule, const TieBreak& tiebreak,
                             const Profile& truthful, int voter,
                             const Vote& alternative);

/// Every ballot that is a successful manipulation for `voter`, in
/// lexicographic order.
std::vector<Vote> find_manipulations(const VotingRule& rule, const TieBreak& tiebreak,
                                     const Profile& truthful, int voter,
                                     int max_candidates = kDefaultBallotEnumerationCap);

/// Nash-style equilibrium test: no voter can improve the declared outcome,
/// improvements judged against the truthful profile.
bool is_equilibrium(const VotingRule& rule, const TieBreak& tiebreak,
                    const Profile& truthful, const Profile& declared,
                    int max_candidates = kDefaultBallotEnumerationCap);

/// Ranking payoff of an outcome: top candidate of `vote` scores m-1, the
/// bottom one 0.
int rank_payoff(const Vote& vote, int candidate);

} // namespace epivote
