#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "epivote/voting.hpp"

namespace epivote {

inline constexpr int kDefaultExpansionStateCap = 10000;

/// A partition of {0..n-1}. The stored representation keeps the
/// equivalence-relation invariants true by construction: blocks are
/// disjoint, cover every element, and are sorted for deterministic output.
class Partition {
  public:
    Partition(int element_count, std::vector<std::vector<int>> blocks);

    static Partition identity(int element_count);
    static Partition single_block(int element_count);

    int elements() const { return static_cast<int>(block_of_.size()); }
    int block_count() const { return static_cast<int>(blocks_.size()); }
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }
    int block_index_of(int element) const;
    const std::vector<int>& block_of(int element) const;
    bool same_block(int a, int b) const;

    /// The induced partition on a subset of elements. `surviving` holds old
    /// indices in ascending order; positions in it become the new indices.
    Partition restricted_to(const std::vector<int>& surviving) const;

    /// True iff every block of this partition lies inside a block of
    /// `coarser`.
    bool refines(const Partition& coarser) const;

    bool operator==(const Partition&) const = default;

  private:
    std::vector<std::vector<int>> blocks_;
    std::vector<int> block_of_;
};

/// A profile model: states, a per-voter indistinguishability partition, and
/// a valuation assigning a profile to every state. Immutable once built.
class ProfileModel {
  public:
    ProfileModel(CandidateSet candidates, int voters,
                 std::vector<std::string> state_names, std::vector<Profile> valuation,
                 std::vector<Partition> partitions);

    const CandidateSet& candidates() const { return candidates_; }
    int voters() const { return voters_; }
    int state_count() const { return static_cast<int>(state_names_.size()); }
    const std::vector<std::string>& state_names() const { return state_names_; }
    const std::string& state_name(int state) const;
    int state_index(std::string_view name) const; // DomainError if unknown
    const Profile& profile_at(int state) const;
    const Partition& partition(int voter) const; // voter in 1..n

    /// The model induced on a subset of states (ascending old indices).
    ProfileModel restricted_to(const std::vector<int>& surviving) const;

    bool operator==(const ProfileModel&) const = default;

  private:
    CandidateSet candidates_;
    int voters_;
    std::vector<std::string> state_names_;
    std::vector<Profile> valuation_;
    std::vector<Partition> partitions_;
};

/// A pointed profile model.
struct KnowledgeProfile {
    ProfileModel model;
    int point;
};

/// The block of `voter`'s partition containing `state`.
const std::vector<int>& eq_class(const ProfileModel& model, int voter, int state);

enum class GroupMode { common, distributed };

/// Common knowledge: transitive closure of the union of the group's
/// relations. Distributed knowledge: their blockwise intersection.
Partition group_partition(const ProfileModel& model, const std::vector<int>& group,
                          GroupMode mode);

/// The chair (agent 0) cannot tell any two states apart.
Partition chair_partition(const ProfileModel& model);

/// True iff `voter`'s own vote is constant on each of her blocks.
bool knows_own_vote(const ProfileModel& model, int voter);

/// Strict per-voter constraints over candidates; the model of a partial
/// profile is the set of profiles completing it.
struct PartialOrderSpec {
    CandidateSet candidates;
    int voters;
    /// Per voter, pairs (x, y) meaning x must precede y.
    std::vector<std::vector<std::pair<int, int>>> constraints;
};

/// One state per tuple of linear extensions, voters with identity access.
/// State names encode the completion tuple.
ProfileModel expand_partial_profile(const PartialOrderSpec& spec,
                                    int max_states = kDefaultExpansionStateCap);

/// All linear extensions of a strict partial order, lexicographic by
/// candidate index. DomainError on a cyclic constraint set.
std::vector<Vote> linear_extensions(int candidate_count,
                                    const std::vector<std::pair<int, int>>& constraints,
                                    int max_extensions = kDefaultExpansionStateCap);

/// The induced preference relation on states: s before t iff `ref` strictly
/// prefers the winner at s to the winner at t. Pairs are sorted.
std::vector<std::pair<int, int>> induced_preference(const ProfileModel& model,
                                                    const VotingRule& rule,
                                                    const TieBreak& tiebreak,
                                                    const Vote& ref);

/// Convenience: the reference vote defaults to `voter`'s vote at `state`.
std::vector<std::pair<int, int>> induced_preference(const ProfileModel& model,
                                                    const VotingRule& rule,
                                                    const TieBreak& tiebreak, int voter,
                                                    int state);

enum class WinnerMode { possible, necessary };
enum class WinnerBasis { winner, cowinner };

/// Possible/necessary (co)winners over the chair's relation, in candidate
/// declaration order.
std::vector<int> possible_necessary_winners(const ProfileModel& model,
                                            const VotingRule& rule,
                                            const TieBreak& tiebreak, WinnerMode mode,
                                            WinnerBasis basis);

} // namespace epivote
