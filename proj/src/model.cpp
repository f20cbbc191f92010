#include "epivote/model.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace epivote {

Partition::Partition(int element_count, std::vector<std::vector<int>> blocks)
    : blocks_(std::move(blocks)) {
    block_of_.assign(static_cast<size_t>(element_count), -1);
    for (auto& block : blocks_) {
        if (block.empty())
            throw DomainError("partition blocks must be nonempty");
        std::sort(block.begin(), block.end());
        for (int e : block) {
            if (e < 0 || e >= element_count)
                throw DomainError("partition mentions an element out of range");
            if (block_of_[static_cast<size_t>(e)] != -1)
                throw DomainError("partition blocks overlap");
            block_of_[static_cast<size_t>(e)] = 0; // provisional
        }
    }
    for (int e = 0; e < element_count; ++e)
        if (block_of_[static_cast<size_t>(e)] == -1)
            throw DomainError("partition does not cover every element");
    std::sort(blocks_.begin(), blocks_.end());
    for (size_t b = 0; b < blocks_.size(); ++b)
        for (int e : blocks_[b])
            block_of_[static_cast<size_t>(e)] = static_cast<int>(b);
}

Partition Partition::identity(int element_count) {
    std::vector<std::vector<int>> blocks;
    for (int e = 0; e < element_count; ++e)
        blocks.push_back({e});
    return Partition(element_count, std::move(blocks));
}

Partition Partition::single_block(int element_count) {
    std::vector<int> all(static_cast<size_t>(element_count));
    std::iota(all.begin(), all.end(), 0);
    return Partition(element_count, {all});
}

int Partition::block_index_of(int element) const {
    if (element < 0 || element >= elements())
        throw DomainError("element out of range");
    return block_of_[static_cast<size_t>(element)];
}

const std::vector<int>& Partition::block_of(int element) const {
    return blocks_[static_cast<size_t>(block_index_of(element))];
}

bool Partition::same_block(int a, int b) const {
    return block_index_of(a) == block_index_of(b);
}

Partition Partition::restricted_to(const std::vector<int>& surviving) const {
    std::vector<int> new_index(static_cast<size_t>(elements()), -1);
    for (size_t pos = 0; pos < surviving.size(); ++pos)
        new_index[static_cast<size_t>(surviving[pos])] = static_cast<int>(pos);
    std::vector<std::vector<int>> blocks;
    for (const auto& block : blocks_) {
        std::vector<int> kept;
        for (int e : block)
            if (new_index[static_cast<size_t>(e)] != -1)
                kept.push_back(new_index[static_cast<size_t>(e)]);
        if (!kept.empty())
            blocks.push_back(std::move(kept));
    }
    return Partition(static_cast<int>(surviving.size()), std::move(blocks));
}

bool Partition::refines(const Partition& coarser) const {
    if (elements() != coarser.elements())
        return false;
    for (const auto& block : blocks_) {
        for (int e : block)
            if (!coarser.same_block(block.front(), e))
                return false;
    }
    return true;
}

ProfileModel::ProfileModel(CandidateSet candidates, int voters,
                           std::vector<std::string> state_names,
                           std::vector<Profile> valuation,
                           std::vector<Partition> partitions)
    : candidates_(std::move(candidates)),
      voters_(voters),
      state_names_(std::move(state_names)),
      valuation_(std::move(valuation)),
      partitions_(std::move(partitions)) {
    if (voters_ < 1)
        throw DomainError("a model needs at least one voter");
    if (state_names_.empty())
        throw DomainError("a model needs at least one state");
    if (valuation_.size() != state_names_.size())
        throw DomainError("valuation must assign a profile to every state");
    std::set<std::string> seen;
    for (const auto& name : state_names_)
        if (!seen.insert(name).second)
            throw DomainError("duplicate state name: " + name);
    for (const auto& profile : valuation_) {
        if (profile.voters() != voters_)
            throw DomainError("profile voter count does not match the model");
        if (profile.candidates() != candidates_.size())
            throw DomainError("profile candidate count does not match the model");
    }
    if (static_cast<int>(partitions_.size()) != voters_)
        throw DomainError("one partition per voter is required");
    for (const auto& partition : partitions_)
        if (partition.elements() != state_count())
            throw DomainError("partition does not range over the model's states");
}

const std::string& ProfileModel::state_name(int state) const {
    if (state < 0 || state >= state_count())
        throw DomainError("state index out of range");
    return state_names_[static_cast<size_t>(state)];
}

int ProfileModel::state_index(std::string_view name) const {
    for (int s = 0; s < state_count(); ++s)
        if (state_names_[static_cast<size_t>(s)] == name)
            return s;
    throw DomainError("unknown state: " + std::string(name));
}

const Profile& ProfileModel::profile_at(int state) const {
    if (state < 0 || state >= state_count())
        throw DomainError("state index out of range");
    return valuation_[static_cast<size_t>(state)];
}

const Partition& ProfileModel::partition(int voter) const {
    if (voter < 1 || voter > voters_)
        throw DomainError("unknown voter: " + std::to_string(voter));
    return partitions_[static_cast<size_t>(voter - 1)];
}

ProfileModel ProfileModel::restricted_to(const std::vector<int>& surviving) const {
    if (surviving.empty())
        throw DomainError("cannot restrict a model to no states");
    std::vector<std::string> names;
    std::vector<Profile> profiles;
    for (int s : surviving) {
        names.push_back(state_name(s));
        profiles.push_back(profile_at(s));
    }
    std::vector<Partition> partitions;
    for (const auto& partition : partitions_)
        partitions.push_back(partition.restricted_to(surviving));
    return ProfileModel(candidates_, voters_, std::move(names), std::move(profiles),
                        std::move(partitions));
}

const std::vector<int>& eq_class(const ProfileModel& model, int voter, int state) {
    return model.partition(voter).block_of(state);
}

Partition group_partition(const ProfileModel& model, const std::vector<int>& group,
                          GroupMode mode) {
    if (group.empty())
        throw DomainError("group knowledge needs a nonempty group");
    for (int i : group)
        model.partition(i); // validates the voter
    int n = model.state_count();
    if (mode == GroupMode::common) {
        // Union-find over the union of the members' relations.
        std::vector<int> parent(static_cast<size_t>(n));
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[static_cast<size_t>(x)] != x)
                x = parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            return x;
        };
        for (int i : group)
            for (const auto& block : model.partition(i).blocks())
                for (int e : block)
                    parent[static_cast<size_t>(find(e))] = find(block.front());
        std::map<int, std::vector<int>> groups;
        for (int s = 0; s < n; ++s)
            groups[find(s)].push_back(s);
        std::vector<std::vector<int>> blocks;
        for (auto& [root, members] : groups)
            blocks.push_back(std::move(members));
        return Partition(n, std::move(blocks));
    }
    // Distributed: states are together iff together for every member.
    std::map<std::vector<int>, std::vector<int>> groups;
    for (int s = 0; s < n; ++s) {
        std::vector<int> key;
        for (int i : group)
            key.push_back(model.partition(i).block_index_of(s));
        groups[key].push_back(s);
    }
    std::vector<std::vector<int>> blocks;
    for (auto& [key, members] : groups)
        blocks.push_back(std::move(members));
    return Partition(n, std::move(blocks));
}

Partition chair_partition(const ProfileModel& model) {
    return Partition::single_block(model.state_count());
}

bool knows_own_vote(const ProfileModel& model, int voter) {
    for (const auto& block : model.partition(voter).blocks()) {
        const Vote& first = model.profile_at(block.front()).vote(voter);
        for (int s : block)
            if (!(model.profile_at(s).vote(voter) == first))
                return false;
    }
    return true;
}

std::vector<Vote> linear_extensions(int candidate_count,
                                    const std::vector<std::pair<int, int>>& constraints,
                                    int max_extensions) {
    std::vector<std::vector<bool>> before(
        static_cast<size_t>(candidate_count),
        std::vector<bool>(static_cast<size_t>(candidate_count), false));
    for (auto [x, y] : constraints) {
        if (x < 0 || x >= candidate_count || y < 0 || y >= candidate_count)
            throw DomainError("partial-order constraint mentions an unknown candidate");
        if (x == y)
            throw DomainError("partial-order constraint relates a candidate to itself");
        before[static_cast<size_t>(x)][static_cast<size_t>(y)] = true;
    }
    // Transitive closure; a cycle shows up as x before x.
    for (int k = 0; k < candidate_count; ++k)
        for (int i = 0; i < candidate_count; ++i)
            for (int j = 0; j < candidate_count; ++j)
                if (before[static_cast<size_t>(i)][static_cast<size_t>(k)] &&
                    before[static_cast<size_t>(k)][static_cast<size_t>(j)])
                    before[static_cast<size_t>(i)][static_cast<size_t>(j)] = true;
    for (int i = 0; i < candidate_count; ++i)
        if (before[static_cast<size_t>(i)][static_cast<size_t>(i)])
            throw DomainError("partial-order constraints are cyclic");

    std::vector<Vote> out;
    std::vector<int> prefix;
    std::vector<bool> used(static_cast<size_t>(candidate_count), false);
    auto extend = [&](auto&& self) -> void {
        if (static_cast<int>(prefix.size()) == candidate_count) {
            if (static_cast<int>(out.size()) >= max_extensions)
                throw ResourceError("linear-extension count exceeds the cap of " +
                                    std::to_string(max_extensions));
            out.emplace_back(prefix);
            return;
        }
        for (int c = 0; c < candidate_count; ++c) {
            if (used[static_cast<size_t>(c)])
                continue;
            bool ready = true;
            for (int p = 0; p < candidate_count && ready; ++p)
                if (!used[static_cast<size_t>(p)] &&
                    before[static_cast<size_t>(p)][static_cast<size_t>(c)])
                    ready = false;
            if (!ready)
                continue;
            used[static_cast<size_t>(c)] = true;
            prefix.push_back(c);
            self(self);
            prefix.pop_back();
            used[static_cast<size_t>(c)] = false;
        }
    };
    extend(extend);
    return out;
}

namespace {

std::string completion_state_name(const CandidateSet& candidates,
                                  const std::vector<const Vote*>& tuple) {
    bool single_char = true;
    for (int c = 0; c < candidates.size(); ++c)
        if (candidates.name(c).size() != 1)
            single_char = false;
    std::string name;
    for (size_t i = 0; i < tuple.size(); ++i) {
        if (i > 0)
            name += '_';
        name += tuple[i]->to_string(candidates, single_char ? "" : "-");
    }
    return name;
}

} // namespace

ProfileModel expand_partial_profile(const PartialOrderSpec& spec, int max_states) {
    if (spec.voters < 1)
        throw DomainError("a partial profile needs at least one voter");
    if (static_cast<int>(spec.constraints.size()) != spec.voters)
        throw DomainError("one constraint set per voter is required");

    std::vector<std::vector<Vote>> per_voter;
    long long total = 1;
    for (const auto& constraints : spec.constraints) {
        per_voter.push_back(
            linear_extensions(spec.candidates.size(), constraints, max_states));
        total *= static_cast<long long>(per_voter.back().size());
        if (total > max_states)
            throw ResourceError("partial-profile expansion exceeds the cap of " +
                                std::to_string(max_states) + " states");
    }

    std::vector<std::string> names;
    std::vector<Profile> profiles;
    std::vector<const Vote*> tuple(static_cast<size_t>(spec.voters));
    std::vector<size_t> cursor(static_cast<size_t>(spec.voters), 0);
    for (long long k = 0; k < total; ++k) {
        std::vector<Vote> votes;
        for (int i = 0; i < spec.voters; ++i) {
            tuple[static_cast<size_t>(i)] = &per_voter[static_cast<size_t>(i)][cursor[static_cast<size_t>(i)]];
            votes.push_back(*tuple[static_cast<size_t>(i)]);
        }
        names.push_back(completion_state_name(spec.candidates, tuple));
        profiles.emplace_back(std::move(votes));
        // Odometer over the completion tuples, last voter fastest.
        for (int i = spec.voters - 1; i >= 0; --i) {
            if (++cursor[static_cast<size_t>(i)] < per_voter[static_cast<size_t>(i)].size())
                break;
            cursor[static_cast<size_t>(i)] = 0;
        }
    }

    std::vector<Partition> partitions(static_cast<size_t>(spec.voters),
                                      Partition::identity(static_cast<int>(names.size())));
    return ProfileModel(spec.candidates, spec.voters, std::move(names),
                        std::move(profiles), std::move(partitions));
}

std::vector<std::pair<int, int>> induced_preference(const ProfileModel& model,
                                                    const VotingRule& rule,
                                                    const TieBreak& tiebreak,
                                                    const Vote& ref) {
    if (ref.size() != model.candidates().size())
        throw DomainError("reference vote ranks the wrong candidate set");
    std::vector<int> winners;
    for (int s = 0; s < model.state_count(); ++s)
        winners.push_back(winner(rule, tiebreak, model.profile_at(s)));
    std::vector<std::pair<int, int>> out;
    for (int s = 0; s < model.state_count(); ++s)
        for (int t = 0; t < model.state_count(); ++t)
            if (ref.prefers(winners[static_cast<size_t>(s)], winners[static_cast<size_t>(t)]))
                out.emplace_back(s, t);
    return out;
}

std::vector<std::pair<int, int>> induced_preference(const ProfileModel& model,
                                                    const VotingRule& rule,
                                                    const TieBreak& tiebreak, int voter,
                                                    int state) {
    return induced_preference(model, rule, tiebreak,
                              model.profile_at(state).vote(voter));
}

std::vector<int> possible_necessary_winners(const ProfileModel& model,
                                            const VotingRule& rule,
                                            const TieBreak& tiebreak, WinnerMode mode,
                                            WinnerBasis basis) {
    int m = model.candidates().size();
    std::vector<bool> in_some(static_cast<size_t>(m), false);
    std::vector<bool> in_every(static_cast<size_t>(m), true);
    for (int s = 0; s < model.state_count(); ++s) {
        std::vector<bool> here(static_cast<size_t>(m), false);
        if (basis == WinnerBasis::winner) {
            here[static_cast<size_t>(winner(rule, tiebreak, model.profile_at(s)))] = true;
        } else {
            for (int c : cowinners(rule, model.profile_at(s)))
                here[static_cast<size_t>(c)] = true;
        }
        for (int c = 0; c < m; ++c) {
            if (here[static_cast<size_t>(c)])
                in_some[static_cast<size_t>(c)] = true;
            else
                in_every[static_cast<size_t>(c)] = false;
        }
    }
    std::vector<int> out;
    if (basis == WinnerBasis::winner && mode == WinnerMode::necessary) {
        // The winner function has a necessary value only when it is constant.
        std::vector<int> image;
        for (int c = 0; c < m; ++c)
            if (in_some[static_cast<size_t>(c)])
                image.push_back(c);
        return image.size() == 1 ? image : std::vector<int>{};
    }
    for (int c = 0; c < m; ++c) {
        bool keep = mode == WinnerMode::possible ? in_some[static_cast<size_t>(c)]
                                                 : in_every[static_cast<size_t>(c)];
        if (keep)
            out.push_back(c);
    }
    return out;
}

} // namespace epivote
