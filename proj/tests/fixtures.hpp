#pragma once

#include <random>
#include <string>
#include <vector>

#include "epivote/eval.hpp"
#include "epivote/scenario.hpp"

namespace epivote::testing {

inline Scenario example(const std::string& name) {
    return load_scenario(bundled_example(name));
}

inline Vote vote_of(const CandidateSet& candidates, const std::string& letters) {
    std::vector<std::string> names;
    for (char c : letters)
        names.emplace_back(1, c);
    return Vote::from_names(candidates, names);
}

inline Profile profile_of(const CandidateSet& candidates,
                          const std::vector<std::string>& rankings) {
    std::vector<Vote> votes;
    for (const auto& letters : rankings)
        votes.push_back(vote_of(candidates, letters));
    return Profile(std::move(votes));
}

inline CandidateSet abcd() {
    return CandidateSet({"a", "b", "c", "d"});
}

inline CandidateSet abc() {
    return CandidateSet({"a", "b", "c"});
}

/// A random model over single-letter candidates, for property tests.
/// Partitions are random (each state joins an existing block or opens a new
/// one), profiles are uniform over ballots.
inline ProfileModel random_model(std::mt19937& rng, int voters, int candidates,
                                 int max_states) {
    CandidateSet cs = [&] {
        std::vector<std::string> names;
        for (int c = 0; c < candidates; ++c)
            names.emplace_back(1, static_cast<char>('a' + c));
        return CandidateSet(names);
    }();
    std::vector<Vote> ballots = all_votes(candidates);
    std::uniform_int_distribution<int> state_count_dist(1, max_states);
    int state_count = state_count_dist(rng);
    std::vector<std::string> names;
    std::vector<Profile> profiles;
    std::uniform_int_distribution<size_t> ballot_dist(0, ballots.size() - 1);
    for (int s = 0; s < state_count; ++s) {
        names.push_back("s" + std::to_string(s));
        std::vector<Vote> votes;
        for (int i = 0; i < voters; ++i)
            votes.push_back(ballots[ballot_dist(rng)]);
        profiles.emplace_back(std::move(votes));
    }
    std::vector<Partition> partitions;
    for (int i = 0; i < voters; ++i) {
        std::vector<std::vector<int>> blocks;
        for (int s = 0; s < state_count; ++s) {
            std::uniform_int_distribution<size_t> block_dist(0, blocks.size());
            size_t pick = block_dist(rng);
            if (pick == blocks.size())
                blocks.push_back({s});
            else
                blocks[pick].push_back(s);
        }
        partitions.emplace_back(state_count, std::move(blocks));
    }
    return ProfileModel(cs, voters, std::move(names), std::move(profiles),
                        std::move(partitions));
}

/// Like random_model, but every voter's own vote is constant on each of her
/// blocks, i.e. voters know their preference.
inline ProfileModel random_known_model(std::mt19937& rng, int voters, int candidates,
                                       int max_states) {
    ProfileModel base = random_model(rng, voters, candidates, max_states);
    std::vector<Vote> ballots = all_votes(candidates);
    std::uniform_int_distribution<size_t> ballot_dist(0, ballots.size() - 1);
    std::vector<std::vector<Vote>> votes(
        static_cast<size_t>(base.state_count()),
        std::vector<Vote>(static_cast<size_t>(voters), ballots.front()));
    for (int i = 1; i <= voters; ++i) {
        for (const auto& block : base.partition(i).blocks()) {
            Vote pick = ballots[ballot_dist(rng)];
            for (int s : block)
                votes[static_cast<size_t>(s)][static_cast<size_t>(i - 1)] = pick;
        }
    }
    std::vector<Profile> profiles;
    for (auto& per_state : votes)
        profiles.emplace_back(per_state);
    std::vector<Partition> partitions;
    for (int i = 1; i <= voters; ++i)
        partitions.push_back(base.partition(i));
    return ProfileModel(base.candidates(), voters, base.state_names(),
                        std::move(profiles), std::move(partitions));
}

inline VotingRule random_rule(std::mt19937& rng, int candidates) {
    return rng() % 2 == 0 ? VotingRule::plurality(candidates)
                          : VotingRule::borda(candidates);
}

inline TieBreak random_tiebreak(std::mt19937& rng, int candidates) {
    std::vector<Vote> ballots = all_votes(candidates);
    std::uniform_int_distribution<size_t> dist(0, ballots.size() - 1);
    return TieBreak{ballots[dist(rng)]};
}

/// A random formula of bounded depth over the context-free fragment of the
/// grammar (everything except the state-resolving sugar).
inline FormulaPtr random_formula(std::mt19937& rng, int candidates, int voters,
                                 int depth) {
    auto candidate = [&] { return static_cast<int>(rng() % candidates); };
    auto voter = [&] { return 1 + static_cast<int>(rng() % voters); };
    auto group = [&] {
        std::vector<int> g;
        for (int i = 1; i <= voters; ++i)
            if (rng() % 2 == 0)
                g.push_back(i);
        if (g.empty())
            g.push_back(voter());
        return g;
    };
    if (depth <= 0) {
        switch (rng() % 6) {
        case 0: return Formula::truth();
        case 1: return Formula::falsity();
        case 2: return Formula::win(candidate());
        case 3: {
            int x = candidate();
            int y = candidate();
            return Formula::decl(x, voter(), y == x ? (x + 1) % candidates : y);
        }
        default: return Formula::pref(candidate(), voter(), candidate());
        }
    }
    auto sub = [&] { return random_formula(rng, candidates, voters, depth - 1); };
    switch (rng() % 11) {
    case 0: return Formula::negate(sub());
    case 1: return Formula::conj(sub(), sub());
    case 2: return Formula::disj(sub(), sub());
    case 3: return Formula::implies(sub(), sub());
    case 4: return Formula::iff(sub(), sub());
    case 5: return Formula::know(voter(), sub());
    case 6: return Formula::common(group(), sub());
    case 7: return Formula::distributed(group(), sub());
    case 8: return Formula::announce(sub(), sub());
    case 9: {
        std::vector<AssignItem> items;
        size_t count = 1 + rng() % 2;
        for (size_t k = 0; k < count; ++k) {
            int x = candidate();
            int y = candidate();
            items.push_back({x, voter(), y == x ? (x + 1) % candidates : y, sub()});
        }
        return Formula::assign(std::move(items), sub());
    }
    default: return random_formula(rng, candidates, voters, 0);
    }
}

} // namespace epivote::testing
