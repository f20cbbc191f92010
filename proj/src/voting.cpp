#include "epivote/voting.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace epivote {

CandidateSet::CandidateSet(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty())
        throw DomainError("an election needs at least one candidate");
    std::unordered_set<std::string_view> seen;
    for (const auto& name : names_) {
        if (name.empty())
            throw DomainError("empty candidate name");
        if (!seen.insert(name).second)
            throw DomainError("duplicate candidate name: " + name);
    }
}

const std::string& CandidateSet::name(int index) const {
    if (index < 0 || index >= size())
        throw DomainError("candidate index out of range: " + std::to_string(index));
    return names_[static_cast<size_t>(index)];
}

int CandidateSet::index_of(std::string_view name) const {
    for (int i = 0; i < size(); ++i)
        if (names_[static_cast<size_t>(i)] == name)
            return i;
    throw DomainError("unknown candidate: " + std::string(name));
}

bool CandidateSet::contains(std::string_view name) const {
    return std::any_of(names_.begin(), names_.end(),
                       [&](const std::string& n) { return n == name; });
}

Vote::Vote(std::vector<int> ranking) : ranking_(std::move(ranking)) {
    if (ranking_.empty())
        throw DomainError("a vote must rank at least one candidate");
    rank_of_.assign(ranking_.size(), -1);
    for (size_t pos = 0; pos < ranking_.size(); ++pos) {
        int c = ranking_[pos];
        if (c < 0 || c >= static_cast<int>(ranking_.size()))
            throw DomainError("vote mentions candidate index out of range");
        if (rank_of_[static_cast<size_t>(c)] != -1)
            throw DomainError("vote ranks a candidate twice");
        rank_of_[static_cast<size_t>(c)] = static_cast<int>(pos);
    }
}

Vote Vote::from_names(const CandidateSet& candidates,
                      const std::vector<std::string>& names) {
    if (static_cast<int>(names.size()) != candidates.size())
        throw DomainError("vote must rank every candidate exactly once");
    std::vector<int> ranking;
    ranking.reserve(names.size());
    for (const auto& name : names)
        ranking.push_back(candidates.index_of(name));
    return Vote(std::move(ranking));
}

int Vote::rank_of(int candidate) const {
    if (candidate < 0 || candidate >= size())
        throw DomainError("unknown candidate index: " + std::to_string(candidate));
    return rank_of_[static_cast<size_t>(candidate)];
}

bool Vote::prefers(int x, int y) const {
    return rank_of(x) < rank_of(y);
}

std::string Vote::to_string(const CandidateSet& candidates,
                            std::string_view separator) const {
    std::string out;
    for (size_t i = 0; i < ranking_.size(); ++i) {
        if (i > 0)
            out += separator;
        out += candidates.name(ranking_[i]);
    }
    return out;
}

std::vector<Vote> all_votes(int candidate_count, int max_candidates) {
    if (candidate_count > max_candidates)
        throw ResourceError("ballot enumeration over " + std::to_string(candidate_count) +
                            " candidates exceeds the cap of " +
                            std::to_string(max_candidates));
    std::vector<int> perm(static_cast<size_t>(candidate_count));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<Vote> out;
    do {
        out.emplace_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

Profile::Profile(std::vector<Vote> votes) : votes_(std::move(votes)) {
    if (votes_.empty())
        throw DomainError("a profile needs at least one voter");
    for (const auto& v : votes_)
        if (v.size() != votes_.front().size())
            throw DomainError("all votes in a profile must rank the same candidates");
}

const Vote& Profile::vote(int voter) const {
    if (voter < 1 || voter > voters())
        throw DomainError("unknown voter: " + std::to_string(voter));
    return votes_[static_cast<size_t>(voter - 1)];
}

Profile Profile::with_vote(int voter, Vote replacement) const {
    if (voter < 1 || voter > voters())
        throw DomainError("unknown voter: " + std::to_string(voter));
    if (replacement.size() != candidates())
        throw DomainError("replacement vote ranks the wrong candidate set");
    std::vector<Vote> copy = votes_;
    copy[static_cast<size_t>(voter - 1)] = std::move(replacement);
    return Profile(std::move(copy));
}

VotingRule VotingRule::plurality(int candidate_count) {
    std::vector<int> scores(static_cast<size_t>(candidate_count), 0);
    scores.at(0) = 1;
    return VotingRule(std::move(scores));
}

VotingRule VotingRule::borda(int candidate_count) {
    std::vector<int> scores;
    for (int s = candidate_count - 1; s >= 0; --s)
        scores.push_back(s);
    return VotingRule(std::move(scores));
}

VotingRule VotingRule::positional(std::vector<int> scores) {
    if (scores.empty())
        throw DomainError("a positional rule needs a score for every candidate");
    for (size_t i = 1; i < scores.size(); ++i)
        if (scores[i] > scores[i - 1])
            throw DomainError("positional scores must be non-increasing");
    return VotingRule(std::move(scores));
}

bool VotingRule::is_plurality() const {
    return *this == plurality(candidates());
}

bool VotingRule::is_borda() const {
    return *this == borda(candidates());
}

std::vector<int> positional_scores(const VotingRule& rule, const Profile& profile) {
    if (rule.candidates() != profile.candidates())
        throw DomainError("rule and profile disagree on the candidate count");
    std::vector<int> sums(static_cast<size_t>(profile.candidates()), 0);
    for (int i = 1; i <= profile.voters(); ++i) {
        const Vote& v = profile.vote(i);
        for (int c = 0; c < profile.candidates(); ++c)
            sums[static_cast<size_t>(c)] += rule.scores()[static_cast<size_t>(v.rank_of(c))];
    }
    return sums;
}

std::vector<int> cowinners(const VotingRule& rule, const Profile& profile) {
    std::vector<int> sums = positional_scores(rule, profile);
    int best = *std::max_element(sums.begin(), sums.end());
    std::vector<int> out;
    for (int c = 0; c < profile.candidates(); ++c)
        if (sums[static_cast<size_t>(c)] == best)
            out.push_back(c);
    return out;
}

int winner(const VotingRule& rule, const TieBreak& tiebreak, const Profile& profile) {
    std::vector<int> tied = cowinners(rule, profile);
    int best = tied.front();
    for (int c : tied)
        if (tiebreak.order.prefers(c, best))
            best = c;
    return best;
}

bool successful_manipulation(const VotingRule& rule, const TieBreak& tiebreak,
                             const Profile& truthful, int voter,
                             const Vote& alternative) {
    const Vote& truth = truthful.vote(voter);
    int honest = winner(rule, tiebreak, truthful);
    int manipulated = winner(rule, tiebreak, truthful.with_vote(voter, alternative));
    return truth.prefers(manipulated, honest);
}

std::vector<Vote> find_manipulations(const VotingRule& rule, const TieBreak& tiebreak,
                                     const Profile& truthful, int voter,
                                     int max_candidates) {
    std::vector<Vote> out;
    for (const Vote& v : all_votes(truthful.candidates(), max_candidates))
        if (successful_manipulation(rule, tiebreak, truthful, voter, v))
            out.push_back(v);
    return out;
}

bool is_equilibrium(const VotingRule& rule, const TieBreak& tiebreak,
                    const Profile& truthful, const Profile& declared,
                    int max_candidates) {
    if (truthful.voters() != declared.voters() ||
        truthful.candidates() != declared.candidates())
        throw DomainError("truthful and declared profiles have different shape");
    int current = winner(rule, tiebreak, declared);
    for (int i = 1; i <= truthful.voters(); ++i) {
        const Vote& truth = truthful.vote(i);
        for (const Vote& v : all_votes(truthful.candidates(), max_candidates)) {
            int deviated = winner(rule, tiebreak, declared.with_vote(i, v));
            if (truth.prefers(deviated, current))
                return false;
        }
    }
    return true;
}

int rank_payoff(const Vote& vote, int candidate) {
    return vote.size() - 1 - vote.rank_of(candidate);
}

} // namespace epivote
