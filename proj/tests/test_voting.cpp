#include "doctest.h"

#include <numeric>
#include <random>

#include "epivote/voting.hpp"
#include "fixtures.hpp"

using namespace epivote;
using namespace epivote::testing;

namespace {

// The worked Borda profiles: three voters over a, b, c, d.
Profile borda_profile_p(const CandidateSet& cs) {
    return profile_of(cs, {"cbad", "dacb", "bdca"});
}

Profile borda_profile_p2(const CandidateSet& cs) {
    return profile_of(cs, {"cbad", "dacb", "bacd"});
}

} // namespace

TEST_CASE("prefers reads a strict total order") {
    CandidateSet cs = abcd();
    Vote v = vote_of(cs, "cbad");
    CHECK(v.prefers(cs.index_of("c"), cs.index_of("b")));
    CHECK_FALSE(v.prefers(cs.index_of("d"), cs.index_of("a")));
    for (int x = 0; x < cs.size(); ++x)
        CHECK_FALSE(v.prefers(x, x));
    CHECK_THROWS_AS(v.prefers(7, 0), DomainError);
}

TEST_CASE("exactly one direction holds for distinct candidates") {
    std::mt19937 rng(7);
    for (const Vote& v : all_votes(4)) {
        for (int x = 0; x < 4; ++x)
            for (int y = 0; y < 4; ++y)
                if (x != y)
                    CHECK(v.prefers(x, y) != v.prefers(y, x));
    }
    (void)rng;
}

TEST_CASE("vote construction rejects non-permutations") {
    CHECK_THROWS_AS(Vote({0, 0, 1}), DomainError);
    CHECK_THROWS_AS(Vote({0, 3}), DomainError);
    CandidateSet cs = abcd();
    CHECK_THROWS_AS(vote_of(cs, "abc"), DomainError);
    CHECK_THROWS_AS(vote_of(cs, "abca"), DomainError);
}

TEST_CASE("Borda scores on the worked profiles") {
    CandidateSet cs = abcd();
    VotingRule borda = VotingRule::borda(4);
    CHECK(positional_scores(borda, borda_profile_p(cs)) ==
          std::vector<int>{3, 5, 5, 5});
    CHECK(positional_scores(borda, borda_profile_p2(cs)) ==
          std::vector<int>{5, 5, 5, 3});

    // One voter hands out m-1 .. 0 in her own order.
    Profile solo = profile_of(cs, {"cbad"});
    std::vector<int> scores = positional_scores(borda, solo);
    CHECK(scores[cs.index_of("c")] == 3);
    CHECK(scores[cs.index_of("b")] == 2);
    CHECK(scores[cs.index_of("a")] == 1);
    CHECK(scores[cs.index_of("d")] == 0);
}

TEST_CASE("score total is n times the score sum") {
    std::mt19937 rng(11);
    std::vector<Vote> ballots = all_votes(4);
    std::uniform_int_distribution<size_t> dist(0, ballots.size() - 1);
    for (int round = 0; round < 50; ++round) {
        std::vector<Vote> votes;
        int n = 1 + static_cast<int>(rng() % 4);
        for (int i = 0; i < n; ++i)
            votes.push_back(ballots[dist(rng)]);
        Profile p(votes);
        for (const VotingRule& rule :
             {VotingRule::borda(4), VotingRule::plurality(4),
              VotingRule::positional({2, 1, 1, 0})}) {
            std::vector<int> scores = positional_scores(rule, p);
            int total = std::accumulate(scores.begin(), scores.end(), 0);
            int per_voter =
                std::accumulate(rule.scores().begin(), rule.scores().end(), 0);
            CHECK(total == n * per_voter);
        }
    }
}

TEST_CASE("cowinners on the worked profiles") {
    CandidateSet cs = abcd();
    VotingRule borda = VotingRule::borda(4);
    CHECK(cowinners(borda, borda_profile_p(cs)) ==
          std::vector<int>{cs.index_of("b"), cs.index_of("c"), cs.index_of("d")});
    Profile q = borda_profile_p(cs).with_vote(1, vote_of(cs, "cabd"));
    CHECK(cowinners(borda, q) == std::vector<int>{cs.index_of("c"), cs.index_of("d")});
    Profile unanimous = profile_of(cs, {"abcd", "abcd", "abcd"});
    CHECK(cowinners(borda, unanimous) == std::vector<int>{cs.index_of("a")});
}

TEST_CASE("winner applies the tie-break and stays a cowinner") {
    CandidateSet cs = abcd();
    VotingRule borda = VotingRule::borda(4);
    TieBreak tb{vote_of(cs, "bcda")};
    Profile p = borda_profile_p(cs);
    CHECK(winner(borda, tb, p) == cs.index_of("b"));

    Profile r = p.with_vote(1, vote_of(cs, "cdba"));
    CHECK(positional_scores(borda, r) == std::vector<int>{2, 4, 5, 7});
    CHECK(winner(borda, tb, r) == cs.index_of("d"));

    // Plurality with tops (a, d): the tie prefers a.
    VotingRule plurality = VotingRule::plurality(4);
    TieBreak tb2{vote_of(cs, "bacd")};
    Profile tops = profile_of(cs, {"acbd", "dcba"});
    CHECK(winner(plurality, tb2, tops) == cs.index_of("a"));

    std::mt19937 rng(3);
    std::vector<Vote> ballots = all_votes(4);
    std::uniform_int_distribution<size_t> dist(0, ballots.size() - 1);
    for (int round = 0; round < 100; ++round) {
        Profile random_p({ballots[dist(rng)], ballots[dist(rng)]});
        TieBreak random_tb{ballots[dist(rng)]};
        for (const VotingRule& rule : {borda, plurality}) {
            int w = winner(rule, random_tb, random_p);
            auto tied = cowinners(rule, random_p);
            CHECK(std::find(tied.begin(), tied.end(), w) != tied.end());
        }
    }
}

TEST_CASE("successful manipulation on the Borda example") {
    CandidateSet cs = abcd();
    VotingRule borda = VotingRule::borda(4);
    TieBreak tb{vote_of(cs, "bcda")};
    Profile p = borda_profile_p(cs);

    CHECK(successful_manipulation(borda, tb, p, 1, vote_of(cs, "cabd")));
    // The truthful ballot can never strictly improve.
    CHECK_FALSE(successful_manipulation(borda, tb, p, 1, vote_of(cs, "cbad")));
    // cdba elects d, voter 1's worst dream.
    CHECK_FALSE(successful_manipulation(borda, tb, p, 1, vote_of(cs, "cdba")));
}

TEST_CASE("find_manipulations is pointwise successful_manipulation") {
    CandidateSet cs = abcd();
    VotingRule borda = VotingRule::borda(4);
    TieBreak tb{vote_of(cs, "bcda")};
    Profile p = borda_profile_p(cs);
    Profile p2 = borda_profile_p2(cs);

    std::vector<Vote> manips = find_manipulations(borda, tb, p, 1);
    CHECK_FALSE(manips.empty());
    CHECK(std::find(manips.begin(), manips.end(), vote_of(cs, "cabd")) != manips.end());

    std::vector<Vote> manips2 = find_manipulations(borda, tb, p2, 1);
    CHECK(std::find(manips2.begin(), manips2.end(), vote_of(cs, "cdba")) !=
          manips2.end());

    Profile unanimous = profile_of(cs, {"abcd", "abcd", "abcd"});
    for (int i = 1; i <= 3; ++i)
        CHECK(find_manipulations(borda, tb, unanimous, i).empty());

    std::mt19937 rng(17);
    std::vector<Vote> ballots = all_votes(4);
    std::uniform_int_distribution<size_t> dist(0, ballots.size() - 1);
    for (int round = 0; round < 20; ++round) {
        Profile random_p({ballots[dist(rng)], ballots[dist(rng)], ballots[dist(rng)]});
        std::vector<Vote> found = find_manipulations(borda, tb, random_p, 2);
        for (const Vote& v : ballots) {
            bool in_found = std::find(found.begin(), found.end(), v) != found.end();
            CHECK(in_found == successful_manipulation(borda, tb, random_p, 2, v));
        }
    }
}

TEST_CASE("find_manipulations enforces the enumeration cap") {
    std::vector<std::string> names;
    for (int c = 0; c < 7; ++c)
        names.emplace_back(1, static_cast<char>('a' + c));
    CandidateSet cs(names);
    std::vector<int> ranking(7);
    std::iota(ranking.begin(), ranking.end(), 0);
    Profile p({Vote(ranking)});
    VotingRule rule = VotingRule::plurality(7);
    TieBreak tb{Vote(ranking)};
    CHECK_THROWS_AS(find_manipulations(rule, tb, p, 1), ResourceError);
}

TEST_CASE("plurality only sees ballot tops") {
    CandidateSet cs = abcd();
    VotingRule plurality = VotingRule::plurality(4);
    std::mt19937 rng(23);
    std::vector<Vote> ballots = all_votes(4);
    std::uniform_int_distribution<size_t> dist(0, ballots.size() - 1);
    for (int round = 0; round < 100; ++round) {
        Vote b1 = ballots[dist(rng)];
        Vote b2 = ballots[dist(rng)];
        if (b1.top() != b2.top())
            continue;
        Profile rest({ballots[dist(rng)], ballots[dist(rng)], ballots[dist(rng)]});
        TieBreak tb{ballots[dist(rng)]};
        CHECK(winner(plurality, tb, rest.with_vote(2, b1)) ==
              winner(plurality, tb, rest.with_vote(2, b2)));
    }
}

TEST_CASE("equilibrium profiles of the plurality game") {
    CandidateSet cs = abcd();
    VotingRule plurality = VotingRule::plurality(4);
    TieBreak tb{vote_of(cs, "badc")};
    Profile truthful = profile_of(cs, {"acbd", "dcba"});

    CHECK(is_equilibrium(plurality, tb, truthful, profile_of(cs, {"acbd", "bdca"})));
    CHECK_FALSE(is_equilibrium(plurality, tb, truthful, truthful));
    Profile unanimous = profile_of(cs, {"abcd", "abcd"});
    CHECK(is_equilibrium(plurality, tb, unanimous, unanimous));
}

TEST_CASE("rank payoffs follow the ranking") {
    CandidateSet cs = abcd();
    Vote one = vote_of(cs, "acbd");
    Vote two = vote_of(cs, "dcba");
    CHECK(rank_payoff(one, cs.index_of("a")) == 3);
    CHECK(rank_payoff(one, cs.index_of("d")) == 0);
    CHECK(rank_payoff(one, cs.index_of("c")) == 2);
    CHECK(rank_payoff(two, cs.index_of("c")) == 2);
    CHECK(rank_payoff(two, cs.index_of("a")) == 0);
}

TEST_CASE("rule helpers") {
    CHECK(VotingRule::plurality(4).scores() == std::vector<int>{1, 0, 0, 0});
    CHECK(VotingRule::borda(4).scores() == std::vector<int>{3, 2, 1, 0});
    CHECK(VotingRule::positional({1, 0, 0, 0}) == VotingRule::plurality(4));
    CHECK(VotingRule::positional({3, 2, 1, 0}) == VotingRule::borda(4));
    CHECK_THROWS_AS(VotingRule::positional({1, 2}), DomainError);
}
