#include "doctest.h"

#include <random>

#include "epivote/manipulation.hpp"
#include "epivote/scenario.hpp"
#include "fixtures.hpp"

using namespace epivote;
using namespace epivote::testing;

TEST_CASE("the Borda example is de dicto but not de re") {
    Scenario s = example("ex2");
    ManipulationReport report = classify(s.model, s.point, 1, s.rule, s.tiebreak);
    CHECK(report.actual);
    CHECK(report.considers_possible);
    CHECK(report.de_dicto);
    CHECK_FALSE(report.de_re);
    CHECK(report.de_re_witnesses.empty());

    // cabd succeeds at s, cdba at t; neither works at both.
    CandidateSet cs = abcd();
    CHECK(successful_manipulation(s.rule, s.tiebreak, s.model.profile_at(0), 1,
                                  vote_of(cs, "cabd")));
    CHECK(successful_manipulation(s.rule, s.tiebreak, s.model.profile_at(1), 1,
                                  vote_of(cs, "cdba")));
    CHECK_FALSE(successful_manipulation(s.rule, s.tiebreak, s.model.profile_at(1), 1,
                                        vote_of(cs, "cabd")));

    // Voters 2 and 3 tell the states apart; their class is a singleton, so
    // every notion collapses to plain manipulability.
    for (int voter : {2, 3}) {
        ManipulationReport r = classify(s.model, s.point, voter, s.rule, s.tiebreak);
        CHECK(r.actual == r.de_dicto);
        CHECK(r.actual == r.de_re);
        CHECK(r.actual == r.considers_possible);
        CHECK(r.actual == r.de_re_weak);
    }
}

TEST_CASE("implication chain over random models") {
    std::mt19937 rng(61);
    for (int round = 0; round < 150; ++round) {
        int voters = 1 + static_cast<int>(rng() % 3);
        ProfileModel model = random_model(rng, voters, 3, 4);
        VotingRule rule = random_rule(rng, 3);
        TieBreak tb = random_tiebreak(rng, 3);
        int point = static_cast<int>(rng() % model.state_count());
        int voter = 1 + static_cast<int>(rng() % voters);
        ManipulationReport r = classify(model, point, voter, rule, tb);
        if (r.de_re)
            CHECK(r.de_dicto);
        if (r.de_dicto)
            CHECK(r.considers_possible);
        if (r.actual)
            CHECK(r.considers_possible);
        if (r.de_re)
            CHECK(r.de_re_weak);
        // Every de re witness never worsens and strictly improves somewhere,
        // so it is also a weak witness.
        for (const Vote& w : r.de_re_witnesses)
            CHECK(std::find(r.de_re_weak_witnesses.begin(), r.de_re_weak_witnesses.end(),
                            w) != r.de_re_weak_witnesses.end());

        // Singleton class: everything collapses to actual.
        if (eq_class(model, voter, point).size() == 1) {
            CHECK(r.actual == r.de_dicto);
            CHECK(r.actual == r.de_re);
            CHECK(r.actual == r.de_re_weak);
        }
    }
}

TEST_CASE("classify enforces the ballot enumeration cap") {
    std::vector<std::string> names;
    for (int c = 0; c < 7; ++c)
        names.emplace_back(1, static_cast<char>('a' + c));
    CandidateSet cs(names);
    std::vector<int> ranking(7);
    for (int c = 0; c < 7; ++c)
        ranking[static_cast<size_t>(c)] = c;
    ProfileModel model(cs, 1, {"w"}, {Profile({Vote(ranking)})},
                       {Partition::identity(1)});
    CHECK_THROWS_AS(classify(model, 0, 1, VotingRule::plurality(7),
                             TieBreak{Vote(ranking)}),
                    ResourceError);
}

TEST_CASE("a dictator has no successful manipulation") {
    // Strictness: with one voter and a strict-top rule the truthful outcome
    // is already the best reachable one.
    std::mt19937 rng(67);
    for (int round = 0; round < 50; ++round) {
        ProfileModel model = random_model(rng, 1, 3, 3);
        TieBreak tb = random_tiebreak(rng, 3);
        for (const VotingRule& rule :
             {VotingRule::plurality(3), VotingRule::borda(3)}) {
            int point = static_cast<int>(rng() % model.state_count());
            ManipulationReport r = classify(model, point, 1, rule, tb);
            CHECK_FALSE(r.actual);
            CHECK_FALSE(r.de_re_weak);
        }
    }
}

TEST_CASE("defining formulas agree with the classifier on the Borda example") {
    Scenario s = example("ex2");
    EvalContext ctx = s.fresh_context();
    FormulaPtr de_dicto =
        defining_formula(ManipulationNotion::de_dicto, 1, s.rule, s.tiebreak, 3, 4);
    CHECK(eval_formula(s.model, s.point, ctx, de_dicto));
    FormulaPtr de_re =
        defining_formula(ManipulationNotion::de_re, 1, s.rule, s.tiebreak, 3, 4);
    CHECK_FALSE(eval_formula(s.model, s.point, ctx, de_re));
    CHECK(formulas_agree(s.model, s.point, ctx, 1));
}

TEST_CASE("defining formulas agree on singleton and random models") {
    Scenario single = example("ex7");
    EvalContext ctx = single.fresh_context();
    CHECK(formulas_agree(single.model, single.point, ctx, 1));

    std::mt19937 rng(71);
    for (int round = 0; round < 60; ++round) {
        int voters = 1 + static_cast<int>(rng() % 3);
        ProfileModel model = random_model(rng, voters, 3, 4);
        EvalContext random_ctx =
            EvalContext::fresh(random_rule(rng, 3), random_tiebreak(rng, 3),
                               model.state_count(), voters);
        int point = static_cast<int>(rng() % model.state_count());
        int voter = 1 + static_cast<int>(rng() % voters);
        CAPTURE(round);
        CHECK(formulas_agree(model, point, random_ctx, voter));
    }
}

TEST_CASE("a single voter over two candidates can never manipulate") {
    // The actual-manipulation formula for n=1, m=2 is unsatisfiable: there
    // are only two ballots and the truthful one already wins.
    CandidateSet cs({"a", "b"});
    VotingRule rule = VotingRule::plurality(2);
    FormulaPtr actual = defining_formula(ManipulationNotion::actual, 1, rule,
                                         TieBreak{Vote({0, 1})}, 1, 2);
    for (const Vote& tb_order : all_votes(2)) {
        for (const Vote& v : all_votes(2)) {
            ProfileModel model(cs, 1, {"w"}, {Profile({v})}, {Partition::identity(1)});
            EvalContext ctx = EvalContext::fresh(rule, TieBreak{tb_order}, 1, 1);
            CHECK_FALSE(eval_formula(model, 0, ctx, actual));
        }
    }
}

TEST_CASE("the formula generator refuses absurd enumerations") {
    CandidateSet cs = abcd();
    CHECK_THROWS_AS(defining_formula(ManipulationNotion::de_re_weak, 1,
                                     VotingRule::borda(5),
                                     TieBreak{all_votes(5).front()}, 3, 5),
                    ResourceError);
}

TEST_CASE("report serialization is stable") {
    Scenario s = example("ex2");
    ManipulationReport report = classify(s.model, s.point, 1, s.rule, s.tiebreak);
    std::string text = report_to_string(report, s.candidates());
    CHECK(text == "actual=true\n"
                  "considers_possible=true\n"
                  "de_dicto=true\n"
                  "de_re=false\n"
                  "de_re_weak=false\n"
                  "de_re_witnesses=\n"
                  "de_re_weak_witnesses=\n");
}
