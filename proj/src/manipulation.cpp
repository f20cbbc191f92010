#include "epivote/manipulation.hpp"

#include <algorithm>
#include <cmath>

namespace epivote {

ManipulationReport classify(const ProfileModel& model, int point, int voter,
                            const VotingRule& rule, const TieBreak& tiebreak,
                            int max_candidates) {
    if (point < 0 || point >= model.state_count())
        throw DomainError("point out of range");
    const std::vector<int>& cls = eq_class(model, voter, point);
    std::vector<Vote> ballots = all_votes(model.candidates().size(), max_candidates);

    // Per class state: the winner, the truthful vote, and which ballots
    // succeed there.
    std::vector<std::vector<bool>> succeeds(cls.size(),
                                            std::vector<bool>(ballots.size(), false));
    std::vector<std::vector<bool>> unchanged(cls.size(),
                                             std::vector<bool>(ballots.size(), false));
    std::vector<bool> any_success(cls.size(), false);
    size_t point_pos = 0;
    for (size_t k = 0; k < cls.size(); ++k) {
        int t = cls[k];
        if (t == point)
            point_pos = k;
        const Profile& profile = model.profile_at(t);
        const Vote& truth = profile.vote(voter);
        int honest = winner(rule, tiebreak, profile);
        for (size_t b = 0; b < ballots.size(); ++b) {
            int outcome = winner(rule, tiebreak, profile.with_vote(voter, ballots[b]));
            succeeds[k][b] = truth.prefers(outcome, honest);
            unchanged[k][b] = outcome == honest;
            if (succeeds[k][b])
                any_success[k] = true;
        }
    }

    ManipulationReport report;
    report.actual = any_success[point_pos];
    report.considers_possible = false;
    report.de_dicto = true;
    for (size_t k = 0; k < cls.size(); ++k) {
        report.considers_possible = report.considers_possible || any_success[k];
        report.de_dicto = report.de_dicto && any_success[k];
    }
    for (size_t b = 0; b < ballots.size(); ++b) {
        bool everywhere = true;
        bool never_worse = true;
        bool somewhere = false;
        for (size_t k = 0; k < cls.size(); ++k) {
            everywhere = everywhere && succeeds[k][b];
            never_worse = never_worse && (succeeds[k][b] || unchanged[k][b]);
            somewhere = somewhere || succeeds[k][b];
        }
        if (everywhere)
            report.de_re_witnesses.push_back(ballots[b]);
        if (never_worse && somewhere)
            report.de_re_weak_witnesses.push_back(ballots[b]);
    }
    report.de_re = !report.de_re_witnesses.empty();
    report.de_re_weak = !report.de_re_weak_witnesses.empty();
    return report;
}

namespace {

/// All (m!)^n profiles in lexicographic order, shared for embedding into
/// outcome atoms.
std::vector<std::shared_ptr<const Profile>> all_profiles(int voters, int candidates,
                                                         int max_candidates) {
    std::vector<Vote> ballots = all_votes(candidates, max_candidates);
    std::vector<std::shared_ptr<const Profile>> out;
    std::vector<size_t> cursor(static_cast<size_t>(voters), 0);
    while (true) {
        std::vector<Vote> votes;
        votes.reserve(static_cast<size_t>(voters));
        for (size_t i = 0; i < static_cast<size_t>(voters); ++i)
            votes.push_back(ballots[cursor[i]]);
        out.push_back(std::make_shared<Profile>(std::move(votes)));
        int i = voters - 1;
        for (; i >= 0; --i) {
            if (++cursor[static_cast<size_t>(i)] < ballots.size())
                break;
            cursor[static_cast<size_t>(i)] = 0;
        }
        if (i < 0)
            return out;
    }
}

double estimated_nodes(ManipulationNotion notion, int voters, int candidates) {
    double ballots = 1;
    for (int k = 2; k <= candidates; ++k)
        ballots *= k;
    double profiles = std::pow(ballots, voters);
    double desc = voters * candidates * (candidates - 1) * 2.0;
    double per_profile = desc + 2 * ballots + 8;
    double factor = notion == ManipulationNotion::actual ? 1.0 : ballots;
    return profiles * per_profile + profiles * factor * 8.0;
}

struct GeneratorPools {
    std::vector<std::shared_ptr<const Profile>> profiles;
    std::vector<FormulaPtr> descriptions;      // aligned with profiles
    // succ[p][b]: casting ballot b instead improves profile p for the voter.
    std::vector<std::vector<FormulaPtr>> succ; // outcome atoms
    std::vector<Vote> ballots;
};

GeneratorPools build_pools(int voter, int voters, int candidates,
                           int max_candidates) {
    GeneratorPools pools;
    pools.ballots = all_votes(candidates, max_candidates);
    pools.profiles = all_profiles(voters, candidates, max_candidates);
    pools.descriptions.reserve(pools.profiles.size());
    for (const auto& p : pools.profiles)
        pools.descriptions.push_back(profile_formula(*p));
    pools.succ.resize(pools.profiles.size());
    for (size_t p = 0; p < pools.profiles.size(); ++p) {
        pools.succ[p].reserve(pools.ballots.size());
        for (const Vote& ballot : pools.ballots) {
            auto deviated =
                std::make_shared<Profile>(pools.profiles[p]->with_vote(voter, ballot));
            pools.succ[p].push_back(
                Formula::outcome_pref(voter, std::move(deviated), pools.profiles[p]));
        }
    }
    return pools;
}

/// "Casting `ballot` leaves the outcome of profile p unchanged", phrased
/// with outcome atoms only. For two or more voters the two atoms of some
/// other voter j are judged by j's ballot, which the deviation does not
/// touch, so the pair is exact. With a single voter the two atoms are
/// judged by different ballots; for strict-top rules the approximation
/// still never changes the weak flag, because no single voter has a
/// successful manipulation there at all.
FormulaPtr unchanged_formula(const GeneratorPools& pools, size_t p, size_t b,
                             int voter, int voters) {
    int j = voters >= 2 ? (voter == 1 ? 2 : 1) : voter;
    auto deviated =
        std::make_shared<Profile>(pools.profiles[p]->with_vote(voter, pools.ballots[b]));
    FormulaPtr better = Formula::outcome_pref(j, deviated, pools.profiles[p]);
    FormulaPtr worse = Formula::outcome_pref(j, pools.profiles[p], deviated);
    return Formula::conj(Formula::negate(std::move(better)),
                         Formula::negate(std::move(worse)));
}

} // namespace

FormulaPtr defining_formula(ManipulationNotion notion, int voter,
                            const VotingRule& rule, const TieBreak& tiebreak,
                            int voters, int candidate_count, long long node_budget) {
    if (voter < 1 || voter > voters)
        throw DomainError("unknown voter: " + std::to_string(voter));
    if (rule.candidates() != candidate_count ||
        tiebreak.order.size() != candidate_count)
        throw DomainError("rule, tie-break and candidate count disagree");
    if (estimated_nodes(notion, voters, candidate_count) >
        static_cast<double>(node_budget))
        throw ResourceError("defining formula would exceed the node budget");

    GeneratorPools pools =
        build_pools(voter, voters, candidate_count, kDefaultBallotEnumerationCap);
    size_t profile_count = pools.profiles.size();
    size_t ballot_count = pools.ballots.size();

    // "The current profile has some successful manipulation."
    auto can_manipulate_here = [&]() {
        std::vector<FormulaPtr> cases;
        cases.reserve(profile_count);
        for (size_t p = 0; p < profile_count; ++p)
            cases.push_back(
                Formula::conj(pools.descriptions[p], Formula::disj_all(pools.succ[p])));
        return Formula::disj_all(std::move(cases));
    };

    std::vector<FormulaPtr> outer;
    outer.reserve(profile_count);
    switch (notion) {
    case ManipulationNotion::actual: {
        for (size_t p = 0; p < profile_count; ++p)
            outer.push_back(
                Formula::conj(pools.descriptions[p], Formula::disj_all(pools.succ[p])));
        break;
    }
    case ManipulationNotion::de_dicto: {
        FormulaPtr inner = Formula::know(voter, can_manipulate_here());
        for (size_t p = 0; p < profile_count; ++p)
            outer.push_back(Formula::conj(pools.descriptions[p], inner));
        break;
    }
    case ManipulationNotion::de_re: {
        std::vector<FormulaPtr> by_ballot;
        by_ballot.reserve(ballot_count);
        for (size_t b = 0; b < ballot_count; ++b) {
            std::vector<FormulaPtr> cases;
            cases.reserve(profile_count);
            for (size_t p = 0; p < profile_count; ++p)
                cases.push_back(Formula::conj(pools.descriptions[p], pools.succ[p][b]));
            by_ballot.push_back(
                Formula::know(voter, Formula::disj_all(std::move(cases))));
        }
        FormulaPtr some_ballot = Formula::disj_all(std::move(by_ballot));
        for (size_t p = 0; p < profile_count; ++p)
            outer.push_back(Formula::conj(pools.descriptions[p], some_ballot));
        break;
    }
    case ManipulationNotion::de_re_weak: {
        std::vector<FormulaPtr> by_ballot;
        by_ballot.reserve(ballot_count);
        for (size_t b = 0; b < ballot_count; ++b) {
            std::vector<FormulaPtr> never_worse;
            std::vector<FormulaPtr> somewhere;
            never_worse.reserve(profile_count);
            somewhere.reserve(profile_count);
            for (size_t p = 0; p < profile_count; ++p) {
                never_worse.push_back(Formula::conj(
                    pools.descriptions[p],
                    Formula::disj(pools.succ[p][b],
                                  unchanged_formula(pools, p, b, voter, voters))));
                somewhere.push_back(
                    Formula::conj(pools.descriptions[p], pools.succ[p][b]));
            }
            FormulaPtr universal =
                Formula::know(voter, Formula::disj_all(std::move(never_worse)));
            FormulaPtr existential = Formula::negate(Formula::know(
                voter, Formula::negate(Formula::disj_all(std::move(somewhere)))));
            by_ballot.push_back(
                Formula::conj(std::move(universal), std::move(existential)));
        }
        FormulaPtr some_ballot = Formula::disj_all(std::move(by_ballot));
        for (size_t p = 0; p < profile_count; ++p)
            outer.push_back(Formula::conj(pools.descriptions[p], some_ballot));
        break;
    }
    }
    return Formula::disj_all(std::move(outer));
}

bool formulas_agree(const ProfileModel& model, int point, const EvalContext& ctx,
                    int voter, long long node_budget) {
    ManipulationReport report =
        classify(model, point, voter, ctx.rule, ctx.tiebreak);
    const int n = model.voters();
    const int m = model.candidates().size();
    const std::pair<ManipulationNotion, bool> expectations[] = {
        {ManipulationNotion::actual, report.actual},
        {ManipulationNotion::de_dicto, report.de_dicto},
        {ManipulationNotion::de_re, report.de_re},
        {ManipulationNotion::de_re_weak, report.de_re_weak},
    };
    for (const auto& [notion, expected] : expectations) {
        FormulaPtr f =
            defining_formula(notion, voter, ctx.rule, ctx.tiebreak, n, m, node_budget);
        if (eval_formula(model, point, ctx, f) != expected)
            return false;
    }
    return true;
}

namespace {

std::string ballots_to_string(const std::vector<Vote>& ballots,
                              const CandidateSet& candidates) {
    std::vector<std::string> rendered;
    rendered.reserve(ballots.size());
    for (const Vote& b : ballots)
        rendered.push_back(b.to_string(candidates));
    std::sort(rendered.begin(), rendered.end());
    std::string out;
    for (size_t i = 0; i < rendered.size(); ++i) {
        if (i > 0)
            out += ' ';
        out += rendered[i];
    }
    return out;
}

} // namespace

std::string report_to_string(const ManipulationReport& report,
                             const CandidateSet& candidates) {
    std::string out;
    out += "actual=" + std::string(report.actual ? "true" : "false") + "\n";
    out += "considers_possible=" +
           std::string(report.considers_possible ? "true" : "false") + "\n";
    out += "de_dicto=" + std::string(report.de_dicto ? "true" : "false") + "\n";
    out += "de_re=" + std::string(report.de_re ? "true" : "false") + "\n";
    out += "de_re_weak=" + std::string(report.de_re_weak ? "true" : "false") + "\n";
    out += "de_re_witnesses=" + ballots_to_string(report.de_re_witnesses, candidates) +
           "\n";
    out += "de_re_weak_witnesses=" +
           ballots_to_string(report.de_re_weak_witnesses, candidates) + "\n";
    return out;
}

} // namespace epivote
