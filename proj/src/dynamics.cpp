#include "epivote/dynamics.hpp"

#include <algorithm>

namespace epivote {

AnnounceResult announce(const ProfileModel& model, int point, const EvalContext& ctx,
                        const Formula& formula) {
    if (!eval_formula(model, point, ctx, formula))
        throw AnnouncementError("the announced formula is false at the point");
    std::vector<int> surviving;
    for (int s = 0; s < model.state_count(); ++s)
        if (eval_formula(model, s, ctx, formula))
            surviving.push_back(s);
    AnnounceResult out{model.restricted_to(surviving), 0, ctx.restricted_to(surviving), {}};
    for (size_t pos = 0; pos < surviving.size(); ++pos) {
        out.surviving.push_back(model.state_name(surviving[pos]));
        if (surviving[pos] == point)
            out.point = static_cast<int>(pos);
    }
    return out;
}

EvalContext assign(const ProfileModel& model, const EvalContext& ctx,
                   const std::vector<AssignItem>& items) {
    return apply_assignment(model, ctx, items);
}

std::vector<AssignItem> declare_vote_batch(int voter, const Vote& ballot) {
    std::vector<AssignItem> items;
    for (int x = 0; x < ballot.size(); ++x)
        for (int y = 0; y < ballot.size(); ++y)
            if (x != y && ballot.prefers(x, y))
                items.push_back({x, voter, y, Formula::truth()});
    return items;
}

std::vector<AssignItem> declare_truthful_batch(int voter, int candidate_count) {
    std::vector<AssignItem> items;
    for (int x = 0; x < candidate_count; ++x)
        for (int y = 0; y < candidate_count; ++y)
            if (x != y)
                items.push_back({x, voter, y, Formula::pref(x, voter, y)});
    return items;
}

namespace {

/// Reconstruct a linear order from a declared pair set, or nothing if the
/// pairs are not exactly a linear order's.
std::optional<Vote> order_from_pairs(const DeclaredPairs& pairs, int candidate_count) {
    std::vector<int> wins(static_cast<size_t>(candidate_count), 0);
    for (auto [x, y] : pairs) {
        if (x < 0 || x >= candidate_count || y < 0 || y >= candidate_count || x == y)
            return std::nullopt;
        ++wins[static_cast<size_t>(x)];
    }
    if (static_cast<int>(pairs.size()) != candidate_count * (candidate_count - 1) / 2)
        return std::nullopt;
    std::vector<int> ranking(static_cast<size_t>(candidate_count));
    std::vector<bool> seen(static_cast<size_t>(candidate_count), false);
    for (int c = 0; c < candidate_count; ++c) {
        int slot = candidate_count - 1 - wins[static_cast<size_t>(c)];
        if (slot < 0 || slot >= candidate_count || seen[static_cast<size_t>(slot)])
            return std::nullopt;
        seen[static_cast<size_t>(slot)] = true;
        ranking[static_cast<size_t>(slot)] = c;
    }
    Vote vote(std::move(ranking));
    for (int x = 0; x < candidate_count; ++x)
        for (int y = 0; y < candidate_count; ++y)
            if (x != y && vote.prefers(x, y) != pairs.contains({x, y}))
                return std::nullopt;
    return vote;
}

} // namespace

std::optional<int> declared_winner(const ProfileModel& model, const EvalContext& ctx,
                                   int state) {
    if (state < 0 || state >= model.state_count())
        throw DomainError("state index out of range");
    std::vector<Vote> votes;
    for (int i = 1; i <= model.voters(); ++i) {
        auto vote = order_from_pairs(
            ctx.declared.at(static_cast<size_t>(state))[static_cast<size_t>(i - 1)],
            model.candidates().size());
        if (!vote.has_value())
            return std::nullopt;
        votes.push_back(std::move(*vote));
    }
    return winner(ctx.rule, ctx.tiebreak, Profile(std::move(votes)));
}

PreservationReport preservation_experiment(const ProfileModel& model, int point,
                                           const EvalContext& ctx, int voter,
                                           FormulaPtr formula) {
    PreservationReport report;
    report.announced = std::move(formula);
    report.before = classify(model, point, voter, ctx.rule, ctx.tiebreak);
    AnnounceResult updated = announce(model, point, ctx, *report.announced);
    report.after =
        classify(updated.model, updated.point, voter, ctx.rule, ctx.tiebreak);
    report.surviving = std::move(updated.surviving);
    return report;
}

std::string announce_trace(const Formula& formula, const CandidateSet& candidates,
                           const std::vector<std::string>& surviving) {
    std::string out = "announce " + print_formula(formula, candidates) + " | states:";
    for (const auto& name : surviving)
        out += " " + name;
    return out;
}

std::string assign_trace(const std::vector<AssignItem>& items,
                         const CandidateSet& candidates) {
    std::string out = "assign ";
    for (size_t k = 0; k < items.size(); ++k) {
        if (k > 0)
            out += ", ";
        out += candidates.name(items[k].x) + " >>_" + std::to_string(items[k].voter) +
               " " + candidates.name(items[k].y) + " := " +
               print_formula(*items[k].rhs, candidates);
    }
    return out;
}

} // namespace epivote
