#include "epivote/equilibrium.hpp"

#include <algorithm>
#include <cmath>

namespace epivote {

std::vector<std::vector<int>> sorted_classes(const ProfileModel& model, int voter) {
    std::vector<std::pair<std::string, std::vector<int>>> keyed;
    for (const auto& block : model.partition(voter).blocks()) {
        std::string least = model.state_name(block.front());
        for (int s : block)
            least = std::min(least, model.state_name(s));
        keyed.emplace_back(std::move(least), block);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<std::vector<int>> out;
    out.reserve(keyed.size());
    for (auto& [key, block] : keyed)
        out.push_back(std::move(block));
    return out;
}

namespace {

/// Cached per-voter class lookup for one model.
struct ClassView {
    std::vector<std::vector<std::vector<int>>> classes; // [voter-1][k] -> states
    std::vector<std::vector<int>> class_of;             // [voter-1][state] -> k

    explicit ClassView(const ProfileModel& model) {
        classes.reserve(static_cast<size_t>(model.voters()));
        class_of.assign(static_cast<size_t>(model.voters()),
                        std::vector<int>(static_cast<size_t>(model.state_count()), -1));
        for (int i = 1; i <= model.voters(); ++i) {
            classes.push_back(sorted_classes(model, i));
            const auto& mine = classes.back();
            for (size_t k = 0; k < mine.size(); ++k)
                for (int s : mine[k])
                    class_of[static_cast<size_t>(i - 1)][static_cast<size_t>(s)] =
                        static_cast<int>(k);
        }
    }
};

void check_shape(const ProfileModel& model, const ClassView& view,
                 const ConditionalProfile& cp) {
    if (static_cast<int>(cp.ballots.size()) != model.voters())
        throw DomainError("conditional profile must give one conditional vote per voter");
    for (int i = 1; i <= model.voters(); ++i) {
        const auto& mine = cp.ballots[static_cast<size_t>(i - 1)];
        if (mine.size() != view.classes[static_cast<size_t>(i - 1)].size())
            throw DomainError("conditional vote does not match the voter's classes");
        for (const Vote& v : mine)
            if (v.size() != model.candidates().size())
                throw DomainError("conditional ballot over the wrong candidate set");
    }
}

int outcome_with(const ProfileModel& model, const ClassView& view,
                 const ConditionalProfile& cp, int state, const VotingRule& rule,
                 const TieBreak& tiebreak, int override_voter, int override_class,
                 const Vote* override_ballot) {
    std::vector<Vote> cast;
    cast.reserve(static_cast<size_t>(model.voters()));
    for (int i = 1; i <= model.voters(); ++i) {
        int k = view.class_of[static_cast<size_t>(i - 1)][static_cast<size_t>(state)];
        if (override_ballot != nullptr && i == override_voter && k == override_class)
            cast.push_back(*override_ballot);
        else
            cast.push_back(cp.ballots[static_cast<size_t>(i - 1)][static_cast<size_t>(k)]);
    }
    return winner(rule, tiebreak, Profile(std::move(cast)));
}

const Vote& truthful_on_class(const ProfileModel& model, const std::vector<int>& cls,
                              int voter) {
    const Vote& truth = model.profile_at(cls.front()).vote(voter);
    for (int s : cls)
        if (!(model.profile_at(s).vote(voter) == truth))
            throw PreconditionError(
                "voter " + std::to_string(voter) +
                " does not know her preference on a class; its value is undefined");
    return truth;
}

int worst_outcome(const ProfileModel& model, const ClassView& view,
                  const ConditionalProfile& cp, int voter, int class_index,
                  const VotingRule& rule, const TieBreak& tiebreak, const Vote& truth,
                  const Vote* override_ballot) {
    const auto& cls =
        view.classes[static_cast<size_t>(voter - 1)][static_cast<size_t>(class_index)];
    int worst = -1;
    for (int s : cls) {
        int outcome = outcome_with(model, view, cp, s, rule, tiebreak, voter,
                                   class_index, override_ballot);
        if (worst == -1 || truth.prefers(worst, outcome))
            worst = outcome;
    }
    return worst;
}

bool improvement_at(const ProfileModel& model, const ClassView& view,
                    const ConditionalProfile& cp, int voter, int class_index,
                    const VotingRule& rule, const TieBreak& tiebreak,
                    int max_candidates) {
    const auto& cls =
        view.classes[static_cast<size_t>(voter - 1)][static_cast<size_t>(class_index)];
    const Vote& truth = truthful_on_class(model, cls, voter);
    int current =
        worst_outcome(model, view, cp, voter, class_index, rule, tiebreak, truth, nullptr);
    for (const Vote& ballot : all_votes(model.candidates().size(), max_candidates)) {
        int deviated = worst_outcome(model, view, cp, voter, class_index, rule, tiebreak,
                                     truth, &ballot);
        if (truth.prefers(deviated, current))
            return true;
    }
    return false;
}

} // namespace

int outcome_at(const ProfileModel& model, const ConditionalProfile& cp, int state,
               const VotingRule& rule, const TieBreak& tiebreak) {
    ClassView view(model);
    check_shape(model, view, cp);
    if (state < 0 || state >= model.state_count())
        throw DomainError("state index out of range");
    return outcome_with(model, view, cp, state, rule, tiebreak, 0, -1, nullptr);
}

std::vector<int> outcome_vector(const ProfileModel& model, const ConditionalProfile& cp,
                                const VotingRule& rule, const TieBreak& tiebreak) {
    ClassView view(model);
    check_shape(model, view, cp);
    std::vector<int> out;
    out.reserve(static_cast<size_t>(model.state_count()));
    for (int s = 0; s < model.state_count(); ++s)
        out.push_back(outcome_with(model, view, cp, s, rule, tiebreak, 0, -1, nullptr));
    return out;
}

int maximin_value(const ProfileModel& model, const ConditionalProfile& cp, int voter,
                  int class_index, const VotingRule& rule, const TieBreak& tiebreak) {
    ClassView view(model);
    check_shape(model, view, cp);
    const auto& classes = view.classes[static_cast<size_t>(voter - 1)];
    if (class_index < 0 || class_index >= static_cast<int>(classes.size()))
        throw DomainError("class index out of range");
    const Vote& truth =
        truthful_on_class(model, classes[static_cast<size_t>(class_index)], voter);
    return worst_outcome(model, view, cp, voter, class_index, rule, tiebreak, truth,
                         nullptr);
}

bool has_local_improvement(const ProfileModel& model, const ConditionalProfile& cp,
                           int voter, int class_index, const VotingRule& rule,
                           const TieBreak& tiebreak, int max_candidates) {
    ClassView view(model);
    check_shape(model, view, cp);
    const auto& classes = view.classes[static_cast<size_t>(voter - 1)];
    if (class_index < 0 || class_index >= static_cast<int>(classes.size()))
        throw DomainError("class index out of range");
    return improvement_at(model, view, cp, voter, class_index, rule, tiebreak,
                          max_candidates);
}

bool is_conditional_equilibrium(const ProfileModel& model, const ConditionalProfile& cp,
                                const VotingRule& rule, const TieBreak& tiebreak,
                                int max_candidates) {
    ClassView view(model);
    check_shape(model, view, cp);
    for (int i = 1; i <= model.voters(); ++i)
        for (size_t k = 0; k < view.classes[static_cast<size_t>(i - 1)].size(); ++k)
            truthful_on_class(model, view.classes[static_cast<size_t>(i - 1)][k], i);
    for (int i = 1; i <= model.voters(); ++i)
        for (size_t k = 0; k < view.classes[static_cast<size_t>(i - 1)].size(); ++k)
            if (improvement_at(model, view, cp, i, static_cast<int>(k), rule, tiebreak,
                               max_candidates))
                return false;
    return true;
}

namespace {

std::vector<Vote> ballot_choices(const ProfileModel& model, const VotingRule& rule,
                                 bool reduce) {
    int m = model.candidates().size();
    if (reduce && rule.is_plurality()) {
        // Same-top plurality ballots are outcome-equivalent; one
        // representative per top candidate: the top, then the rest in
        // declaration order.
        std::vector<Vote> out;
        for (int top = 0; top < m; ++top) {
            std::vector<int> ranking{top};
            for (int c = 0; c < m; ++c)
                if (c != top)
                    ranking.push_back(c);
            out.emplace_back(std::move(ranking));
        }
        return out;
    }
    return all_votes(m);
}

struct Slot {
    int voter;
    int class_index;
};

std::vector<Slot> grid_slots(const ClassView& view, int voters) {
    std::vector<Slot> slots;
    for (int i = 1; i <= voters; ++i)
        for (size_t k = 0; k < view.classes[static_cast<size_t>(i - 1)].size(); ++k)
            slots.push_back({i, static_cast<int>(k)});
    return slots;
}

template <typename Visit>
void walk_grid(const ProfileModel& model, const ClassView& view,
               const std::vector<Vote>& choices, long long max_combinations,
               Visit&& visit) {
    std::vector<Slot> slots = grid_slots(view, model.voters());
    long long total = 1;
    for (size_t k = 0; k < slots.size(); ++k) {
        total *= static_cast<long long>(choices.size());
        if (total > max_combinations)
            throw ResourceError("conditional strategy grid exceeds the cap of " +
                                std::to_string(max_combinations) + " profiles");
    }
    ConditionalProfile cp;
    cp.ballots.resize(static_cast<size_t>(model.voters()));
    for (int i = 1; i <= model.voters(); ++i)
        cp.ballots[static_cast<size_t>(i - 1)].assign(
            view.classes[static_cast<size_t>(i - 1)].size(), choices.front());
    std::vector<size_t> cursor(slots.size(), 0);
    while (true) {
        visit(cp);
        size_t k = slots.size();
        while (true) {
            if (k == 0)
                return;
            --k;
            auto& ballot = cp.ballots[static_cast<size_t>(slots[k].voter - 1)]
                                     [static_cast<size_t>(slots[k].class_index)];
            if (++cursor[k] < choices.size()) {
                ballot = choices[cursor[k]];
                break;
            }
            cursor[k] = 0;
            ballot = choices.front();
        }
    }
}

} // namespace

std::vector<ConditionalProfile> enumerate_equilibria(const ProfileModel& model,
                                                     const VotingRule& rule,
                                                     const TieBreak& tiebreak,
                                                     bool reduce_ballots,
                                                     long long max_combinations) {
    ClassView view(model);
    for (int i = 1; i <= model.voters(); ++i)
        for (const auto& cls : view.classes[static_cast<size_t>(i - 1)])
            truthful_on_class(model, cls, i);

    std::vector<Vote> choices = ballot_choices(model, rule, reduce_ballots);
    std::vector<Slot> slots = grid_slots(view, model.voters());
    std::vector<ConditionalProfile> found;
    walk_grid(model, view, choices, max_combinations,
              [&](const ConditionalProfile& cp) {
                  for (const Slot& slot : slots)
                      if (improvement_at(model, view, cp, slot.voter, slot.class_index,
                                         rule, tiebreak, kDefaultBallotEnumerationCap))
                          return;
                  found.push_back(cp);
              });
    return found;
}

std::vector<ConditionalProfile> enumerate_all_conditional_profiles(
    const ProfileModel& model, const VotingRule& rule, bool reduce_ballots,
    long long max_combinations) {
    ClassView view(model);
    std::vector<Vote> choices = ballot_choices(model, rule, reduce_ballots);
    std::vector<ConditionalProfile> out;
    walk_grid(model, view, choices, max_combinations,
              [&](const ConditionalProfile& cp) { out.push_back(cp); });
    return out;
}

std::string conditional_vote_label(const ProfileModel& model,
                                   const std::vector<Vote>& ballots, bool reduced) {
    std::string out;
    for (size_t k = 0; k < ballots.size(); ++k) {
        if (reduced) {
            out += model.candidates().name(ballots[k].top());
        } else {
            if (k > 0)
                out += ',';
            out += ballots[k].to_string(model.candidates());
        }
    }
    return out;
}

std::string cell_string(const ProfileModel& model, const ConditionalProfile& cp,
                        const VotingRule& rule, const TieBreak& tiebreak,
                        bool payoffs) {
    ClassView view(model);
    check_shape(model, view, cp);
    std::string out;
    if (!payoffs) {
        for (int s = 0; s < model.state_count(); ++s)
            out += model.candidates().name(
                outcome_with(model, view, cp, s, rule, tiebreak, 0, -1, nullptr));
    }
    for (int i = 1; i <= model.voters(); ++i) {
        const auto& classes = view.classes[static_cast<size_t>(i - 1)];
        bool all_singletons = true;
        for (const auto& cls : classes)
            if (cls.size() > 1)
                all_singletons = false;
        if (!payoffs && all_singletons)
            continue; // the per-state outcomes already show this voter's values
        for (size_t k = 0; k < classes.size(); ++k) {
            const Vote& truth = truthful_on_class(model, classes[k], i);
            int value = worst_outcome(model, view, cp, i, static_cast<int>(k), rule,
                                      tiebreak, truth, nullptr);
            if (payoffs)
                out += std::to_string(rank_payoff(truth, value));
            else
                out += model.candidates().name(value);
        }
    }
    return out;
}

GameMatrix game_matrix(const ProfileModel& model, const VotingRule& rule,
                       const TieBreak& tiebreak, bool payoffs,
                       long long max_combinations) {
    if (model.voters() != 2)
        throw DomainError("the matrix view needs exactly two voters");
    ClassView view(model);
    for (int i = 1; i <= 2; ++i)
        for (const auto& cls : view.classes[static_cast<size_t>(i - 1)])
            truthful_on_class(model, cls, i);

    bool reduced = rule.is_plurality();
    std::vector<Vote> choices = ballot_choices(model, rule, reduced);
    size_t rows_classes = view.classes[0].size();
    size_t cols_classes = view.classes[1].size();
    double rows = std::pow(static_cast<double>(choices.size()),
                           static_cast<double>(rows_classes));
    double cols = std::pow(static_cast<double>(choices.size()),
                           static_cast<double>(cols_classes));
    if (rows * cols > static_cast<double>(max_combinations))
        throw ResourceError("game matrix exceeds the cap of " +
                            std::to_string(max_combinations) + " cells");

    auto conditional_votes = [&](size_t class_count) {
        std::vector<std::vector<Vote>> out;
        std::vector<size_t> cursor(class_count, 0);
        while (true) {
            std::vector<Vote> votes;
            for (size_t k = 0; k < class_count; ++k)
                votes.push_back(choices[cursor[k]]);
            out.push_back(std::move(votes));
            size_t k = class_count;
            while (k > 0) {
                --k;
                if (++cursor[k] < choices.size())
                    break;
                cursor[k] = 0;
                if (k == 0)
                    return out;
            }
            if (class_count == 0)
                return out;
        }
    };

    GameMatrix matrix;
    std::vector<std::vector<Vote>> row_votes = conditional_votes(rows_classes);
    std::vector<std::vector<Vote>> col_votes = conditional_votes(cols_classes);
    for (const auto& rv : row_votes)
        matrix.row_labels.push_back(conditional_vote_label(model, rv, reduced));
    for (const auto& cv : col_votes)
        matrix.col_labels.push_back(conditional_vote_label(model, cv, reduced));
    for (const auto& rv : row_votes) {
        std::vector<std::string> row;
        for (const auto& cv : col_votes) {
            ConditionalProfile cp{{rv, cv}};
            row.push_back(cell_string(model, cp, rule, tiebreak, payoffs));
        }
        matrix.cells.push_back(std::move(row));
    }
    return matrix;
}

std::string to_tsv(const GameMatrix& matrix) {
    std::string out;
    for (const auto& label : matrix.col_labels) {
        out += '\t';
        out += label;
    }
    out += '\n';
    for (size_t r = 0; r < matrix.cells.size(); ++r) {
        out += matrix.row_labels[r];
        for (const auto& cell : matrix.cells[r]) {
            out += '\t';
            out += cell;
        }
        out += '\n';
    }
    return out;
}

} // namespace epivote
