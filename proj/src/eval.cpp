#include "epivote/eval.hpp"

#include <unordered_map>

namespace epivote {

EvalContext EvalContext::fresh(VotingRule rule, TieBreak tiebreak, int state_count,
                               int voters) {
    EvalContext ctx{std::move(rule), std::move(tiebreak), {}};
    ctx.declared.assign(static_cast<size_t>(state_count),
                        std::vector<DeclaredPairs>(static_cast<size_t>(voters)));
    return ctx;
}

EvalContext EvalContext::restricted_to(const std::vector<int>& surviving) const {
    EvalContext out{rule, tiebreak, {}};
    out.declared.reserve(surviving.size());
    for (int s : surviving)
        out.declared.push_back(declared.at(static_cast<size_t>(s)));
    return out;
}

namespace {

/// One (model, context) frame. Dynamic operators spawn a fresh frame for
/// the transformed model, so within a frame truth is a pure function of
/// (node, state) and can be memoized. Only nodes that are actually shared
/// get a memo entry; plain trees are walked directly.
class Evaluator {
  public:
    Evaluator(const ProfileModel& model, const EvalContext& ctx)
        : model_(model), ctx_(ctx) {
        if (static_cast<int>(ctx.declared.size()) != model.state_count())
            throw DomainError("evaluation context does not match the model's states");
    }

    bool eval(const FormulaPtr& f, int state) {
        if (f.use_count() > 1) {
            auto [it, inserted] = memo_.try_emplace(f.get());
            auto& per_state = it->second;
            if (inserted)
                per_state.assign(static_cast<size_t>(model_.state_count()), -1);
            int8_t& slot = per_state[static_cast<size_t>(state)];
            if (slot < 0)
                slot = eval(*f, state) ? 1 : 0;
            return slot == 1;
        }
        return eval(*f, state);
    }

    bool eval(const Formula& f, int state) {
        switch (f.kind()) {
        case Formula::Kind::True:
            return true;
        case Formula::Kind::False:
            return false;
        case Formula::Kind::PrefAtom:
            return model_.profile_at(state).vote(f.voter()).prefers(f.x(), f.y());
        case Formula::Kind::DeclAtom: {
            if (f.voter() > model_.voters())
                throw DomainError("formula mentions an unknown voter");
            const DeclaredPairs& pairs =
                ctx_.declared[static_cast<size_t>(state)][static_cast<size_t>(f.voter() - 1)];
            return pairs.contains({f.x(), f.y()});
        }
        case Formula::Kind::Win:
            return winner(ctx_.rule, ctx_.tiebreak, model_.profile_at(state)) == f.x();
        case Formula::Kind::Not:
            return !eval(f.left(), state);
        case Formula::Kind::And:
            return eval(f.left(), state) && eval(f.right(), state);
        case Formula::Kind::Or:
            return eval(f.left(), state) || eval(f.right(), state);
        case Formula::Kind::Imp:
            return !eval(f.left(), state) || eval(f.right(), state);
        case Formula::Kind::Iff:
            return eval(f.left(), state) == eval(f.right(), state);
        case Formula::Kind::Know: {
            for (int t : eq_class(model_, f.voter(), state))
                if (!eval(f.left(), t))
                    return false;
            return true;
        }
        case Formula::Kind::Common:
        case Formula::Kind::Distrib: {
            GroupMode mode = f.kind() == Formula::Kind::Common ? GroupMode::common
                                                               : GroupMode::distributed;
            Partition partition = group_partition(model_, f.group(), mode);
            for (int t : partition.block_of(state))
                if (!eval(f.left(), t))
                    return false;
            return true;
        }
        case Formula::Kind::Announce: {
            if (!eval(f.left(), state))
                return true; // nothing to announce: the boxed formula holds
            std::vector<int> surviving;
            for (int t = 0; t < model_.state_count(); ++t)
                if (eval(f.left(), t))
                    surviving.push_back(t);
            ProfileModel restricted = model_.restricted_to(surviving);
            EvalContext ctx = ctx_.restricted_to(surviving);
            int new_state = 0;
            while (surviving[static_cast<size_t>(new_state)] != state)
                ++new_state;
            Evaluator sub(restricted, ctx);
            return sub.eval(f.right(), new_state);
        }
        case Formula::Kind::Assign: {
            EvalContext updated = apply_assignment(model_, ctx_, f.items());
            Evaluator sub(model_, updated);
            return sub.eval(f.left(), state);
        }
        case Formula::Kind::OutcomePref: {
            // Judged by the voter's ballot inside the right-hand profile:
            // in "P' >_i P" the baseline P carries i's reference vote.
            const Profile& left = f.left_profile();
            const Profile& right = f.right_profile();
            if (left.candidates() != ctx_.rule.candidates())
                throw DomainError("outcome preference over the wrong candidate set");
            int left_winner = winner(ctx_.rule, ctx_.tiebreak, left);
            int right_winner = winner(ctx_.rule, ctx_.tiebreak, right);
            return right.vote(f.voter()).prefers(left_winner, right_winner);
        }
        }
        throw DomainError("unhandled formula kind");
    }

  private:
    const ProfileModel& model_;
    const EvalContext& ctx_;
    std::unordered_map<const Formula*, std::vector<int8_t>> memo_;
};

} // namespace

bool eval_formula(const ProfileModel& model, int point, const EvalContext& ctx,
                  const Formula& formula) {
    if (point < 0 || point >= model.state_count())
        throw DomainError("point out of range");
    Evaluator evaluator(model, ctx);
    return evaluator.eval(formula, point);
}

bool valid_on_model(const ProfileModel& model, const EvalContext& ctx,
                    const Formula& formula) {
    Evaluator evaluator(model, ctx);
    for (int s = 0; s < model.state_count(); ++s)
        if (!evaluator.eval(formula, s))
            return false;
    return true;
}

EvalContext apply_assignment(const ProfileModel& model, const EvalContext& ctx,
                             const std::vector<AssignItem>& items) {
    Evaluator pre(model, ctx);
    // All right-hand sides are read against the pre-update context first.
    std::vector<std::vector<bool>> values(items.size());
    for (size_t k = 0; k < items.size(); ++k) {
        values[k].resize(static_cast<size_t>(model.state_count()));
        for (int s = 0; s < model.state_count(); ++s)
            values[k][static_cast<size_t>(s)] = pre.eval(items[k].rhs, s);
    }
    EvalContext out = ctx;
    for (size_t k = 0; k < items.size(); ++k) {
        const AssignItem& item = items[k];
        if (item.voter > model.voters())
            throw DomainError("assignment mentions an unknown voter");
        if (item.x >= model.candidates().size() || item.y >= model.candidates().size())
            throw DomainError("assignment mentions an unknown candidate");
        for (int s = 0; s < model.state_count(); ++s) {
            DeclaredPairs& pairs =
                out.declared[static_cast<size_t>(s)][static_cast<size_t>(item.voter - 1)];
            if (values[k][static_cast<size_t>(s)])
                pairs.insert({item.x, item.y});
            else
                pairs.erase({item.x, item.y});
        }
    }
    return out;
}

} // namespace epivote
