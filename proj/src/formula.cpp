#include "epivote/formula.hpp"

#include <algorithm>

namespace epivote {

namespace {

std::shared_ptr<Formula> make_node(Formula::Kind kind) {
    struct Node : Formula {
        explicit Node(Kind k) : Formula(k) {}
    };
    return std::make_shared<Node>(kind);
}

void require_voter(int voter) {
    if (voter < 1)
        throw DomainError("voter indices start at 1");
}

void require_candidate(int c) {
    if (c < 0)
        throw DomainError("negative candidate index in formula");
}

} // namespace

FormulaPtr Formula::truth() {
    static const FormulaPtr instance = make_node(Kind::True);
    return instance;
}

FormulaPtr Formula::falsity() {
    static const FormulaPtr instance = make_node(Kind::False);
    return instance;
}

FormulaPtr Formula::pref(int x, int voter, int y) {
    require_voter(voter);
    require_candidate(x);
    require_candidate(y);
    auto node = make_node(Kind::PrefAtom);
    node->voter_ = voter;
    node->x_ = x;
    node->y_ = y;
    return node;
}

FormulaPtr Formula::decl(int x, int voter, int y) {
    require_voter(voter);
    require_candidate(x);
    require_candidate(y);
    if (x == y)
        throw DomainError("a declared-vote atom cannot relate a candidate to itself");
    auto node = make_node(Kind::DeclAtom);
    node->voter_ = voter;
    node->x_ = x;
    node->y_ = y;
    return node;
}

FormulaPtr Formula::win(int candidate) {
    require_candidate(candidate);
    auto node = make_node(Kind::Win);
    node->x_ = candidate;
    return node;
}

FormulaPtr Formula::negate(FormulaPtr f) {
    auto node = make_node(Kind::Not);
    node->left_ = std::move(f);
    return node;
}

FormulaPtr Formula::conj(FormulaPtr a, FormulaPtr b) {
    auto node = make_node(Kind::And);
    node->left_ = std::move(a);
    node->right_ = std::move(b);
    return node;
}

FormulaPtr Formula::disj(FormulaPtr a, FormulaPtr b) {
    auto node = make_node(Kind::Or);
    node->left_ = std::move(a);
    node->right_ = std::move(b);
    return node;
}

FormulaPtr Formula::implies(FormulaPtr a, FormulaPtr b) {
    auto node = make_node(Kind::Imp);
    node->left_ = std::move(a);
    node->right_ = std::move(b);
    return node;
}

FormulaPtr Formula::iff(FormulaPtr a, FormulaPtr b) {
    auto node = make_node(Kind::Iff);
    node->left_ = std::move(a);
    node->right_ = std::move(b);
    return node;
}

FormulaPtr Formula::know(int voter, FormulaPtr f) {
    require_voter(voter);
    auto node = make_node(Kind::Know);
    node->voter_ = voter;
    node->left_ = std::move(f);
    return node;
}

FormulaPtr Formula::common(std::vector<int> group, FormulaPtr f) {
    if (group.empty())
        throw DomainError("group knowledge needs a nonempty group");
    for (int i : group)
        require_voter(i);
    auto node = make_node(Kind::Common);
    node->extra_ = std::make_unique<Extra>();
    node->extra_->group = std::move(group);
    node->left_ = std::move(f);
    return node;
}

FormulaPtr Formula::distributed(std::vector<int> group, FormulaPtr f) {
    if (group.empty())
        throw DomainError("group knowledge needs a nonempty group");
    for (int i : group)
        require_voter(i);
    auto node = make_node(Kind::Distrib);
    node->extra_ = std::make_unique<Extra>();
    node->extra_->group = std::move(group);
    node->left_ = std::move(f);
    return node;
}

FormulaPtr Formula::announce(FormulaPtr premise, FormulaPtr body) {
    auto node = make_node(Kind::Announce);
    node->left_ = std::move(premise);
    node->right_ = std::move(body);
    return node;
}

FormulaPtr Formula::assign(std::vector<AssignItem> items, FormulaPtr body) {
    if (items.empty())
        throw DomainError("an assignment needs at least one item");
    for (const auto& item : items) {
        require_voter(item.voter);
        require_candidate(item.x);
        require_candidate(item.y);
        if (item.x == item.y)
            throw DomainError("a declared-vote atom cannot relate a candidate to itself");
        if (!item.rhs)
            throw DomainError("assignment item without a right-hand side");
    }
    auto node = make_node(Kind::Assign);
    node->extra_ = std::make_unique<Extra>();
    node->extra_->items = std::move(items);
    node->left_ = std::move(body);
    return node;
}

FormulaPtr Formula::outcome_pref(int voter, std::shared_ptr<const Profile> left,
                                 std::shared_ptr<const Profile> right,
                                 std::string left_label, std::string right_label) {
    require_voter(voter);
    if (!left || !right)
        throw DomainError("outcome preference needs two profiles");
    if (left->voters() != right->voters() || left->candidates() != right->candidates())
        throw DomainError("outcome preference over profiles of different shape");
    if (voter > left->voters())
        throw DomainError("outcome preference mentions an unknown voter");
    auto node = make_node(Kind::OutcomePref);
    node->voter_ = voter;
    node->extra_ = std::make_unique<Extra>();
    node->extra_->left_profile = std::move(left);
    node->extra_->right_profile = std::move(right);
    node->extra_->left_label = std::move(left_label);
    node->extra_->right_label = std::move(right_label);
    return node;
}

namespace {

FormulaPtr fold_balanced(std::vector<FormulaPtr>& parts, size_t lo, size_t hi,
                         bool conjunction) {
    if (hi - lo == 1)
        return parts[lo];
    size_t mid = lo + (hi - lo) / 2;
    FormulaPtr a = fold_balanced(parts, lo, mid, conjunction);
    FormulaPtr b = fold_balanced(parts, mid, hi, conjunction);
    return conjunction ? Formula::conj(std::move(a), std::move(b))
                       : Formula::disj(std::move(a), std::move(b));
}

} // namespace

FormulaPtr Formula::conj_all(std::vector<FormulaPtr> parts) {
    if (parts.empty())
        return truth();
    return fold_balanced(parts, 0, parts.size(), true);
}

FormulaPtr Formula::disj_all(std::vector<FormulaPtr> parts) {
    if (parts.empty())
        return falsity();
    return fold_balanced(parts, 0, parts.size(), false);
}

const std::vector<int>& Formula::group() const {
    static const std::vector<int> empty;
    return extra_ ? extra_->group : empty;
}

const std::vector<AssignItem>& Formula::items() const {
    static const std::vector<AssignItem> empty;
    return extra_ ? extra_->items : empty;
}

const Profile& Formula::left_profile() const {
    if (!extra_ || !extra_->left_profile)
        throw DomainError("formula node has no profile payload");
    return *extra_->left_profile;
}

const Profile& Formula::right_profile() const {
    if (!extra_ || !extra_->right_profile)
        throw DomainError("formula node has no profile payload");
    return *extra_->right_profile;
}

const std::string& Formula::left_label() const {
    static const std::string empty;
    return extra_ ? extra_->left_label : empty;
}

const std::string& Formula::right_label() const {
    static const std::string empty;
    return extra_ ? extra_->right_label : empty;
}

bool formulas_equal(const Formula& a, const Formula& b) {
    if (&a == &b)
        return true;
    if (a.kind() != b.kind() || a.voter() != b.voter() || a.x() != b.x() ||
        a.y() != b.y())
        return false;
    if (a.group() != b.group())
        return false;
    if (a.kind() == Formula::Kind::OutcomePref &&
        (!(a.left_profile() == b.left_profile()) ||
         !(a.right_profile() == b.right_profile())))
        return false;
    const auto& ia = a.items();
    const auto& ib = b.items();
    if (ia.size() != ib.size())
        return false;
    for (size_t k = 0; k < ia.size(); ++k) {
        if (ia[k].x != ib[k].x || ia[k].voter != ib[k].voter || ia[k].y != ib[k].y ||
            !formulas_equal(*ia[k].rhs, *ib[k].rhs))
            return false;
    }
    if (static_cast<bool>(a.left()) != static_cast<bool>(b.left()) ||
        static_cast<bool>(a.right()) != static_cast<bool>(b.right()))
        return false;
    if (a.left() && !formulas_equal(*a.left(), *b.left()))
        return false;
    if (a.right() && !formulas_equal(*a.right(), *b.right()))
        return false;
    return true;
}

namespace {

// Grammar levels: iff(0) < imp(1) < or(2) < and(3) < unary(4) < primary(5).
int precedence_of(const Formula& f) {
    switch (f.kind()) {
    case Formula::Kind::Iff: return 0;
    case Formula::Kind::Imp: return 1;
    case Formula::Kind::Or: return 2;
    case Formula::Kind::And: return 3;
    case Formula::Kind::Not:
    case Formula::Kind::Know:
    case Formula::Kind::Common:
    case Formula::Kind::Distrib:
    case Formula::Kind::Announce:
    case Formula::Kind::Assign: return 4;
    default: return 5;
    }
}

std::string render_profile(const Profile& p, const CandidateSet& candidates) {
    std::string out = "{";
    for (int i = 1; i <= p.voters(); ++i) {
        if (i > 1)
            out += "; ";
        out += p.vote(i).to_string(candidates);
    }
    out += "}";
    return out;
}

void print_into(const Formula& f, const CandidateSet& candidates, int required,
                std::string& out);

void print_group(const std::vector<int>& group, std::string& out) {
    out += '{';
    for (size_t i = 0; i < group.size(); ++i) {
        if (i > 0)
            out += ' ';
        out += std::to_string(group[i]);
    }
    out += '}';
}

void print_into(const Formula& f, const CandidateSet& candidates, int required,
                std::string& out) {
    int mine = precedence_of(f);
    bool parens = mine < required;
    if (parens)
        out += '(';
    switch (f.kind()) {
    case Formula::Kind::True:
        out += "true";
        break;
    case Formula::Kind::False:
        out += "false";
        break;
    case Formula::Kind::PrefAtom:
        out += candidates.name(f.x());
        out += " >_" + std::to_string(f.voter()) + " ";
        out += candidates.name(f.y());
        break;
    case Formula::Kind::DeclAtom:
        out += candidates.name(f.x());
        out += " >>_" + std::to_string(f.voter()) + " ";
        out += candidates.name(f.y());
        break;
    case Formula::Kind::Win:
        out += "win(" + candidates.name(f.x()) + ")";
        break;
    case Formula::Kind::Not:
        out += '~';
        print_into(*f.left(), candidates, 4, out);
        break;
    case Formula::Kind::And:
        print_into(*f.left(), candidates, 3, out);
        out += " & ";
        print_into(*f.right(), candidates, 4, out);
        break;
    case Formula::Kind::Or:
        print_into(*f.left(), candidates, 2, out);
        out += " | ";
        print_into(*f.right(), candidates, 3, out);
        break;
    case Formula::Kind::Imp:
        print_into(*f.left(), candidates, 2, out);
        out += " -> ";
        print_into(*f.right(), candidates, 1, out);
        break;
    case Formula::Kind::Iff:
        print_into(*f.left(), candidates, 0, out);
        out += " <-> ";
        print_into(*f.right(), candidates, 1, out);
        break;
    case Formula::Kind::Know:
        out += "K" + std::to_string(f.voter()) + " ";
        print_into(*f.left(), candidates, 4, out);
        break;
    case Formula::Kind::Common:
        out += "C ";
        print_group(f.group(), out);
        out += ' ';
        print_into(*f.left(), candidates, 4, out);
        break;
    case Formula::Kind::Distrib:
        out += "D ";
        print_group(f.group(), out);
        out += ' ';
        print_into(*f.left(), candidates, 4, out);
        break;
    case Formula::Kind::Announce:
        out += "[! ";
        print_into(*f.left(), candidates, 0, out);
        out += "] ";
        print_into(*f.right(), candidates, 4, out);
        break;
    case Formula::Kind::Assign: {
        out += '[';
        const auto& items = f.items();
        for (size_t k = 0; k < items.size(); ++k) {
            if (k > 0)
                out += ", ";
            out += candidates.name(items[k].x);
            out += " >>_" + std::to_string(items[k].voter) + " ";
            out += candidates.name(items[k].y);
            out += " := ";
            print_into(*items[k].rhs, candidates, 0, out);
        }
        out += "] ";
        print_into(*f.left(), candidates, 4, out);
        break;
    }
    case Formula::Kind::OutcomePref:
        // Parseable only with state labels; the profile rendering is for
        // display of generated formulas.
        out += "opref(" + std::to_string(f.voter()) + ", ";
        out += f.left_label().empty() ? render_profile(f.left_profile(), candidates)
                                      : f.left_label();
        out += ", ";
        out += f.right_label().empty() ? render_profile(f.right_profile(), candidates)
                                       : f.right_label();
        out += ")";
        break;
    }
    if (parens)
        out += ')';
}

} // namespace

std::string print_formula(const Formula& f, const CandidateSet& candidates) {
    std::string out;
    print_into(f, candidates, 0, out);
    return out;
}

FormulaPtr vote_formula(int voter, const Vote& vote) {
    std::vector<FormulaPtr> parts;
    for (int x = 0; x < vote.size(); ++x) {
        for (int y = 0; y < vote.size(); ++y) {
            if (x == y)
                continue;
            FormulaPtr atom = Formula::pref(x, voter, y);
            parts.push_back(vote.prefers(x, y) ? atom : Formula::negate(atom));
        }
    }
    return Formula::conj_all(std::move(parts));
}

FormulaPtr profile_formula(const Profile& profile) {
    std::vector<FormulaPtr> parts;
    for (int i = 1; i <= profile.voters(); ++i)
        parts.push_back(vote_formula(i, profile.vote(i)));
    return Formula::conj_all(std::move(parts));
}

bool differ_only_in(int voter, const Profile& p, const Profile& q) {
    if (p.voters() != q.voters() || p.candidates() != q.candidates())
        throw DomainError("profiles of different shape cannot be compared");
    if (voter < 1 || voter > p.voters())
        throw DomainError("unknown voter: " + std::to_string(voter));
    for (int j = 1; j <= p.voters(); ++j) {
        if (j == voter)
            continue;
        if (!(p.vote(j) == q.vote(j)))
            return false;
    }
    return true;
}

FormulaPtr differ_formula(int voter, const Profile& p, const Profile& q) {
    if (p.voters() != q.voters() || p.candidates() != q.candidates())
        throw DomainError("profiles of different shape cannot be compared");
    if (voter < 1 || voter > p.voters())
        throw DomainError("unknown voter: " + std::to_string(voter));
    std::vector<FormulaPtr> parts;
    for (int j = 1; j <= p.voters(); ++j) {
        if (j == voter)
            continue;
        for (int x = 0; x < p.candidates(); ++x) {
            for (int y = 0; y < p.candidates(); ++y) {
                if (x == y)
                    continue;
                FormulaPtr in_p =
                    p.vote(j).prefers(x, y) ? Formula::truth() : Formula::falsity();
                FormulaPtr in_q =
                    q.vote(j).prefers(x, y) ? Formula::truth() : Formula::falsity();
                parts.push_back(Formula::iff(std::move(in_p), std::move(in_q)));
            }
        }
    }
    return Formula::conj_all(std::move(parts));
}

} // namespace epivote
