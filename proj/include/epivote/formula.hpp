#pragma once

#include <memory>
#include <string>
#include <vector>

#include "epivote/voting.hpp"

namespace epivote {

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// One assignment `x >>_voter y := rhs` of a declared-vote atom.
struct AssignItem {
    int x;
    int voter;
    int y;
    FormulaPtr rhs;
};

/// Immutable formula tree for the logic of votes and knowledge: preference
/// and declared-vote atoms, boolean connectives, individual and group
/// knowledge, public announcement and assignment, plus two derived atoms
/// (win, outcome preference between fixed profiles).
class Formula {
  public:
    enum class Kind {
        True,
        False,
        PrefAtom,    // a >_i b
        DeclAtom,    // a >>_i b
        Win,         // win(a)
        Not,
        And,
        Or,
        Imp,
        Iff,
        Know,        // K_i
        Common,      // C_G
        Distrib,     // D_G
        Announce,    // [! phi] psi
        Assign,      // [a >>_i b := phi, ...] psi
        OutcomePref, // P >_i Q for fixed profiles
    };

    static FormulaPtr truth();
    static FormulaPtr falsity();
    static FormulaPtr pref(int x, int voter, int y);
    static FormulaPtr decl(int x, int voter, int y);
    static FormulaPtr win(int candidate);
    static FormulaPtr negate(FormulaPtr f);
    static FormulaPtr conj(FormulaPtr a, FormulaPtr b);
    static FormulaPtr disj(FormulaPtr a, FormulaPtr b);
    static FormulaPtr implies(FormulaPtr a, FormulaPtr b);
    static FormulaPtr iff(FormulaPtr a, FormulaPtr b);
    static FormulaPtr know(int voter, FormulaPtr f);
    static FormulaPtr common(std::vector<int> group, FormulaPtr f);
    static FormulaPtr distributed(std::vector<int> group, FormulaPtr f);
    static FormulaPtr announce(FormulaPtr premise, FormulaPtr body);
    static FormulaPtr assign(std::vector<AssignItem> items, FormulaPtr body);
    static FormulaPtr outcome_pref(int voter, std::shared_ptr<const Profile> left,
                                   std::shared_ptr<const Profile> right,
                                   std::string left_label = {},
                                   std::string right_label = {});

    /// Balanced folds (generated junctions can be tens of thousands wide,
    /// and evaluation recurses). The empty conjunction is true, the empty
    /// disjunction false.
    static FormulaPtr conj_all(std::vector<FormulaPtr> parts);
    static FormulaPtr disj_all(std::vector<FormulaPtr> parts);

    Kind kind() const { return kind_; }
    int voter() const { return voter_; }
    int x() const { return x_; }
    int y() const { return y_; }
    const FormulaPtr& left() const { return left_; }
    const FormulaPtr& right() const { return right_; }
    const std::vector<int>& group() const;
    const std::vector<AssignItem>& items() const;
    const Profile& left_profile() const;
    const Profile& right_profile() const;
    const std::string& left_label() const;
    const std::string& right_label() const;

  protected:
    explicit Formula(Kind kind) : kind_(kind) {}

  private:
    struct Extra {
        std::vector<int> group;
        std::vector<AssignItem> items;
        std::shared_ptr<const Profile> left_profile;
        std::shared_ptr<const Profile> right_profile;
        std::string left_label;
        std::string right_label;
    };

    Kind kind_;
    int voter_ = 0;
    int x_ = -1;
    int y_ = -1;
    FormulaPtr left_;
    FormulaPtr right_;
    std::unique_ptr<Extra> extra_;
};

/// Structural equality. Display labels on outcome atoms are ignored.
bool formulas_equal(const Formula& a, const Formula& b);
inline bool formulas_equal(const FormulaPtr& a, const FormulaPtr& b) {
    return formulas_equal(*a, *b);
}

/// Canonical concrete syntax; parses back to an equal tree.
std::string print_formula(const Formula& f, const CandidateSet& candidates);
inline std::string print_formula(const FormulaPtr& f, const CandidateSet& candidates) {
    return print_formula(*f, candidates);
}

/// The description of a profile: every preference atom it makes true,
/// conjoined with the negation of every atom it makes false.
FormulaPtr profile_formula(const Profile& profile);

/// The voter-i part of a profile description.
FormulaPtr vote_formula(int voter, const Vote& vote);

/// True iff the two profiles agree on every voter other than `voter`.
bool differ_only_in(int voter, const Profile& p, const Profile& q);

/// The description-level sentence comparing the two profiles pointwise on
/// every atom of every other voter; a model validity iff differ_only_in.
FormulaPtr differ_formula(int voter, const Profile& p, const Profile& q);

} // namespace epivote
