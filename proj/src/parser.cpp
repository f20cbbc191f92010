#include "epivote/parser.hpp"

#include <cctype>
#include <vector>

namespace epivote {

namespace {

enum class Tok {
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Tilde,
    Amp,
    Pipe,
    Arrow,   // ->
    DArrow,  // <->
    Comma,
    Walrus,  // :=
    Bang,
    PrefOp,  // >_
    DeclOp,  // >>_
    KayWord, // the modality K; "K3" lexes as K followed by 3
    Int,
    Ident,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    int value = 0;
    int line = 1;
    int column = 1;
};

class Lexer {
  public:
    explicit Lexer(std::string_view text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

  private:
    void advance() {
        if (pending_.has_value()) {
            current_ = *pending_;
            pending_.reset();
            return;
        }
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            bump();
        current_ = Token{Tok::End, "", 0, line_, column_};
        if (pos_ >= text_.size())
            return;
        current_.line = line_;
        current_.column = column_;
        char c = text_[pos_];
        switch (c) {
        case '(': bump(); current_.kind = Tok::LParen; return;
        case ')': bump(); current_.kind = Tok::RParen; return;
        case '{': bump(); current_.kind = Tok::LBrace; return;
        case '}': bump(); current_.kind = Tok::RBrace; return;
        case '[': bump(); current_.kind = Tok::LBracket; return;
        case ']': bump(); current_.kind = Tok::RBracket; return;
        case '~': bump(); current_.kind = Tok::Tilde; return;
        case '&': bump(); current_.kind = Tok::Amp; return;
        case '|': bump(); current_.kind = Tok::Pipe; return;
        case ',': bump(); current_.kind = Tok::Comma; return;
        case '!': bump(); current_.kind = Tok::Bang; return;
        default: break;
        }
        if (c == ':') {
            bump();
            if (pos_ < text_.size() && text_[pos_] == '=') {
                bump();
                current_.kind = Tok::Walrus;
                return;
            }
            fail("expected ':=' after ':'");
        }
        if (c == '-') {
            bump();
            if (pos_ < text_.size() && text_[pos_] == '>') {
                bump();
                current_.kind = Tok::Arrow;
                return;
            }
            fail("expected '->' after '-'");
        }
        if (c == '<') {
            bump();
            if (pos_ + 1 < text_.size() && text_[pos_] == '-' && text_[pos_ + 1] == '>') {
                bump();
                bump();
                current_.kind = Tok::DArrow;
                return;
            }
            fail("expected '<->' after '<'");
        }
        if (c == '>') {
            bump();
            if (pos_ < text_.size() && text_[pos_] == '>') {
                bump();
                if (pos_ < text_.size() && text_[pos_] == '_') {
                    bump();
                    current_.kind = Tok::DeclOp;
                    return;
                }
                fail("expected '>>_'");
            }
            if (pos_ < text_.size() && text_[pos_] == '_') {
                bump();
                current_.kind = Tok::PrefOp;
                return;
            }
            fail("expected '>_' or '>>_' after '>'");
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (pos_ < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                digits += text_[pos_];
                bump();
            }
            if (digits.size() > 6)
                fail("number too large: " + digits);
            current_.kind = Tok::Int;
            current_.text = digits;
            current_.value = std::stoi(digits);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string word;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                    text_[pos_] == '_')) {
                word += text_[pos_];
                bump();
            }
            // "K", "K3": the knowledge modality and its voter. Splitting here
            // keeps "K3 phi" and "K 3 phi" the same token stream.
            if (word[0] == 'K') {
                bool digits_only = word.size() > 1;
                for (size_t i = 1; i < word.size(); ++i)
                    if (!std::isdigit(static_cast<unsigned char>(word[i])))
                        digits_only = false;
                if (word.size() == 1) {
                    current_.kind = Tok::KayWord;
                    return;
                }
                if (digits_only) {
                    if (word.size() > 7)
                        fail("voter number too large: " + word.substr(1));
                    current_.kind = Tok::KayWord;
                    pending_ = Token{Tok::Int, word.substr(1),
                                     std::stoi(word.substr(1)), current_.line,
                                     current_.column + 1};
                    return;
                }
            }
            current_.kind = Tok::Ident;
            current_.text = word;
            return;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    void bump() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line_, column_);
    }

    std::string_view text_;
    size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
    Token current_;
    std::optional<Token> pending_;
};

class FormulaParser {
  public:
    FormulaParser(std::string_view text, const CandidateSet& candidates, int voters,
                  const ProfileModel* states)
        : lexer_(text), candidates_(candidates), voters_(voters), states_(states) {}

    FormulaPtr parse() {
        FormulaPtr f = parse_iff();
        expect(Tok::End, "trailing input after formula");
        return f;
    }

  private:
    FormulaPtr parse_iff() {
        FormulaPtr f = parse_imp();
        while (lexer_.peek().kind == Tok::DArrow) {
            lexer_.take();
            f = Formula::iff(std::move(f), parse_imp());
        }
        return f;
    }

    FormulaPtr parse_imp() {
        FormulaPtr f = parse_or();
        if (lexer_.peek().kind == Tok::Arrow) {
            lexer_.take();
            return Formula::implies(std::move(f), parse_imp());
        }
        return f;
    }

    FormulaPtr parse_or() {
        FormulaPtr f = parse_and();
        while (lexer_.peek().kind == Tok::Pipe) {
            lexer_.take();
            f = Formula::disj(std::move(f), parse_and());
        }
        return f;
    }

    FormulaPtr parse_and() {
        FormulaPtr f = parse_unary();
        while (lexer_.peek().kind == Tok::Amp) {
            lexer_.take();
            f = Formula::conj(std::move(f), parse_unary());
        }
        return f;
    }

    FormulaPtr parse_unary() {
        const Token& t = lexer_.peek();
        switch (t.kind) {
        case Tok::Tilde:
            lexer_.take();
            return Formula::negate(parse_unary());
        case Tok::KayWord: {
            lexer_.take();
            int voter = expect_voter();
            return Formula::know(voter, parse_unary());
        }
        case Tok::LBracket: {
            lexer_.take();
            if (lexer_.peek().kind == Tok::Bang) {
                lexer_.take();
                FormulaPtr premise = parse_iff();
                expect(Tok::RBracket, "expected ']' after announcement");
                return Formula::announce(std::move(premise), parse_unary());
            }
            std::vector<AssignItem> items = parse_assign_list();
            expect(Tok::RBracket, "expected ']' after assignment list");
            return Formula::assign(std::move(items), parse_unary());
        }
        case Tok::Ident:
            if (t.text == "C" || t.text == "D") {
                // Lookahead: a brace means the group modality; otherwise the
                // identifier is a candidate starting an atom.
                bool is_group = false;
                {
                    Lexer probe = lexer_;
                    probe.take();
                    is_group = probe.peek().kind == Tok::LBrace;
                }
                if (is_group) {
                    std::string word = lexer_.take().text;
                    std::vector<int> group = parse_group();
                    FormulaPtr body = parse_unary();
                    return word == "C" ? Formula::common(std::move(group), std::move(body))
                                       : Formula::distributed(std::move(group),
                                                              std::move(body));
                }
            }
            return parse_primary();
        default:
            return parse_primary();
        }
    }

    std::vector<int> parse_group() {
        expect(Tok::LBrace, "expected '{' to open a voter group");
        std::vector<int> group;
        while (lexer_.peek().kind == Tok::Int)
            group.push_back(expect_voter());
        expect(Tok::RBrace, "expected '}' to close a voter group");
        if (group.empty())
            fail("a voter group cannot be empty");
        return group;
    }

    std::vector<AssignItem> parse_assign_list() {
        std::vector<AssignItem> items;
        while (true) {
            const Token& t = lexer_.peek();
            if (t.kind == Tok::Ident && t.text == "decl") {
                // decl(i, s): declare voter i's vote at state s outright.
                Token kw = lexer_.take();
                expect(Tok::LParen, "expected '(' after decl");
                int voter = expect_voter();
                expect(Tok::Comma, "expected ',' in decl");
                const Profile& profile = state_profile(expect_state(), kw);
                expect(Tok::RParen, "expected ')' after decl");
                const Vote& vote = profile.vote(voter);
                for (int x = 0; x < vote.size(); ++x)
                    for (int y = 0; y < vote.size(); ++y)
                        if (x != y && vote.prefers(x, y))
                            items.push_back({x, voter, y, Formula::truth()});
            } else {
                int x = expect_candidate();
                expect(Tok::DeclOp, "expected '>>_' in assignment");
                int voter = expect_voter();
                int y = expect_candidate();
                expect(Tok::Walrus, "expected ':=' in assignment");
                FormulaPtr rhs = parse_iff();
                items.push_back({x, voter, y, std::move(rhs)});
            }
            if (lexer_.peek().kind != Tok::Comma)
                break;
            lexer_.take();
        }
        return items;
    }

    FormulaPtr parse_primary() {
        const Token& t = lexer_.peek();
        if (t.kind == Tok::LParen) {
            lexer_.take();
            FormulaPtr f = parse_iff();
            expect(Tok::RParen, "expected ')'");
            return f;
        }
        if (t.kind != Tok::Ident)
            fail("expected a formula");
        if (t.text == "true") {
            lexer_.take();
            return Formula::truth();
        }
        if (t.text == "false") {
            lexer_.take();
            return Formula::falsity();
        }
        if (t.text == "win") {
            lexer_.take();
            expect(Tok::LParen, "expected '(' after win");
            int c = expect_candidate();
            expect(Tok::RParen, "expected ')' after win");
            return Formula::win(c);
        }
        if (t.text == "prof") {
            Token kw = lexer_.take();
            expect(Tok::LParen, "expected '(' after prof");
            const Profile& profile = state_profile(expect_state(), kw);
            expect(Tok::RParen, "expected ')' after prof");
            return profile_formula(profile);
        }
        if (t.text == "vote") {
            Token kw = lexer_.take();
            expect(Tok::LParen, "expected '(' after vote");
            int voter = expect_voter();
            expect(Tok::Comma, "expected ',' in vote");
            const Profile& profile = state_profile(expect_state(), kw);
            expect(Tok::RParen, "expected ')' after vote");
            return vote_formula(voter, profile.vote(voter));
        }
        if (t.text == "opref") {
            Token kw = lexer_.take();
            expect(Tok::LParen, "expected '(' after opref");
            int voter = expect_voter();
            expect(Tok::Comma, "expected ',' in opref");
            Token left = expect_state();
            expect(Tok::Comma, "expected ',' in opref");
            Token right = expect_state();
            expect(Tok::RParen, "expected ')' after opref");
            auto left_profile = std::make_shared<Profile>(state_profile(left, kw));
            auto right_profile = std::make_shared<Profile>(state_profile(right, kw));
            return Formula::outcome_pref(voter, std::move(left_profile),
                                         std::move(right_profile), left.text,
                                         right.text);
        }
        // A candidate opens a preference or declared-vote atom.
        int x = expect_candidate();
        const Token& op = lexer_.peek();
        if (op.kind == Tok::PrefOp) {
            lexer_.take();
            int voter = expect_voter();
            int y = expect_candidate();
            return Formula::pref(x, voter, y);
        }
        if (op.kind == Tok::DeclOp) {
            lexer_.take();
            int voter = expect_voter();
            int y = expect_candidate();
            return Formula::decl(x, voter, y);
        }
        fail("expected '>_' or '>>_' after candidate");
    }

    int expect_candidate() {
        const Token t = lexer_.peek();
        if (t.kind != Tok::Ident)
            fail("expected a candidate name");
        lexer_.take();
        if (!candidates_.contains(t.text))
            throw ParseError("unknown candidate: " + t.text, t.line, t.column);
        return candidates_.index_of(t.text);
    }

    int expect_voter() {
        const Token t = lexer_.peek();
        if (t.kind != Tok::Int)
            fail("expected a voter number");
        lexer_.take();
        if (t.value < 1 || t.value > voters_)
            throw ParseError("unknown voter: " + t.text, t.line, t.column);
        return t.value;
    }

    Token expect_state() {
        const Token t = lexer_.peek();
        if (t.kind != Tok::Ident)
            fail("expected a state name");
        lexer_.take();
        return t;
    }

    const Profile& state_profile(const Token& state, const Token& keyword) {
        if (states_ == nullptr)
            throw ParseError("'" + keyword.text + "' needs a scenario to resolve states",
                             keyword.line, keyword.column);
        for (int s = 0; s < states_->state_count(); ++s)
            if (states_->state_name(s) == state.text)
                return states_->profile_at(s);
        throw ParseError("unknown state: " + state.text, state.line, state.column);
    }

    void expect(Tok kind, const std::string& message) {
        if (lexer_.peek().kind != kind)
            fail(message);
        lexer_.take();
    }

    [[noreturn]] void fail(const std::string& message) {
        const Token& t = lexer_.peek();
        throw ParseError(message, t.line, t.column);
    }

    Lexer lexer_;
    const CandidateSet& candidates_;
    int voters_;
    const ProfileModel* states_;
};

} // namespace

FormulaPtr parse_formula(std::string_view text, const CandidateSet& candidates,
                         int voters, const ProfileModel* states) {
    return FormulaParser(text, candidates, voters, states).parse();
}

bool same_tokens(std::string_view a, std::string_view b) {
    Lexer la(a);
    Lexer lb(b);
    while (true) {
        Token ta = la.take();
        Token tb = lb.take();
        if (ta.kind != tb.kind || ta.text != tb.text || ta.value != tb.value)
            return false;
        if (ta.kind == Tok::End)
            return true;
    }
}

bool is_reserved_word(std::string_view name) {
    if (name == "true" || name == "false" || name == "win" || name == "prof" ||
        name == "vote" || name == "opref" || name == "decl" || name == "C" ||
        name == "D" || name == "K")
        return true;
    // K7 and friends lex as the modality plus a voter number.
    if (name.size() > 1 && name[0] == 'K') {
        bool digits = true;
        for (size_t i = 1; i < name.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(name[i])))
                digits = false;
        if (digits)
            return true;
    }
    return false;
}

bool is_identifier(std::string_view name) {
    if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0])))
        return false;
    for (char c : name)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            return false;
    return true;
}

} // namespace epivote
