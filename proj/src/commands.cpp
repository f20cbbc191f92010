#include "epivote/commands.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "epivote/dynamics.hpp"
#include "epivote/equilibrium.hpp"
#include "epivote/manipulation.hpp"
#include "epivote/parser.hpp"

namespace epivote {

namespace {

CommandResult error_result(const std::exception& e) {
    return {std::string("error: ") + e.what() + "\n", 2};
}

std::string equilibrium_line(const ProfileModel& model, const ConditionalProfile& cp) {
    std::string out;
    for (int i = 1; i <= model.voters(); ++i) {
        if (i > 1)
            out += " | ";
        out += std::to_string(i) + ":";
        auto classes = sorted_classes(model, i);
        for (size_t k = 0; k < classes.size(); ++k) {
            out += " {";
            for (size_t pos = 0; pos < classes[k].size(); ++pos) {
                if (pos > 0)
                    out += ",";
                out += model.state_name(classes[k][pos]);
            }
            out += "}=" +
                   cp.ballots[static_cast<size_t>(i - 1)][k].to_string(model.candidates());
        }
    }
    return out;
}

} // namespace

CommandResult cmd_eval(const Session& session, const std::string& formula_text) {
    try {
        FormulaPtr f = parse_formula(formula_text, session.scenario.candidates(),
                                     session.scenario.voters(), &session.scenario.model);
        bool verdict =
            eval_formula(session.scenario.model, session.scenario.point, session.ctx, f);
        return {verdict ? "true\n" : "false\n", verdict ? 0 : 1};
    } catch (const std::exception& e) {
        return error_result(e);
    }
}

CommandResult cmd_valid(const Session& session, const std::string& formula_text) {
    try {
        FormulaPtr f = parse_formula(formula_text, session.scenario.candidates(),
                                     session.scenario.voters(), &session.scenario.model);
        bool verdict = valid_on_model(session.scenario.model, session.ctx, f);
        return {verdict ? "true\n" : "false\n", verdict ? 0 : 1};
    } catch (const std::exception& e) {
        return error_result(e);
    }
}

CommandResult cmd_classify(const Session& session, int voter) {
    try {
        ManipulationReport report =
            classify(session.scenario.model, session.scenario.point, voter,
                     session.scenario.rule, session.scenario.tiebreak);
        return {report_to_string(report, session.scenario.candidates()), 0};
    } catch (const std::exception& e) {
        return error_result(e);
    }
}

CommandResult cmd_equilibria(const Session& session, bool reduce_ballots) {
    try {
        std::vector<ConditionalProfile> found =
            enumerate_equilibria(session.scenario.model, session.scenario.rule,
                                 session.scenario.tiebreak, reduce_ballots);
        std::string out;
        for (const ConditionalProfile& cp : found)
            out += equilibrium_line(session.scenario.model, cp) + "\n";
        if (found.empty())
            return {"(none)\n", 1};
        return {out, 0};
    } catch (const std::exception& e) {
        return error_result(e);
    }
}

CommandResult cmd_matrix(const Session& session, bool payoffs) {
    try {
        const ProfileModel& model = session.scenario.model;
        if (model.voters() == 2) {
            GameMatrix matrix = game_matrix(model, session.scenario.rule,
                                            session.scenario.tiebreak, payoffs);
            return {to_tsv(matrix), 0};
        }
        // More than two voters has no matrix shape; list the grid flat.
        bool reduced = session.scenario.rule.is_plurality();
        std::string out;
        for (const ConditionalProfile& cp :
             enumerate_all_conditional_profiles(model, session.scenario.rule, reduced)) {
            std::string label;
            for (int i = 1; i <= model.voters(); ++i) {
                if (i > 1)
                    label += ' ';
                label += conditional_vote_label(
                    model, cp.ballots[static_cast<size_t>(i - 1)], reduced);
            }
            out += label + "\t" +
                   cell_string(model, cp, session.scenario.rule,
                               session.scenario.tiebreak, payoffs) +
                   "\n";
        }
        return {out, 0};
    } catch (const std::exception& e) {
        return error_result(e);
    }
}

CommandResult cmd_winners(const Session& session, WinnerMode mode, WinnerBasis basis) {
    try {
        std::vector<int> winners =
            possible_necessary_winners(session.scenario.model, session.scenario.rule,
                                       session.scenario.tiebreak, mode, basis);
        if (winners.empty())
            return {"(none)\n", 1};
        std::string out;
        for (size_t k = 0; k < winners.size(); ++k) {
            if (k > 0)
                out += ' ';
            out += session.scenario.candidates().name(winners[k]);
        }
        return {out + "\n", 0};
    } catch (const std::exception& e) {
        return error_result(e);
    }
}

CommandResult cmd_announce(Session& session, const std::string& formula_text) {
    try {
        FormulaPtr f = parse_formula(formula_text, session.scenario.candidates(),
                                     session.scenario.voters(), &session.scenario.model);
        AnnounceResult result =
            announce(session.scenario.model, session.scenario.point, session.ctx, f);
        std::string trace =
            announce_trace(*f, session.scenario.candidates(), result.surviving);
        session.scenario.model = std::move(result.model);
        session.scenario.point = result.point;
        session.ctx = std::move(result.ctx);
        return {trace + "\n" + serialize_scenario(session.scenario), 0};
    } catch (const std::exception& e) {
        return error_result(e);
    }
}

CommandResult cmd_declare(Session& session, int voter,
                          const std::optional<std::string>& ballot_names) {
    try {
        std::vector<AssignItem> batch;
        if (ballot_names.has_value()) {
            std::istringstream in(*ballot_names);
            std::vector<std::string> names;
            std::string word;
            while (in >> word)
                names.push_back(word);
            batch = declare_vote_batch(
                voter, Vote::from_names(session.scenario.candidates(), names));
        } else {
            batch = declare_truthful_batch(voter, session.scenario.candidates().size());
        }
        if (voter < 1 || voter > session.scenario.voters())
            throw DomainError("unknown voter: " + std::to_string(voter));
        session.ctx = assign(session.scenario.model, session.ctx, batch);
        std::string out = assign_trace(batch, session.scenario.candidates()) + "\n";
        for (int s = 0; s < session.scenario.model.state_count(); ++s) {
            auto declared = declared_winner(session.scenario.model, session.ctx, s);
            out += "state " + session.scenario.model.state_name(s) +
                   ": declared winner: " +
                   (declared.has_value() ? session.scenario.candidates().name(*declared)
                                         : std::string("undefined")) +
                   "\n";
        }
        return {out, 0};
    } catch (const std::exception& e) {
        return error_result(e);
    }
}

CommandResult cmd_example(const std::string& name) {
    try {
        return {bundled_example(name), 0};
    } catch (const std::exception& e) {
        return error_result(e);
    }
}

int run_repl(Session& session, std::istream& in, std::ostream& out) {
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream words(line);
        std::string command;
        if (!(words >> command))
            continue;
        std::string rest;
        std::getline(words, rest);
        while (!rest.empty() && rest.front() == ' ')
            rest.erase(rest.begin());
        out << "> " << line << "\n";
        CommandResult result;
        if (command == "quit" || command == "exit") {
            return 0;
        } else if (command == "eval") {
            result = cmd_eval(session, rest);
        } else if (command == "valid") {
            result = cmd_valid(session, rest);
        } else if (command == "classify") {
            try {
                result = cmd_classify(session, std::stoi(rest));
            } catch (const std::exception&) {
                result = {"error: classify needs a voter number\n", 2};
            }
        } else if (command == "equilibria") {
            result = cmd_equilibria(session, rest == "--reduce-ballots");
        } else if (command == "matrix") {
            result = cmd_matrix(session, rest == "--payoffs");
        } else if (command == "winners") {
            WinnerMode mode = rest.find("--necessary") != std::string::npos
                                  ? WinnerMode::necessary
                                  : WinnerMode::possible;
            WinnerBasis basis = rest.find("--cowinner") != std::string::npos
                                    ? WinnerBasis::cowinner
                                    : WinnerBasis::winner;
            result = cmd_winners(session, mode, basis);
        } else if (command == "announce") {
            result = cmd_announce(session, rest);
        } else if (command == "declare") {
            std::istringstream args(rest);
            int voter = 0;
            if (!(args >> voter)) {
                result = {"error: declare needs a voter number\n", 2};
            } else {
                std::string tail;
                std::getline(args, tail);
                while (!tail.empty() && tail.front() == ' ')
                    tail.erase(tail.begin());
                if (tail.empty() || tail == "--truthful")
                    result = cmd_declare(session, voter, std::nullopt);
                else
                    result = cmd_declare(session, voter, tail);
            }
        } else if (command == "point") {
            try {
                session.scenario.point = session.scenario.model.state_index(rest);
                result = {"point: " + rest + "\n", 0};
            } catch (const std::exception& e) {
                result = {std::string("error: ") + e.what() + "\n", 2};
            }
        } else if (command == "show") {
            result = {serialize_scenario(session.scenario), 0};
        } else if (command == "help") {
            result = {"commands: eval <formula> | valid <formula> | classify <voter> | "
                      "equilibria [--reduce-ballots] | matrix [--payoffs] | winners "
                      "[--necessary] [--cowinner] | announce <formula> | declare "
                      "<voter> [ballot...] | point <state> | show | quit\n",
                      0};
        } else {
            result = {"error: unknown command '" + command + "' (try help)\n", 2};
        }
        out << result.output;
    }
    return 0;
}

} // namespace epivote
