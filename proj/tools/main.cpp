#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "epivote/commands.hpp"
#include "epivote/parser.hpp"

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream in(path);
    if (!in)
        throw epivote::DomainError("cannot open scenario file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct Options {
    std::string scenario_file;
    std::string example_name;
    std::string point_override;
};

epivote::Session open_session(const Options& opts) {
    if (opts.scenario_file.empty() == opts.example_name.empty())
        throw epivote::DomainError(
            "pick a scenario with exactly one of --scenario FILE or --example NAME");
    std::string text = opts.scenario_file.empty()
                           ? epivote::bundled_example(opts.example_name)
                           : read_input(opts.scenario_file);
    epivote::Session session{epivote::load_scenario(text)};
    if (!opts.point_override.empty())
        session.scenario.point = session.scenario.model.state_index(opts.point_override);
    return session;
}

int finish(const epivote::CommandResult& result) {
    std::cout << result.output;
    return result.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Model checker and solver for strategic voting under incomplete "
                 "knowledge"};
    app.require_subcommand(1);

    Options opts;
    app.add_option("--scenario", opts.scenario_file,
                   "scenario file ('-' reads standard input)");
    app.add_option("--example", opts.example_name, "bundled example (ex1..ex9, table1)");
    app.add_option("--point", opts.point_override, "evaluate at this state");

    std::string formula_text;
    auto* eval_cmd = app.add_subcommand("eval", "truth of a formula at the point");
    eval_cmd->add_option("formula", formula_text, "formula text")->required();

    auto* valid_cmd = app.add_subcommand("valid", "truth at every state");
    valid_cmd->add_option("formula", formula_text, "formula text")->required();

    int voter = 0;
    auto* classify_cmd =
        app.add_subcommand("classify", "knowledge-of-manipulation report");
    classify_cmd->add_option("--voter", voter, "the voter to classify")->required();

    bool reduce_ballots = false;
    auto* equilibria_cmd =
        app.add_subcommand("equilibria", "enumerate conditional equilibria");
    equilibria_cmd->add_flag("--reduce-ballots", reduce_ballots,
                             "quotient plurality ballots by top candidate");

    bool payoffs = false;
    auto* matrix_cmd = app.add_subcommand("matrix", "conditional game matrix");
    matrix_cmd->add_flag("--payoffs", payoffs, "ranking payoffs instead of outcomes");

    bool want_possible = false;
    bool want_necessary = false;
    bool cowinner_basis = false;
    auto* winners_cmd = app.add_subcommand("winners", "possible/necessary winners");
    winners_cmd->add_flag("--possible", want_possible, "winners in some state");
    winners_cmd->add_flag("--necessary", want_necessary, "winners in every state");
    winners_cmd->add_flag("--cowinner", cowinner_basis, "count tied cowinners");

    auto* announce_cmd =
        app.add_subcommand("announce", "restrict the model by a true announcement");
    announce_cmd->add_option("formula", formula_text, "formula text")->required();

    bool truthful = false;
    std::string ballot_text;
    auto* declare_cmd = app.add_subcommand("declare", "declare a voter's ballot");
    declare_cmd->add_option("--voter", voter, "the declaring voter")->required();
    declare_cmd->add_flag("--truthful", truthful, "declare the truthful vote");
    declare_cmd->add_option("--vote", ballot_text, "ballot, e.g. \"a b c d\"");

    auto* repl_cmd = app.add_subcommand("repl", "interactive session");

    std::string example_name_arg;
    auto* example_cmd = app.add_subcommand("example", "print a bundled scenario");
    example_cmd->add_option("name", example_name_arg, "ex1..ex9 or table1")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (example_cmd->parsed())
            return finish(epivote::cmd_example(example_name_arg));

        epivote::Session session = open_session(opts);
        if (eval_cmd->parsed())
            return finish(epivote::cmd_eval(session, formula_text));
        if (valid_cmd->parsed())
            return finish(epivote::cmd_valid(session, formula_text));
        if (classify_cmd->parsed())
            return finish(epivote::cmd_classify(session, voter));
        if (equilibria_cmd->parsed())
            return finish(epivote::cmd_equilibria(session, reduce_ballots));
        if (matrix_cmd->parsed())
            return finish(epivote::cmd_matrix(session, payoffs));
        if (winners_cmd->parsed()) {
            if (want_possible == want_necessary)
                throw epivote::DomainError(
                    "pick exactly one of --possible or --necessary");
            return finish(epivote::cmd_winners(
                session, want_necessary ? epivote::WinnerMode::necessary
                                        : epivote::WinnerMode::possible,
                cowinner_basis ? epivote::WinnerBasis::cowinner
                               : epivote::WinnerBasis::winner));
        }
        if (announce_cmd->parsed())
            return finish(epivote::cmd_announce(session, formula_text));
        if (declare_cmd->parsed()) {
            if (truthful == !ballot_text.empty())
                throw epivote::DomainError(
                    "pick exactly one of --truthful or --vote \"...\"");
            return finish(epivote::cmd_declare(
                session, voter,
                truthful ? std::nullopt : std::optional<std::string>(ballot_text)));
        }
        if (repl_cmd->parsed())
            return epivote::run_repl(session, std::cin, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::cerr << "error: no command\n";
    return 2;
}
