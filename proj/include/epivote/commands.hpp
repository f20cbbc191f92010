#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "epivote/model.hpp"
#include "epivote/scenario.hpp"

namespace epivote {

/// Output and exit code of one command. 0 = success, 1 = the requested
/// verdict is false or the requested set is empty, 2 = error.
struct CommandResult {
    std::string output;
    int exit_code = 0;
};

/// A scenario in flight: announcements re-point and shrink the model,
/// declarations accumulate in the context.
struct Session {
    Scenario scenario;
    EvalContext ctx;

    explicit Session(Scenario s) : scenario(std::move(s)), ctx(scenario.fresh_context()) {}
};

CommandResult cmd_eval(const Session& session, const std::string& formula_text);
CommandResult cmd_valid(const Session& session, const std::string& formula_text);
CommandResult cmd_classify(const Session& session, int voter);
CommandResult cmd_equilibria(const Session& session, bool reduce_ballots);
CommandResult cmd_matrix(const Session& session, bool payoffs);
CommandResult cmd_winners(const Session& session, WinnerMode mode, WinnerBasis basis);
/// Applies the announcement to the session and reports the trace plus the
/// restricted scenario.
CommandResult cmd_announce(Session& session, const std::string& formula_text);
/// Declares a ballot ("a b c d") or, without one, the truthful vote.
CommandResult cmd_declare(Session& session, int voter,
                          const std::optional<std::string>& ballot_names);
CommandResult cmd_example(const std::string& name);

/// Interactive loop over the same commands; returns the process exit code.
int run_repl(Session& session, std::istream& in, std::ostream& out);

} // namespace epivote
