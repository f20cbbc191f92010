#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "epivote/eval.hpp"
#include "epivote/model.hpp"

namespace epivote {

/// A fully validated scenario: the election parameters plus the knowledge
/// profile they describe. Partial-profile scenarios arrive here already
/// expanded.
struct Scenario {
    VotingRule rule;
    TieBreak tiebreak;
    ProfileModel model;
    int point;

    const CandidateSet& candidates() const { return model.candidates(); }
    int voters() const { return model.voters(); }
    EvalContext fresh_context() const {
        return EvalContext::fresh(rule, tiebreak, model.state_count(), model.voters());
    }
};

/// Parse and validate the line-oriented scenario format. Errors carry the
/// offending line.
Scenario load_scenario(std::string_view text);

/// Canonical text for a scenario; loading it back yields an identical
/// model.
std::string serialize_scenario(const Scenario& scenario);

/// Names of the worked examples shipped with the tool (ex1..ex9, table1).
std::vector<std::string> bundled_example_names();

/// The scenario text of a bundled example. DomainError for unknown names.
const std::string& bundled_example(std::string_view name);

} // namespace epivote
