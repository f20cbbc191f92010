#pragma once

#include <optional>
#include <string_view>

#include "epivote/formula.hpp"
#include "epivote/model.hpp"

namespace epivote {

/// Parse a formula. Candidate tokens are checked against `candidates` and
/// voter tokens against `voters`. State-referencing sugar (prof, vote,
/// opref, decl) needs `states`; without a model those forms are a parse
/// error.
FormulaPtr parse_formula(std::string_view text, const CandidateSet& candidates,
                         int voters, const ProfileModel* states = nullptr);

/// Token-level comparison: true iff the two strings carry the same token
/// sequence, i.e. differ only in whitespace.
bool same_tokens(std::string_view a, std::string_view b);

/// True for names the formula grammar reserves; candidate and state names
/// must avoid them.
bool is_reserved_word(std::string_view name);

/// Identifier shape shared by candidate and state names.
bool is_identifier(std::string_view name);

} // namespace epivote
