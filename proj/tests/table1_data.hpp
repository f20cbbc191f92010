#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace epivote::testing {

/// The published 16x4 conditional-game table for the two-state model: rows
/// are voter 1's conditional ballots (class of t, class of u), columns
/// voter 2's single ballot, cells the per-class worst outcomes.
///
/// Six cells of the printed table are corrupt. Four ((ab,c), (ab,d),
/// (ad,c), (bd,c)) name a winner that receives no vote at state u, which
/// no tie order can produce; two ((cb,a), (db,a)) need the tie to rank a
/// over b while the rest of the table needs b over a. They are corrected
/// here to the values the definitions force (aba, aba, aca, bcb, aba,
/// aba). The other 58 cells are verbatim.
struct Table1Row {
    const char* row;
    std::array<const char*, 4> cells; // columns a, b, c, d
};

inline const std::vector<Table1Row>& table1() {
    static const std::vector<Table1Row> rows = {
        {"aa", {"aaa", "bbb", "aaa", "aaa"}},
        {"ab", {"aba", "bbb", "aba", "aba"}},
        {"ac", {"aaa", "bbb", "aca", "aca"}},
        {"ad", {"aaa", "bbb", "aca", "ada"}},
        {"ba", {"baa", "bbb", "baa", "baa"}},
        {"bb", {"bbb", "bbb", "bbb", "bbb"}},
        {"bc", {"baa", "bbb", "bcb", "bcb"}},
        {"bd", {"baa", "bbb", "bcb", "bdb"}},
        {"ca", {"aaa", "bbb", "caa", "caa"}},
        {"cb", {"aba", "bbb", "cbb", "cbb"}},
        {"cc", {"aaa", "bbb", "ccc", "ccc"}},
        {"cd", {"aaa", "bbb", "ccc", "cdc"}},
        {"da", {"aaa", "bbb", "caa", "daa"}},
        {"db", {"aba", "bbb", "cbb", "dbb"}},
        {"dc", {"aaa", "bbb", "ccc", "dcc"}},
        {"dd", {"aaa", "bbb", "ccc", "ddd"}},
    };
    return rows;
}

/// The full-knowledge 4x4 plurality game: outcome matrix and ranked-payoff
/// matrix, as published (rows voter 1, columns voter 2, order a b c d).
inline const std::array<std::array<const char*, 4>, 4>& example3_outcomes() {
    static const std::array<std::array<const char*, 4>, 4> cells = {{
        {"a", "b", "a", "a"},
        {"b", "b", "b", "b"},
        {"a", "b", "c", "d"},
        {"a", "b", "d", "d"},
    }};
    return cells;
}

inline const std::array<std::array<const char*, 4>, 4>& example3_payoffs() {
    static const std::array<std::array<const char*, 4>, 4> cells = {{
        {"30", "11", "30", "30"},
        {"11", "11", "11", "11"},
        {"30", "11", "22", "03"},
        {"30", "11", "03", "03"},
    }};
    return cells;
}

} // namespace epivote::testing
