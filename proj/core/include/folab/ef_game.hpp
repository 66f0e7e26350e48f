#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "folab/formula.hpp"
#include "folab/graph.hpp"

namespace folab {

/// Largest order the engine accepts per board (positions are 64-bit masks).
inline constexpr std::size_t kEngineMaxOrder = 64;

/// Refuse searches whose position-count estimate exceeds this.
inline constexpr double kEngineStateCap = 1e8;

/// Alternation budget meaning "no restriction".
inline constexpr std::size_t kUnbounded = static_cast<std::size_t>(-1);

enum class Side : std::uint8_t { G = 0, H = 1 };

inline Side other(Side s) noexcept { return s == Side::G ? Side::H : Side::G; }
inline const char* side_name(Side s) noexcept { return s == Side::G ? "G" : "H"; }

struct Move {
    Side side;
    Vertex vertex;
    friend bool operator==(const Move&, const Move&) = default;
};

/// Marked pairs (vertex in G, vertex in H), one per round so far.
struct GamePosition {
    std::vector<std::pair<Vertex, Vertex>> pairs;
};

/// Alternation bookkeeping. `last` is the board of Spoiler's previous move;
/// `remaining` the number of board switches still allowed.
struct AltState {
    std::optional<Side> last;
    std::size_t remaining = kUnbounded;

    bool allows(Side s) const noexcept { return !last || *last == s || remaining > 0; }
    AltState after(Side s) const noexcept;
};

/// Is the correspondence of `pos` a partial isomorphism between g and h?
bool is_partial_isomorphism(const Graph& g, const Graph& h, const GamePosition& pos);

/// Sum over j <= rounds of C(ng, j) * P(nh, j): the number of positions a
/// search of that many rounds may visit.
double estimated_states(std::size_t ng, std::size_t nh, std::size_t rounds);

struct ReplyValue {
    Vertex vertex;
    /// Rounds Spoiler still needs after this reply; nullopt when Spoiler cannot
    /// win within the remaining budget.
    std::optional<std::size_t> value;
};

struct MoveValue {
    Move move;
    /// Rounds (this one included) Spoiler needs after playing `move`, or
    /// nullopt when the budget does not suffice.
    std::optional<std::size_t> value;
    std::vector<ReplyValue> replies; ///< legal Duplicator answers only
};

struct MoveAnalysis {
    std::size_t budget = 0;
    std::optional<std::size_t> value; ///< min over moves
    std::optional<Move> best;         ///< argmin, lowest side then vertex
    std::vector<MoveValue> moves;     ///< every unmarked vertex of both boards
};

/// Spoiler's move and the sub-strategy for each legal reply. A node with
/// no replies wins on the spot.
struct StrategyNode {
    Move move;
    std::vector<std::pair<Vertex, std::unique_ptr<StrategyNode>>> replies;

    std::size_t height() const;
};

/// Memoised solver for one pair of boards. Entries keep monotone bounds per
/// position, so deepening reuses earlier work.
class EfGame {
public:
    EfGame(const Graph& g, const Graph& h);
    ~EfGame();
    EfGame(EfGame&&) noexcept;
    EfGame& operator=(EfGame&&) noexcept;

    const Graph& g() const noexcept;
    const Graph& h() const noexcept;

    /// Throws InvalidArgument when `pos` is not a partial isomorphism or out
    /// of range; CapExceeded when the search estimate exceeds the cap.
    bool spoiler_wins(const GamePosition& pos, std::size_t k, const AltState& alt = {});

    /// Smallest k <= budget with spoiler_wins, or nullopt.
    std::optional<std::size_t> value(const GamePosition& pos, std::size_t budget, const AltState& alt = {});

    /// Legal replies to `m` that keep the correspondence a partial isomorphism.
    std::vector<Vertex> replies(const GamePosition& pos, Move m) const;

    MoveAnalysis analyze(const GamePosition& pos, std::size_t budget, const AltState& alt = {});

    /// Optimal strategy tree from `pos` with value <= budget, or nullptr.
    std::unique_ptr<StrategyNode> strategy(const GamePosition& pos, std::size_t budget, const AltState& alt = {});

    std::size_t memo_size() const noexcept;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

bool spoiler_wins(const Graph& g, const Graph& h, const GamePosition& pos, std::size_t k);

/// D(g, h). Throws InvalidArgument when g and h are isomorphic.
std::size_t distinguishing_depth(const Graph& g, const Graph& h);

/// D_r(g, h): Spoiler may switch boards at most r times.
std::size_t distinguishing_depth_alt(const Graph& g, const Graph& h, std::size_t r);

MoveAnalysis analyze_moves(const Graph& g, const Graph& h, const GamePosition& pos, std::size_t budget,
                           std::optional<AltState> alt = std::nullopt);

/// Sentence true on g, false on h, of quantifier depth D(g, h) (or D_r
/// when `r` is given). Moves in g become E, moves in h become A; variables
/// are x1, x2, ... by round.
FormulaPtr synthesize_sentence(const Graph& g, const Graph& h, std::optional<std::size_t> r = std::nullopt);

/// Sentence read off an explicit strategy for the given boards.
FormulaPtr sentence_from_strategy(const Graph& g, const Graph& h, const StrategyNode& root);

struct FamilyDepth {
    std::size_t depth = 0;
    std::size_t argmax = 0; ///< index into the family
    std::size_t compared = 0;
};

/// max D(g, h) over the non-isomorphic members of `family`. Throws
/// InvalidArgument when every member is isomorphic to g.
FamilyDepth depth_over_family(const Graph& g, std::span<const Graph> family);

/// I(g): depth_over_family against all other graphs of the same order;
/// 0 when there are none (order <= 1). Order cap 7.
std::size_t same_order_depth(const Graph& g);

} // namespace folab
