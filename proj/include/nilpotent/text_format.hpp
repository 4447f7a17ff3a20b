#pragma once

// Line-oriented input format:
//
//   # comment
//   group c=2 r=2          presentation header
//   row 0 0 2              relator matrix row (full form), or
//   relator a1^2 a2^-1     finite presentation relator
//   target c=1 r=1         codomain for kernel/preimage, same row/relator lines
//   subgroup               following row/gen lines generate a subgroup
//   gen a1^2 a2
//   map a1 -> a1^2         homomorphism on a generator (source word -> target word)
//   word a1^5 a2^-1        query words, in order
//
// Words are factors a<k>^<int> (or a<k>) separated by spaces; `1` is the
// empty word. Integers are decimal with optional sign and unbounded size.

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nilpotent/presentations.hpp"
#include "nilpotent/word.hpp"

namespace nilpotent {

struct Located {
  std::size_t line = 0;
  std::size_t column = 0;
};

struct GroupSection {
  Located at;
  unsigned c = 0;
  unsigned r = 0;
  std::vector<std::pair<Located, IntVector>> rows;
  std::vector<std::pair<Located, ExpWord>> relators;
};

/// One subgroup generator: a coordinate row or a word.
struct SubgroupEntry {
  Located at;
  std::optional<IntVector> row;
  std::optional<ExpWord> word;
};

struct MapEntry {
  Located at;
  ExpWord source;
  ExpWord image;
};

struct InputDocument {
  std::optional<GroupSection> group;
  std::optional<GroupSection> target;
  std::optional<Located> subgroup;
  std::vector<SubgroupEntry> generators;
  std::vector<MapEntry> maps;
  std::vector<std::pair<Located, ExpWord>> words;
};

/// Parses a word with letters `symbol<k>`; `column` is the 1-based column of
/// `text` within its line, used for error positions.
ExpWord parse_word(std::string_view text, std::size_t line = 1, std::size_t column = 1, char symbol = 'a');

/// Throws ParseError naming line and column on malformed input.
InputDocument parse_document(std::istream& in);

/// The presentation described by a group section. Rows are validated as a
/// full-form normal subgroup; relators go through from_finite_presentation.
QuotientPresentation build_group(const GroupSection& section, std::size_t max_letters = 80);

/// Reduced coordinates of a word in P, with errors placed at `at`.
IntVector evaluate_at(const QuotientPresentation& P, const ExpWord& w, const Located& at);

/// Subgroup generators as reduced coordinate rows of P.
std::vector<IntVector> subgroup_rows(const QuotientPresentation& P, const InputDocument& doc);

}  // namespace nilpotent
