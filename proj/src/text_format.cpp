#include "nilpotent/text_format.hpp"

#include <cctype>

#include "nilpotent/errors.hpp"

namespace nilpotent {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    out.push_back({line.substr(i, j - i), i + 1});
    i = j;
  }
  return out;
}

Int parse_integer(std::string_view text, std::size_t line, std::size_t column) {
  Int v;
  if (!parse_int(text, v)) throw ParseError(line, column, "expected an integer, found '" + std::string(text) + "'");
  return v;
}

unsigned parse_small(std::string_view text, std::string_view key, std::size_t line, std::size_t column) {
  if (text.substr(0, key.size()) != key) {
    throw ParseError(line, column, "expected " + std::string(key) + "<int>, found '" + std::string(text) + "'");
  }
  Int v = parse_integer(text.substr(key.size()), line, column + key.size());
  if (v < 1 || v > 1000) throw ParseError(line, column, std::string(key) + " must lie in 1..1000");
  return static_cast<unsigned>(v.get_ui());
}

}  // namespace

ExpWord parse_word(std::string_view text, std::size_t line, std::size_t column, char symbol) {
  ExpWord w;
  auto tokens = tokenize(text);
  if (tokens.size() == 1 && tokens[0].text == "1") return w;
  if (tokens.empty()) throw ParseError(line, column, "expected a word");
  for (const Token& t : tokens) {
    const std::size_t col = column + t.column - 1;
    if (t.text.empty() || t.text[0] != symbol) {
      throw ParseError(line, col, std::string("expected a factor ") + symbol + "<k>^<e>, found '" +
                                      std::string(t.text) + "'");
    }
    std::string_view body = t.text.substr(1);
    std::size_t caret = body.find('^');
    std::string_view index = body.substr(0, caret);
    Int k = parse_integer(index, line, col + 1);
    if (k < 1 || !k.fits_ulong_p()) throw ParseError(line, col + 1, "letter index must be at least 1");
    Int e = 1;
    if (caret != std::string_view::npos) e = parse_integer(body.substr(caret + 1), line, col + 2 + caret);
    w.factors.push_back({k.get_ui() - 1, e});
  }
  return w;
}

InputDocument parse_document(std::istream& in) {
  InputDocument doc;
  enum class Section { None, Group, Target, Subgroup } section = Section::None;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    const Token& head = tokens[0];
    const Located at{line_no, head.column};
    auto rest_column = [&]() { return tokens.size() > 1 ? tokens[1].column : line.size() + 1; };
    auto rest = [&]() { return tokens.size() > 1 ? line.substr(tokens[1].column - 1) : std::string_view{}; };

    if (head.text == "group" || head.text == "target") {
      auto& slot = head.text == "group" ? doc.group : doc.target;
      if (slot) throw ParseError(line_no, head.column, "duplicate '" + std::string(head.text) + "' section");
      if (tokens.size() != 3) throw ParseError(line_no, head.column, "expected '" + std::string(head.text) + " c=<int> r=<int>'");
      GroupSection g;
      g.at = at;
      g.c = parse_small(tokens[1].text, "c=", line_no, tokens[1].column);
      g.r = parse_small(tokens[2].text, "r=", line_no, tokens[2].column);
      slot = std::move(g);
      section = head.text == "group" ? Section::Group : Section::Target;
    } else if (head.text == "subgroup") {
      if (doc.subgroup) throw ParseError(line_no, head.column, "duplicate 'subgroup' section");
      if (tokens.size() != 1) throw ParseError(line_no, tokens[1].column, "unexpected text after 'subgroup'");
      doc.subgroup = at;
      section = Section::Subgroup;
    } else if (head.text == "row") {
      IntVector row;
      for (std::size_t i = 1; i < tokens.size(); ++i) row.push_back(parse_integer(tokens[i].text, line_no, tokens[i].column));
      if (section == Section::Group) {
        doc.group->rows.emplace_back(at, std::move(row));
      } else if (section == Section::Target) {
        doc.target->rows.emplace_back(at, std::move(row));
      } else if (section == Section::Subgroup) {
        doc.generators.push_back({at, std::move(row), std::nullopt});
      } else {
        throw ParseError(line_no, head.column, "'row' outside a group, target or subgroup section");
      }
    } else if (head.text == "relator") {
      ExpWord w = parse_word(rest(), line_no, rest_column());
      if (section == Section::Group) {
        doc.group->relators.emplace_back(at, std::move(w));
      } else if (section == Section::Target) {
        doc.target->relators.emplace_back(at, std::move(w));
      } else {
        throw ParseError(line_no, head.column, "'relator' outside a group or target section");
      }
    } else if (head.text == "gen") {
      if (section != Section::Subgroup) throw ParseError(line_no, head.column, "'gen' outside a subgroup section");
      doc.generators.push_back({at, std::nullopt, parse_word(rest(), line_no, rest_column())});
    } else if (head.text == "map") {
      std::string_view body = rest();
      std::size_t arrow = body.find("->");
      if (arrow == std::string_view::npos) throw ParseError(line_no, rest_column(), "expected '<word> -> <word>'");
      MapEntry m;
      m.at = at;
      m.source = parse_word(body.substr(0, arrow), line_no, rest_column());
      m.image = parse_word(body.substr(arrow + 2), line_no, rest_column() + arrow + 2);
      doc.maps.push_back(std::move(m));
    } else if (head.text == "word") {
      doc.words.emplace_back(at, parse_word(rest(), line_no, rest_column()));
    } else {
      throw ParseError(line_no, head.column, "unknown keyword '" + std::string(head.text) + "'");
    }
  }
  return doc;
}

QuotientPresentation build_group(const GroupSection& section, std::size_t max_letters) {
  auto F = FreeNilpotentGroup::get(section.c, section.r, max_letters);
  if (!section.rows.empty() && !section.relators.empty()) {
    throw ParseError(section.at.line, section.at.column, "give either relator rows or relator words, not both");
  }
  if (!section.relators.empty()) {
    std::vector<ExpWord> rel;
    for (const auto& [at, w] : section.relators) {
      for (const Factor& f : w.factors) {
        if (f.letter >= section.r) {
          throw ParseError(at.line, at.column, "relator uses a" + std::to_string(f.letter + 1) + " beyond the " +
                                                   std::to_string(section.r) + " generators");
        }
      }
      rel.push_back(w);
    }
    return from_finite_presentation(F, rel);
  }
  std::vector<IntVector> rows;
  for (const auto& [at, row] : section.rows) {
    if (row.size() != F->size()) {
      throw ParseError(at.line, at.column, "row has " + std::to_string(row.size()) + " entries, expected " +
                                               std::to_string(F->size()));
    }
    rows.push_back(row);
  }
  try {
    return make_quotient_presentation(F, rows);
  } catch (const ValidationError& e) {
    throw ParseError(section.at.line, section.at.column, std::string("relator rows are not a full-form normal subgroup: ") + e.what());
  }
}

IntVector evaluate_at(const QuotientPresentation& P, const ExpWord& w, const Located& at) {
  for (const Factor& f : w.factors) {
    if (f.letter >= P.length()) {
      throw ParseError(at.line, at.column, "letter a" + std::to_string(f.letter + 1) + " is outside the basis of size " +
                                               std::to_string(P.length()));
    }
  }
  return P.evaluate(w);
}

std::vector<IntVector> subgroup_rows(const QuotientPresentation& P, const InputDocument& doc) {
  std::vector<IntVector> rows;
  for (const SubgroupEntry& g : doc.generators) {
    if (g.row) {
      if (g.row->size() != P.length()) {
        throw ParseError(g.at.line, g.at.column, "row has " + std::to_string(g.row->size()) + " entries, expected " +
                                                     std::to_string(P.length()));
      }
      rows.push_back(P.reduce(*g.row));
    } else {
      rows.push_back(evaluate_at(P, *g.word, g.at));
    }
  }
  return rows;
}

}  // namespace nilpotent
