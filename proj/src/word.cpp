#include "nilpotent/word.hpp"

namespace nilpotent {

ExpWord ExpWord::from_coordinates(const IntVector& coords) {
  ExpWord w;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (sgn(coords[i]) != 0) w.factors.push_back({i, coords[i]});
  }
  return w;
}

ExpWord ExpWord::inverse() const {
  ExpWord w;
  w.factors.reserve(factors.size());
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    w.factors.push_back({it->letter, -it->exponent});
  }
  return w;
}

ExpWord& ExpWord::operator*=(const ExpWord& rhs) {
  factors.insert(factors.end(), rhs.factors.begin(), rhs.factors.end());
  return *this;
}

std::string format_word(const ExpWord& w, char symbol) {
  if (w.factors.empty()) return "1";
  std::string out;
  for (const Factor& f : w.factors) {
    if (!out.empty()) out += ' ';
    out += symbol;
    out += std::to_string(f.letter + 1);
    if (f.exponent != 1) {
      out += '^';
      out += f.exponent.get_str(10);
    }
  }
  return out;
}

}  // namespace nilpotent
