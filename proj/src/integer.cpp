#include "nilpotent/integer.hpp"

#include <cctype>

namespace nilpotent {

Int binomial(const Int& n, unsigned k) {
  Int num = 1;
  for (unsigned i = 0; i < k; ++i) num *= n - i;
  Int fact;
  mpz_fac_ui(fact.get_mpz_t(), k);
  Int q;
  mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), fact.get_mpz_t());
  return q;
}

bool parse_int(std::string_view text, Int& out) {
  if (text.empty()) return false;
  std::size_t start = (text[0] == '+' || text[0] == '-') ? 1 : 0;
  if (start == text.size()) return false;
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  std::string digits(text.substr(text[0] == '+' ? 1 : 0));
  return out.set_str(digits, 10) == 0;
}

std::string to_string(const Int& x) { return x.get_str(10); }

std::string join(const IntVector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += v[i].get_str(10);
  }
  return out;
}

}  // namespace nilpotent
