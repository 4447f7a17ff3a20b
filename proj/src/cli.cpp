#include "nilpotent/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>

#include "nilpotent/bounded_extgcd.hpp"
#include "nilpotent/decision_suite.hpp"
#include "nilpotent/errors.hpp"
#include "nilpotent/group_arith.hpp"
#include "nilpotent/subgroup_reduction.hpp"
#include "nilpotent/text_format.hpp"

namespace nilpotent::cli {

namespace {

struct Options {
  std::string input = "-";
  bool track = false;
  bool verbose = false;
  std::vector<std::string> progression;
  std::vector<std::string> values;
  std::size_t max_letters = 80;
  std::size_t max_word_length = kDefaultMaxWordLength;
};

class Session {
 public:
  Session(const Options& o, std::istream& in, std::ostream& out, std::ostream& err)
      : o_(o), in_(in), out_(out), err_(err) {}

  int dispatch(const std::string& command);

 private:
  void load();
  const QuotientPresentation& group();
  const QuotientPresentation& target();
  const IntVector& word(std::size_t i, const QuotientPresentation& P);
  void print_rows(const std::vector<IntVector>& rows) { for (const IntVector& r : rows) out_ << join(r) << '\n'; }

  int nf();
  int wp();
  int member();
  int fullform();
  int subpresent();
  int quotpres();
  int kernel(bool with_preimage);
  int centralizer_cmd();
  int conj();
  int power();
  int extgcd();
  int torsionbound();

  const Options& o_;
  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
  InputDocument doc_;
  std::optional<QuotientPresentation> group_, target_;
  std::vector<IntVector> word_values_;
};

void Session::load() {
  if (o_.input == "-") {
    doc_ = parse_document(in_);
    return;
  }
  std::ifstream file(o_.input);
  if (!file) throw InputError("cannot open '" + o_.input + "'");
  doc_ = parse_document(file);
}

const QuotientPresentation& Session::group() {
  if (!group_) {
    if (!doc_.group) throw InputError("input has no 'group' section");
    group_ = build_group(*doc_.group, o_.max_letters);
    if (o_.verbose) {
      err_ << "group: c=" << doc_.group->c << " r=" << doc_.group->r << " letters=" << group_->length()
           << " torsion=" << group_->torsion().size() << '\n';
    }
  }
  return *group_;
}

const QuotientPresentation& Session::target() {
  if (!target_) {
    if (!doc_.target) throw InputError("input has no 'target' section");
    target_ = build_group(*doc_.target, o_.max_letters);
  }
  return *target_;
}

const IntVector& Session::word(std::size_t i, const QuotientPresentation& P) {
  if (i >= doc_.words.size()) {
    throw InputError("command needs at least " + std::to_string(i + 1) + " 'word' line(s)");
  }
  if (word_values_.size() <= i) word_values_.resize(i + 1);
  word_values_[i] = evaluate_at(P, doc_.words[i].second, doc_.words[i].first);
  return word_values_[i];
}

int Session::nf() {
  const QuotientPresentation& P = group();
  if (doc_.words.empty()) throw InputError("command needs at least 1 'word' line(s)");
  for (std::size_t i = 0; i < doc_.words.size(); ++i) out_ << join(word(i, P)) << '\n';
  return kYes;
}

int Session::wp() {
  const QuotientPresentation& P = group();
  bool trivial = P.is_identity(word(0, P));
  out_ << (trivial ? "yes" : "no") << '\n';
  return trivial ? kYes : kNo;
}

int Session::member() {
  const QuotientPresentation& P = group();
  IntVector h = word(0, P);
  FullFormResult F = full_form(P, subgroup_rows(P, doc_), o_.track);
  auto w = o_.track ? membership(P, F, h, o_.max_word_length) : membership(P, F.matrix, h);
  if (!w) {
    out_ << "no\n";
    return kNo;
  }
  out_ << "yes\n" << join(w->gamma) << '\n';
  if (w->word) out_ << format_word(*w->word, 'h') << '\n';
  return kYes;
}

int Session::fullform() {
  const QuotientPresentation& P = group();
  FullFormResult F = full_form(P, subgroup_rows(P, doc_), o_.track);
  print_rows(F.matrix.rows);
  if (o_.track) {
    for (std::size_t i = 0; i < F.matrix.rows.size(); ++i) out_ << format_word(F.expression(i, o_.max_word_length), 'h') << '\n';
  }
  return kYes;
}

int Session::subpresent() {
  const QuotientPresentation& P = group();
  SubgroupPresentation S = subgroup_presentation(P, subgroup_rows(P, doc_));
  const NilpotentPresentation& N = S.presentation;
  out_ << "generators " << N.size << '\n';
  print_rows(S.generators.rows);
  out_ << "orders";
  for (const auto& o : N.orders) out_ << ' ' << (o ? o->get_str() : std::string("inf"));
  out_ << '\n';
  auto g = [](std::size_t i, long e) { return ExpWord{{{i, Int(e)}}}; };
  for (std::size_t i = 0; i < N.size; ++i) {
    if (N.orders[i]) {
      out_ << format_word(ExpWord{{{i, *N.orders[i]}}}, 'g') << " = "
           << format_word(ExpWord::from_coordinates(N.power_tails[i]), 'g') << '\n';
    }
  }
  for (std::size_t j = 0; j < N.size; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      out_ << format_word(g(j, 1) * g(i, 1), 'g') << " = "
           << format_word(g(i, 1) * g(j, 1) * ExpWord::from_coordinates(N.conjugate_tail(j, i)), 'g') << '\n';
      out_ << format_word(g(j, -1) * g(i, 1), 'g') << " = "
           << format_word(g(i, 1) * g(j, -1) * ExpWord::from_coordinates(N.inverse_conjugate_tail(j, i)), 'g') << '\n';
    }
  }
  return kYes;
}

int Session::quotpres() {
  const QuotientPresentation& P = group();
  print_rows(P.relators().rows);
  return kYes;
}

int Session::kernel(bool with_preimage) {
  HomSpec spec{group(), target(), {}, {}};
  if (doc_.maps.empty()) throw InputError("command needs at least one 'map' line");
  for (const MapEntry& m : doc_.maps) {
    spec.domain.push_back(evaluate_at(spec.source, m.source, m.at));
    spec.images.push_back(evaluate_at(spec.target, m.image, m.at));
  }
  std::optional<IntVector> h;
  if (with_preimage) h = word(0, spec.target);
  KernelResult r = kernel_and_preimage(spec, h);
  if (!with_preimage) {
    print_rows(r.kernel.rows);
    return kYes;
  }
  if (r.status != PreimageStatus::Found) {
    out_ << "no\n";
    return kNo;
  }
  out_ << "yes\n" << join(*r.preimage) << '\n' << format_word(ExpWord::from_coordinates(*r.preimage)) << '\n';
  return kYes;
}

int Session::centralizer_cmd() {
  const QuotientPresentation& P = group();
  print_rows(centralizer(P, word(0, P)));
  return kYes;
}

int Session::conj() {
  const QuotientPresentation& P = group();
  IntVector g = word(0, P);
  IntVector h = word(1, P);
  auto u = conjugacy(P, g, h);
  if (!u) {
    out_ << "no\n";
    return kNo;
  }
  out_ << "yes\n" << format_word(ExpWord::from_coordinates(*u)) << '\n';
  return kYes;
}

int Session::power() {
  const QuotientPresentation& P = group();
  IntVector g = word(0, P);
  IntVector h = word(1, P);
  std::optional<Progression> pr;
  if (!o_.progression.empty()) {
    pr = Progression{};
    if (!parse_int(o_.progression[0], pr->alpha) || !parse_int(o_.progression[1], pr->beta)) {
      throw InputError("--progression expects two integers");
    }
  }
  auto k = power_problem(P, g, h, pr);
  if (!k) {
    out_ << "no\n";
    return kNo;
  }
  out_ << "yes\n" << k->get_str() << '\n';
  return kYes;
}

int Session::extgcd() {
  IntVector a;
  for (const std::string& v : o_.values) {
    Int x;
    if (!parse_int(v, x)) throw InputError("expected an integer, found '" + v + "'");
    a.push_back(x);
  }
  BoundedGcd r = extgcd_bounded(a);
  out_ << r.g.get_str() << '\n' << join(r.x) << '\n';
  if (o_.verbose) {
    std::string problem = check_trace(r.trace);
    err_ << "trace: " << (problem.empty() ? "ok" : problem) << '\n';
  }
  return kYes;
}

int Session::torsionbound() {
  out_ << torsion_bound(group()).get_str() << '\n';
  return kYes;
}

int Session::dispatch(const std::string& command) {
  if (command == "extgcd") return extgcd();
  load();
  static const std::vector<std::pair<std::string, std::function<int(Session&)>>> table = {
      {"nf", &Session::nf},
      {"wp", &Session::wp},
      {"member", &Session::member},
      {"fullform", &Session::fullform},
      {"subpresent", &Session::subpresent},
      {"quotpres", &Session::quotpres},
      {"kernel", [](Session& s) { return s.kernel(false); }},
      {"preimage", [](Session& s) { return s.kernel(true); }},
      {"centralizer", &Session::centralizer_cmd},
      {"conj", &Session::conj},
      {"power", &Session::power},
      {"torsionbound", &Session::torsionbound},
  };
  for (const auto& [name, fn] : table) {
    if (name == command) return fn(*this);
  }
  throw InternalError("unhandled command " + command);
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decision procedures for finitely generated nilpotent groups", "nilpq"};
  app.require_subcommand(1);
  Options o;

  struct Command {
    const char* name;
    const char* help;
  };
  const Command commands[] = {
      {"nf", "normal form of every word"},
      {"wp", "is the first word trivial"},
      {"member", "is the first word in the subgroup"},
      {"fullform", "full form of the subgroup"},
      {"subpresent", "consistent presentation of the subgroup"},
      {"quotpres", "relator matrix of the group"},
      {"kernel", "kernel of the map from group to target"},
      {"preimage", "preimage of the first word (in target) under the map"},
      {"centralizer", "centralizer of the first word"},
      {"conj", "u with g = u^-1 h u for the first two words g, h"},
      {"power", "k with g^k = h for the first two words g, h"},
      {"torsionbound", "exponent bound for the torsion elements"},
  };
  for (const Command& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("input", o.input, "input file, - for standard input");
    sub->add_flag("--track", o.track, "record expressions over the subgroup generators h1, h2, ...");
    sub->add_flag("-v,--verbose", o.verbose, "diagnostics on standard error");
    sub->add_option("--max-letters", o.max_letters, "cap on the Hall basis size");
    sub->add_option("--max-word-length", o.max_word_length, "cap on expanded witness words");
    if (std::string(c.name) == "power") {
      sub->add_option("--progression", o.progression, "restrict k to A + B*Z")->expected(2)->allow_extra_args(false);
    }
  }
  CLI::App* ext = app.add_subcommand("extgcd", "gcd and bounded Bezout coefficients");
  ext->add_option("values", o.values, "integers")->required();
  ext->add_flag("-v,--verbose", o.verbose, "check the reduction trace");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "nilpq: " << e.what() << '\n';
    return kInputError;
  }

  std::string command = app.get_subcommands().front()->get_name();
  Session session(o, in, out, err);
  try {
    return session.dispatch(command);
  } catch (const SizeError& e) {
    err << "nilpq: size cap exceeded: " << e.what() << '\n';
    return kInputError;
  } catch (const InputError& e) {
    err << "nilpq: " << e.what() << '\n';
    return kInputError;
  } catch (const InternalError& e) {
    err << "nilpq: internal error: " << e.what() << '\n';
    return kInternalError;
  }
}

}  // namespace nilpotent::cli
