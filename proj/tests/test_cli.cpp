#include <doctest.h>

#include <sstream>

#include "nilpotent/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = nilpotent::cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

}  // namespace

TEST_CASE("extgcd") {
  Result r = run({"extgcd", "6", "10", "15"});
  CHECK(r.code == 0);
  CHECK(r.out == "1\n-14 7 1\n");
  CHECK(run({"extgcd", "0", "0"}).out == "0\n0 0\n");
  CHECK(run({"extgcd", "-4", "6"}).out == "2\n1 1\n");
  Result bad = run({"extgcd", "4", "six"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("six") != std::string::npos);
  CHECK(run({"extgcd"}).code == 2);
}

TEST_CASE("normal forms and the word problem") {
  CHECK(run({"nf"}, "group c=1 r=2\nrow 2 0\nword a1^5 a2^-1\n").out == "1 -1\n");
  CHECK(run({"nf", fixture("heisenberg_words.txt")}).out ==
        "0 1 -1024\n0 1 -1152921504606846976\n0 0 0\n0 0 0\n");
  Result empty = run({"wp", "-"}, "group c=2 r=2\nword 1\n");
  CHECK(empty.code == 0);
  CHECK(empty.out == "yes\n");
  Result no = run({"wp", fixture("heisenberg_nontrivial.txt")});
  CHECK(no.code == 1);
  CHECK(no.out == "no\n");
  CHECK(run({"wp", fixture("heisenberg_commutator.txt")}).out == "yes\n");
}

TEST_CASE("subgroup commands") {
  Result m = run({"member", fixture("member_yes.txt")});
  CHECK(m.code == 0);
  CHECK(m.out == "yes\n1 1 1\n");
  CHECK(run({"member", fixture("member_no.txt")}).code == 1);
  CHECK(run({"fullform", fixture("span_z2.txt")}).out == "1 0\n0 1\n");
  CHECK(run({"fullform", fixture("heisenberg_subgroup.txt")}).out == "2 0 0\n0 1 0\n0 0 2\n");
  CHECK(run({"fullform", fixture("cyclic_subgroup.txt")}).out == "1 1 0\n");
  Result sp = run({"subpresent", fixture("heisenberg_subgroup.txt")});
  CHECK(sp.out.rfind("generators 3\n2 0 0\n0 1 0\n0 0 2\norders inf inf inf\ng2 g1 = g1 g2 g3\n", 0) == 0);
  CHECK(run({"fullform", "-"}, "group c=2 r=2\nsubgroup\n").out.empty());
}

TEST_CASE("presentations") {
  CHECK(run({"quotpres", fixture("relator_c1.txt")}).out == "2 0\n");
  CHECK(run({"quotpres", fixture("relator_c2.txt")}).out == "2 0 0\n0 0 2\n");
  CHECK(run({"torsionbound", fixture("torsion_1.txt")}).out == "1\n");
  CHECK(run({"torsionbound", fixture("torsion_6.txt")}).out == "6\n");
  CHECK(run({"torsionbound", "-"}, "group c=1 r=2\nrow 2 0\n").out == "2\n");
}

TEST_CASE("homomorphisms") {
  CHECK(run({"kernel", fixture("kernel_z2_z.txt")}).out == "3 -2\n");
  Result p = run({"preimage", fixture("kernel_z2_z.txt")});
  CHECK(p.code == 0);
  CHECK(p.out.rfind("yes\n", 0) == 0);
  Result none = run({"preimage", "-"}, "group c=1 r=2\ntarget c=1 r=1\nmap a1 -> a1^2\nmap a2 -> a1^4\nword a1\n");
  CHECK(none.code == 1);
  CHECK(none.out == "no\n");
}

TEST_CASE("centralizer, conjugacy and powers") {
  CHECK(run({"centralizer", fixture("centralizer_a1.txt")}).out == "1 0 0\n0 0 1\n");
  Result c = run({"conj", fixture("conj_yes.txt")});
  CHECK(c.code == 0);
  CHECK(c.out == "yes\na2^2\n");
  CHECK(run({"conj", fixture("conj_no.txt")}).code == 1);
  CHECK(run({"conj", fixture("conj_same.txt")}).out == "yes\n1\n");
  CHECK(run({"power", fixture("power_yes.txt")}).out == "yes\n3\n");
  CHECK(run({"power", fixture("power_no.txt")}).code == 1);
  CHECK(run({"power", fixture("power_torsion.txt")}).out == "yes\n5\n");
  CHECK(run({"power", fixture("power_yes.txt"), "--progression", "1", "2"}).out == "yes\n3\n");
  CHECK(run({"power", fixture("power_yes.txt"), "--progression", "-1", "2"}).out == "yes\n3\n");
  CHECK(run({"power", fixture("power_yes.txt"), "--progression", "0", "2"}).code == 1);
  CHECK(run({"power", fixture("power_yes.txt"), "--progression", "0", "0"}).code == 2);
}

TEST_CASE("input errors name their position or cap") {
  Result syntax = run({"nf", fixture("bad_syntax.txt")});
  CHECK(syntax.code == 2);
  CHECK(syntax.err.find("line 2, column 9") != std::string::npos);
  CHECK(syntax.err.find('\n') == syntax.err.size() - 1);

  CHECK(run({"nf"}, "group c=2 r=2\nfoo\n").err.find("line 2, column 1: unknown keyword 'foo'") != std::string::npos);
  CHECK(run({"nf"}, "group c=2\n").err.find("line 1, column 1") != std::string::npos);
  CHECK(run({"nf"}, "group c=2 r=2\n  word a1 b2\n").err.find("line 2, column 11") != std::string::npos);
  CHECK(run({"nf"}, "group c=2 r=2\nword a4\n").err.find("line 2, column 1") != std::string::npos);
  CHECK(run({"kernel"}, "group c=1 r=1\ntarget c=1 r=1\nmap a1 a1\n").err.find("line 3") != std::string::npos);
  CHECK(run({"fullform"}, "group c=1 r=2\nsubgroup\nrow 1 2 3\n").err.find("line 3, column 1") != std::string::npos);
  CHECK(run({"nf"}, "group c=2 r=2\nrow 2 0 0\nword 1\n").code == 2);
  CHECK(run({"wp"}, "group c=2 r=2\n").code == 2);
  CHECK(run({"nf", "/nonexistent/file"}).code == 2);

  Result cap = run({"nf"}, "group c=6 r=3\nword 1\n");
  CHECK(cap.code == 2);
  CHECK(cap.err.find("80") != std::string::npos);
  CHECK(run({"nf", "--max-letters", "200"}, "group c=5 r=3\nword 1\n").code == 0);
  Result words = run({"member", fixture("exponent3_class3.txt"), "--track", "--max-word-length", "3"});
  CHECK(words.code == 2);
  CHECK(words.err.find("cap of 3") != std::string::npos);
}

TEST_CASE("usage") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  Result help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("conj") != std::string::npos);
}

TEST_CASE("output is deterministic") {
  for (const char* cmd : {"fullform", "subpresent", "centralizer", "member"}) {
    Result a = run({cmd, fixture("exponent3_class3.txt"), "--track"});
    Result b = run({cmd, fixture("exponent3_class3.txt"), "--track"});
    CHECK(a.out == b.out);
    CHECK(a.code == b.code);
  }
}
