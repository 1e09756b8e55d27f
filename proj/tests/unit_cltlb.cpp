#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aggtl/cltlb.hpp"
#include "support/gen.hpp"

#include <functional>

using namespace aggtl;

namespace {

Translation tr(const std::string &text, TranslateOptions opts = {}) {
  return translate(to_pnf(desugar(parse_formula(text))), opts);
}

size_t count_kind(const CltlbPtr &f, CKind k) {
  if (!f) return 0;
  return (f->kind == k ? 1 : 0) + count_kind(f->a, k) + count_kind(f->b, k) +
         count_kind(f->c, k);
}

} // namespace

TEST_CASE("atoms translate to bare propositions") {
  Translation t = tr("p");
  CHECK(t.goal->kind == CKind::prop);
  CHECK(t.goal->atom == "p");
  CHECK(t.counters.empty());
  CHECK(t.all_axioms().empty());
  CHECK(translation_size(t) == 1);
}

TEST_CASE("metric operators acquire validity guards") {
  Translation t = tr("(p) U[0,10] (q)");
  REQUIRE(t.goal->kind == CKind::until);
  CHECK(t.goal->ivl == Interval{0, 10});
  const CltlbFormula &left = *t.goal->a;
  REQUIRE(left.kind == CKind::or_);
  CHECK(left.a->kind == CKind::neg_prop);
  CHECK(left.a->atom == kValidityAtom);
  CHECK(left.b->atom == "p");
  const CltlbFormula &right = *t.goal->b;
  REQUIRE(right.kind == CKind::and_);
  CHECK(right.a->kind == CKind::prop);
  CHECK(right.a->atom == kValidityAtom);
  CHECK(right.b->atom == "q");

  // Release swaps the guard polarity.
  Translation r = tr("(p) R (q)");
  CHECK(r.goal->a->kind == CKind::and_);
  CHECK(r.goal->b->kind == CKind::or_);
}

TEST_CASE("count translation reads the counter across the window") {
  Translation t = tr("C[600]<=3(withdraw)");
  REQUIRE(t.goal->kind == CKind::compare);
  CHECK(t.goal->op == CCmp::le);
  REQUIRE(t.goal->lhs.size() == 2);
  CHECK(t.goal->lhs[0].kind == ArithTerm::Kind::next);
  CHECK(t.goal->lhs[0].counter == "c_withdraw");
  CHECK(t.goal->lhs[1].kind == ArithTerm::Kind::prev);
  CHECK(t.goal->lhs[1].depth == 599);
  CHECK(t.goal->lhs[1].coeff == -1);
  REQUIRE(t.counters.size() == 1);
  CHECK(t.counters[0].role == CounterDecl::Role::count);
  CHECK(t.all_axioms().size() == 3);

  // Same structure for any window; only the stored exponent moves.
  Translation small = tr("C[10]<=3(withdraw)");
  CHECK(translation_size(small) == translation_size(t));
  CHECK(small.goal->lhs[1].depth == 9);

  // A unit window compares against the current value.
  Translation unit = tr("C[1]>0(p)");
  CHECK(unit.goal->lhs[1].kind == ArithTerm::Kind::here);
}

TEST_CASE("count axioms have the three expected shapes") {
  auto axioms = count_axioms("p");
  REQUIRE(axioms.size() == 3);
  CHECK(to_text(axioms[0]) == "c_p = 0");
  CHECK(to_text(axioms[1]) == "G(((e && p) -> X(c_p) = c_p + 1))");
  CHECK(to_text(axioms[2]) == "G(((!e || !p) -> X(c_p) = c_p))");
}

TEST_CASE("counters deduplicate per atom and per pair") {
  Translation t = tr("C[5]<3(p) && (C[9]>1(p) || C[2]>0(q))");
  CHECK(t.counters.size() == 2);
  CHECK(t.all_axioms().size() == 6);

  Translation d = tr("D[5]<3(u, v) && D[9]>1(u, v)");
  CHECK(d.counters.size() == 5);
  CHECK(d.all_axioms().size() == 6);
}

TEST_CASE("average reduces to a scaled count") {
  Translation t = tr("V[14,4]<2(p)");
  REQUIRE(t.goal->kind == CKind::compare);
  CHECK(t.goal->lhs[1].depth == 11); // window 12
  CHECK(t.goal->rhs[0].coeff == 6);  // bound 2 * 3 blocks

  Translation full = tr("V[7,7]<=4(p)");
  CHECK(full.goal->lhs[1].depth == 6);
  CHECK(full.goal->rhs[0].coeff == 4);

  Translation third = tr("V[10,3]>=2(p)");
  CHECK(third.goal->lhs[1].depth == 8); // window 9
  CHECK(third.goal->rhs[0].coeff == 6);
}

TEST_CASE("maximum decomposes into per-block counts") {
  // floor(14/4) = 3 full blocks plus a tail of 2.
  Translation t = tr("M[14,4]>=3(phi)");
  CHECK(count_kind(t.goal, CKind::or_) == 3);
  CHECK(count_kind(t.goal, CKind::compare) == 4);
  CHECK(count_kind(t.goal, CKind::yesterday) == 3); // depths 4, 8, 12
  CHECK(to_text(t.goal) ==
        "(((X(c_phi) - Y^3(c_phi) >= 3 || Y^4(X(c_phi) - Y^3(c_phi) >= 3)) || "
        "Y^8(X(c_phi) - Y^3(c_phi) >= 3)) || Y^12(X(c_phi) - Y^1(c_phi) >= "
        "3))");

  Translation even = tr("M[8,4]<2(p)");
  CHECK(count_kind(even.goal, CKind::and_) == 1);
  CHECK(count_kind(even.goal, CKind::compare) == 2); // no tail

  Translation tail_only = tr("M[3,4]<=1(p)");
  CHECK(tail_only.goal->kind == CKind::compare);
  CHECK(tail_only.goal->lhs[1].depth == 2);

  Translation exact = tr("M[8,4]==2(p)");
  REQUIRE(exact.goal->kind == CKind::and_);
  CHECK(count_kind(exact.goal, CKind::compare) == 4); // >= branch and <= branch
}

TEST_CASE("pair axioms cover the six cases") {
  auto axioms = dist_axioms("phi", "psi");
  REQUIRE(axioms.size() == 6);
  CHECK(to_text(axioms[0]) ==
        "(((g_phi_psi = 0 && h_phi_psi = 0) && a_phi_psi = 0) && s_phi_psi = "
        "0)");
  CHECK(to_text(axioms[1]) == "(X(b_phi_psi) = b_phi_psi) W ((e && psi))");
  CHECK(to_text(axioms[2]) ==
        "G((((e && phi) && !psi) -> (((X(g_phi_psi) = 1 && X(s_phi_psi) = "
        "s_phi_psi + 1) && X(h_phi_psi) = h_phi_psi) && X(a_phi_psi) = "
        "a_phi_psi)))");
  CHECK(to_text(axioms[3]) ==
        "G((((e && psi) && !phi) -> (((((X(g_phi_psi) = 0 && X(h_phi_psi) = "
        "h_phi_psi + 1) && X(a_phi_psi) = s_phi_psi) && X(s_phi_psi) = "
        "s_phi_psi) && b_phi_psi = s_phi_psi) && X((X(b_phi_psi) = "
        "b_phi_psi) W ((e && psi))))))");
  CHECK(to_text(axioms[4]) ==
        "G(((!e || (!phi && !psi)) -> ((((X(g_phi_psi) = g_phi_psi && "
        "X(h_phi_psi) = h_phi_psi) && X(a_phi_psi) = a_phi_psi) && "
        "(g_phi_psi = 1 -> X(s_phi_psi) = s_phi_psi + 1)) && (g_phi_psi = 0 "
        "-> X(s_phi_psi) = s_phi_psi))))");
  CHECK(to_text(axioms[5]) ==
        "G((((e && phi) && psi) -> ((((X(g_phi_psi) = g_phi_psi && "
        "X(h_phi_psi) = h_phi_psi + 1) && X(a_phi_psi) = a_phi_psi) && "
        "X(s_phi_psi) = s_phi_psi) && X((X(b_phi_psi) = b_phi_psi) W ((e && "
        "psi))))))");
  CHECK_THROWS_AS(dist_axioms("p", "p"), ConfigError);
}

TEST_CASE("pair distance translates to a case split on the window edge") {
  Translation t = tr("D[14]==4(phi, psi)");
  REQUIRE(t.goal->kind == CKind::ite);
  const CltlbFormula &cond = *t.goal->a;
  REQUIRE(cond.kind == CKind::compare);
  CHECK(cond.lhs[0].counter == "g_phi_psi");
  CHECK(cond.lhs[0].depth == 13);
  CHECK(to_text(t.goal->b) ==
        "(X(h_phi_psi) - Y^13(h_phi_psi) <= 1 || X(a_phi_psi) - "
        "Y^13(b_phi_psi) = 4 * X(h_phi_psi) - 4 * Y^13(h_phi_psi) - 4)");
  CHECK(to_text(t.goal->c) ==
        "(X(h_phi_psi) - Y^13(h_phi_psi) = 0 || X(a_phi_psi) - "
        "Y^13(a_phi_psi) = 4 * X(h_phi_psi) - 4 * Y^13(h_phi_psi))");
  CHECK(t.counters.size() == 5);
}

TEST_CASE("optimized count wraps the difference around the modulus") {
  Translation t = tr("C[5]>1(phi)", {true, 5});
  REQUIRE(t.goal->kind == CKind::ite);
  CHECK(to_text(t.goal) ==
        "if (X(c_phi) - Y^4(c_phi) >= 0) then (X(c_phi) - Y^4(c_phi) > 1) "
        "else (X(c_phi) - Y^4(c_phi) + 6 > 1)");
  REQUIRE(t.counters.size() == 1);
  CHECK(t.counters[0].modulo == 6);
  auto axioms = t.all_axioms();
  REQUIRE(axioms.size() == 3);
  CHECK(to_text(axioms[1]) ==
        "G(((e && phi) -> if (c_phi = 5) then (X(c_phi) = 0) else (X(c_phi) "
        "= c_phi + 1)))");

  // The modulus must cover every window.
  CHECK_THROWS_AS(tr("C[10]>1(p)", {true, 5}), ConfigError);
  // Without an explicit bound the largest window in the formula is used.
  Translation derived = tr("C[7]>1(p) && C[3]<2(q)", {true, 0});
  CHECK(derived.counters[0].modulo == 8);
  CHECK(derived.counters[1].modulo == 8);
}

TEST_CASE("negated aggregates translate to an exact negation") {
  Translation t = tr("!D[5]==2(u, v)");
  REQUIRE(t.goal->kind == CKind::not_);
  CHECK(t.goal->a->kind == CKind::ite);
}

TEST_CASE("translation size is linear and window-independent") {
  CHECK(translation_size(tr("p")) == 1);

  testgen::Rng rng(31);
  for (int i = 0; i < 300; ++i) {
    PnfFormula f = to_pnf(desugar(testgen::random_formula(rng, 4)));
    Translation t = translate(f);
    CHECK(translation_size(t) <= 4 * formula_size(f.root()) + 8);
  }

  // For counts, averages and pair distances even the emitted structure is
  // identical across windows; only the stored exponents move.
  for (const char *shape : {"C[%]>3(p)", "D[%]>3(u, v)", "V[%,5]<=2(p)"}) {
    std::string s(shape);
    auto instantiate = [&](const char *k) {
      std::string text = s;
      text.replace(text.find('%'), 1, k);
      Translation t = tr(text);
      return std::pair<uint64_t, uint64_t>(translation_size(t),
                                           node_count(t.goal));
    };
    auto s10 = instantiate("10");
    CHECK(instantiate("100") == s10);
    CHECK(instantiate("1000") == s10);
  }

  // The maximum modality's measure ignores how many blocks the window
  // spans; h sweeps may not change it either.
  CHECK(translation_size(tr("M[40,5]>1(p)")) ==
        translation_size(tr("M[40,10]>1(p)")));
  CHECK(translation_size(tr("M[10,5]>1(p)")) ==
        translation_size(tr("M[1000,5]>1(p)")));
}

TEST_CASE("emitted comparisons stay within two counter reads per side") {
  std::function<void(const CltlbPtr &)> scan = [&](const CltlbPtr &f) {
    if (!f) return;
    if (f->kind == CKind::compare) {
      for (const auto *side : {&f->lhs, &f->rhs}) {
        size_t reads = 0;
        for (const auto &term : *side)
          if (term.kind != ArithTerm::Kind::constant) ++reads;
        CHECK(reads <= 2);
      }
    }
    scan(f->a);
    scan(f->b);
    scan(f->c);
  };
  testgen::Rng rng(41);
  for (int i = 0; i < 200; ++i) {
    Translation t =
        translate(to_pnf(desugar(testgen::random_formula(rng, 4))));
    scan(t.goal);
    for (const auto &axiom : t.all_axioms()) scan(axiom);
  }
}

TEST_CASE("every counter is constrained by an axiom group") {
  testgen::Rng rng(37);
  for (int i = 0; i < 200; ++i) {
    Translation t =
        translate(to_pnf(desugar(testgen::random_formula(rng, 4))));
    for (const auto &decl : t.counters) {
      std::string key = decl.role == CounterDecl::Role::count
                            ? decl.name
                            : pair_counter_name('g', decl.atom, decl.atom2);
      bool found = false;
      for (const auto &group : t.axiom_groups)
        found = found || group.key == key;
      CHECK(found);
    }
  }
}
