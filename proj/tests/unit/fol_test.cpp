// Copyright 2026 The derivguide Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "derivguide/model/model.hpp"

#include <gtest/gtest.h>

#include <random>

#include "derivguide/fol/problem.hpp"
#include "derivguide/fol/unify.hpp"

namespace derivguide::fol {
namespace {

constexpr SymbolId kF = 0;  // f/2
constexpr SymbolId kG = 1;  // g/1
constexpr SymbolId kA = 2;
constexpr SymbolId kB = 3;

Term var(VarId v) { return Term::variable(v); }
Term a() { return Term::apply(kA); }
Term b() { return Term::apply(kB); }
Term g(Term t) { return Term::apply(kG, {std::move(t)}); }
Term f(Term l, Term r) { return Term::apply(kF, {std::move(l), std::move(r)}); }

TEST(Parse, AxiomClause) {
  Problem p = parse_problem("cnf(ax_refl, axiom, eq(X,X)).");
  ASSERT_EQ(p.clauses.size(), 1u);
  const auto& ic = p.clauses[0];
  EXPECT_EQ(ic.role, Role::axiom);
  EXPECT_EQ(ic.name, "ax_refl");
  ASSERT_EQ(ic.clause.size(), 1u);
  EXPECT_TRUE(ic.clause[0].positive);
  EXPECT_EQ(ic.clause[0].args[0], ic.clause[0].args[1]);
  EXPECT_TRUE(ic.clause[0].args[0].is_variable());
}

TEST(Parse, NegatedConjecture) {
  Problem p = parse_problem("cnf(goal, negated_conjecture, ~p(a)).");
  ASSERT_EQ(p.clauses.size(), 1u);
  EXPECT_EQ(p.clauses[0].role, Role::negated_conjecture);
  EXPECT_EQ(p.clauses[0].clause.origin(), Origin::input_conjecture);
  EXPECT_FALSE(p.clauses[0].clause[0].positive);
}

TEST(Parse, MissingCloseIsSyntaxError) {
  try {
    parse_problem("cnf(x, axiom, p(a)");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_NE(std::string(e.what()).find("expected"), std::string::npos);
  }
}

TEST(Parse, ErrorsReportPosition) {
  try {
    parse_problem("% header\ncnf(a1, axiom, p(a)).\ncnf(a2, axiom, p(a) | q).\ncnf(a3, axiom, p).\n");
    FAIL() << "expected ArityConflict";
  } catch (const ArityConflict&) {
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
  try {
    parse_problem("cnf(a, axiom, p).\ncnf(a, axiom, q).");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_problem("% nothing\n"), ParseError);
  EXPECT_THROW(parse_problem("cnf(a, lemma, p)."), ParseError);
}

TEST(Parse, VariablesAreClauseLocal) {
  Problem p = parse_problem("cnf(a, axiom, p(X) | q(Y)).\ncnf(b, axiom, r(Y, X)).");
  EXPECT_EQ(p.clauses[0].clause[0].args[0], var(0));
  EXPECT_EQ(p.clauses[0].clause[1].args[0], var(1));
  EXPECT_EQ(p.clauses[1].clause[0].args[0], var(0));
  EXPECT_EQ(p.clauses[1].clause[0].args[1], var(1));
}

TEST(Parse, FalseIsEmptyClause) {
  Problem p = parse_problem("cnf(bot, axiom, $false).");
  EXPECT_TRUE(p.clauses[0].clause.empty());
}

TEST(Parse, RoundTrip) {
  const char* text =
      "% status: unsatisfiable\n"
      "cnf(trans, axiom, ~e(X,Y) | ~path(Y,Z) | path(X,Z)).\n"
      "cnf(base, axiom, (~e(X,Y) | path(X,Y))).\n"
      "cnf(f1, axiom, e(a0, f(a1, g(X)))).\n"
      "cnf(bot, axiom, $false).\n"
      "cnf(goal, negated_conjecture, ~path(a0,a1)).\n";
  Problem first = parse_problem(text, "rt");
  std::string printed = print_problem(first);
  Problem second = parse_problem(printed, "rt");
  EXPECT_EQ(print_problem(second), printed);
  ASSERT_EQ(first.clauses.size(), second.clauses.size());
  for (std::size_t k = 0; k < first.clauses.size(); ++k) {
    EXPECT_EQ(first.clauses[k].name, second.clauses[k].name);
    EXPECT_EQ(first.clauses[k].role, second.clauses[k].role);
    EXPECT_EQ(to_string(first.clauses[k].clause, first.signature),
              to_string(second.clauses[k].clause, second.signature));
  }
}

TEST(Unify, VariableAgainstConstant) {
  auto s = unify(var(0), a());
  ASSERT_TRUE(s);
  ASSERT_EQ(s->size(), 1u);
  ASSERT_NE(s->lookup(0), nullptr);
  EXPECT_EQ(*s->lookup(0), a());
}

TEST(Unify, HeadClash) { EXPECT_FALSE(unify(g(var(0)), f(var(1), var(1)))); }

TEST(Unify, OccursCheck) {
  EXPECT_FALSE(unify(var(0), g(var(0))));
  EXPECT_FALSE(unify(f(var(0), var(1)), f(var(1), g(var(0)))));
}

TEST(Unify, Atoms) {
  Literal l1{true, 7, {var(0), b()}};
  Literal l2{false, 7, {a(), var(1)}};
  auto s = unify_atoms(l1, l2);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->apply(l1).args, s->apply(l2).args);
  Literal l3{true, 8, {a(), b()}};
  EXPECT_FALSE(unify_atoms(l1, l3));
}

TEST(Match, OneSided) {
  Substitution s;
  EXPECT_TRUE(match_into(f(var(0), var(0)), f(a(), a()), s));
  Substitution t;
  EXPECT_FALSE(match_into(f(var(0), var(0)), f(a(), b()), t));
  Substitution u;
  EXPECT_FALSE(match_into(a(), var(0), u));
}

TEST(ApplySubstitution, CollapsesDuplicates) {
  Clause c({Literal{true, 9, {var(0)}}, Literal{true, 9, {var(1)}}});
  Substitution s;
  s.bind(0, a());
  s.bind(1, a());
  Clause out = apply_substitution(c, s);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0], (Literal{true, 9, {a()}}));
}

TEST(ApplySubstitution, EmptyIsIdentity) {
  Clause c({Literal{true, 9, {var(0)}}, Literal{false, 10, {f(var(1), a())}}});
  Clause out = apply_substitution(c, Substitution{});
  EXPECT_EQ(out.literals(), c.literals());
}

TEST(ApplySubstitution, Simultaneous) {
  Clause c({Literal{true, 9, {var(0)}}, Literal{true, 10, {var(0)}}});
  Substitution s;
  s.bind(0, g(var(2)));
  Clause out = apply_substitution(c, s);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].args[0], g(var(2)));
  EXPECT_EQ(out[1].args[0], g(var(2)));
}

// Random terms over f/2, g/1, a, b and variables 0..2.
Term random_term(std::mt19937_64& rng, int depth) {
  int pick = static_cast<int>(rng() % (depth > 0 ? 7 : 5));
  switch (pick) {
    case 0: return a();
    case 1: return b();
    case 2:
    case 3:
    case 4: return var(static_cast<VarId>(rng() % 3));
    case 5: return g(random_term(rng, depth - 1));
    default: return f(random_term(rng, depth - 1), random_term(rng, depth - 1));
  }
}

// Every substitution of variables 0..2 by terms from a small fixed set.
std::vector<Substitution> candidate_substitutions() {
  std::vector<Term> pool{a(), b(), g(a()), g(b()), f(a(), b()), f(a(), a()), g(g(a())),
                         var(10), g(var(10)), f(var(10), a())};
  std::vector<Substitution> out;
  const std::size_t k = pool.size();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t l = 0; l < k; ++l) {
        Substitution s;
        s.bind(0, pool[i]);
        s.bind(1, pool[j]);
        s.bind(2, pool[l]);
        out.push_back(std::move(s));
      }
    }
  }
  return out;
}

TEST(UnifyProperty, MostGeneralAgainstBruteForce) {
  std::mt19937_64 rng(20260101);
  const auto candidates = candidate_substitutions();
  std::size_t unifiable = 0;
  std::size_t tried = 0;
  while (unifiable < 200) {
    ASSERT_LT(++tried, 100000u);
    Term x = random_term(rng, 3);
    Term y = random_term(rng, 3);
    auto mgu = unify(x, y);
    if (!mgu) {
      for (const auto& theta : candidates) {
        ASSERT_FALSE(theta.apply(x) == theta.apply(y)) << "missed unifier";
      }
      continue;
    }
    ++unifiable;
    ASSERT_EQ(mgu->apply(x), mgu->apply(y));
    // Idempotent: applying twice changes nothing.
    EXPECT_EQ(mgu->apply(mgu->apply(x)), mgu->apply(x));
    for (const auto& theta : candidates) {
      if (!(theta.apply(x) == theta.apply(y))) continue;
      // theta is an instance of the idempotent mgu iff theta(mgu(v)) = theta(v).
      for (VarId v = 0; v < 3; ++v) {
        ASSERT_EQ(theta.apply(mgu->apply(var(v))), theta.apply(var(v)));
      }
    }
  }
}

}  // namespace
}  // namespace derivguide::fol
