#include <gtest/gtest.h>

#include <random>

#include "filament/core.hpp"

namespace filament {
namespace {

Neighborhood r1(MaybeState left, MaybeState right) { return {1, {left, kEmpty}, {right, kEmpty}}; }

TEST(Filament, RejectsEmpty) {
  EXPECT_THROW(Filament(std::vector<CellState>{}), Error);
  EXPECT_THROW(Filament::parse(""), Error);
  EXPECT_THROW(Filament::uniform(0, 1), Error);
}

TEST(Filament, ParseAndPrint) {
  EXPECT_EQ(Filament::parse("0222"), Filament({0, 2, 2, 2}));
  EXPECT_EQ(Filament::parse("0, 2,2,2"), Filament({0, 2, 2, 2}));
  EXPECT_EQ(Filament({1, 0, 2}).to_string(), "102");
  EXPECT_THROW(Filament::parse("01x"), Error);
}

TEST(Filament, AppendAndUniform) {
  EXPECT_EQ(Filament::uniform(3, 2), Filament({2, 2, 2}));
  const Filament f{0, 1};
  EXPECT_EQ(f.appended(2), Filament({0, 1, 2}));
  EXPECT_EQ(f.size(), 2U);
}

TEST(Filament, HashSeparatesSmallStates) {
  FilamentHash h;
  EXPECT_EQ(h(Filament{0, 1}), h(Filament{0, 1}));
  EXPECT_NE(h(Filament{0, 1}), h(Filament{1, 0}));
  EXPECT_NE(h(Filament{0}), h(Filament{0, 0}));
}

TEST(Neighborhood, BoundaryReads) {
  EXPECT_EQ(neighborhood_of(Filament{0, 2, 2}, 0, 1), r1(kEmpty, 2));
  const Neighborhood a{2, {kEmpty, 0}, {kEmpty, kEmpty}};
  EXPECT_EQ(neighborhood_of(Filament{0, 1}, 1, 2), a);
  const Neighborhood b{2, {0, 1}, {0, kEmpty}};
  EXPECT_EQ(neighborhood_of(Filament{0, 1, 1, 0}, 2, 2), b);
}

TEST(Neighborhood, SingleCellSeesEmptyBothSides) {
  EXPECT_EQ(neighborhood_of(Filament{1}, 0, 1), r1(kEmpty, kEmpty));
}

TEST(Neighborhood, RejectsBadArguments) {
  EXPECT_THROW(neighborhood_of(Filament{0, 1}, 2, 1), Error);
  EXPECT_THROW(neighborhood_of(Filament{0, 1}, 0, 3), Error);
  EXPECT_THROW(neighborhood_of(Filament{0, 1}, 0, 0), Error);
}

TEST(Neighborhood, MirrorSwapsAndReverses) {
  const Neighborhood n{2, {kEmpty, 0}, {1, 2}};
  const Neighborhood m{2, {2, 1}, {0, kEmpty}};
  EXPECT_EQ(n.mirrored(), m);
  EXPECT_EQ(n.mirrored().mirrored(), n);
}

TEST(Neighborhood, AdmissibleCounts) {
  // Per side: all-Empty, or Empty outermost then states, or all states.
  EXPECT_EQ(admissible_neighborhoods(2, 1).size(), 9U);
  EXPECT_EQ(admissible_neighborhoods(3, 1).size(), 16U);
  EXPECT_EQ(admissible_neighborhoods(2, 2).size(), 49U);
  EXPECT_EQ(admissible_neighborhoods(3, 2).size(), 13U * 13U);
  for (const auto& n : admissible_neighborhoods(3, 2)) EXPECT_TRUE(n.well_formed());
}

TEST(Neighborhood, EveryReadIsAdmissible) {
  const Filament f{0, 1, 2, 0, 1};
  for (int r = 1; r <= 2; ++r) {
    const auto all = admissible_neighborhoods(3, r);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const auto n = neighborhood_of(f, i, r);
      EXPECT_NE(std::find(all.begin(), all.end(), n), all.end()) << n.to_string();
    }
  }
}

TEST(Neighborhood, GapIsNotWellFormed) {
  const Neighborhood n{2, {0, kEmpty}, {1, 1}};
  EXPECT_FALSE(n.well_formed());
}

TEST(PatternToken, AnyNeverMatchesEmpty) {
  EXPECT_TRUE(PatternToken::any().matches(0));
  EXPECT_TRUE(PatternToken::any().matches(2));
  EXPECT_FALSE(PatternToken::any().matches(kEmpty));
  EXPECT_TRUE(PatternToken::empty().matches(kEmpty));
  EXPECT_FALSE(PatternToken::empty().matches(0));
  EXPECT_TRUE(PatternToken::literal(1).matches(1));
  EXPECT_FALSE(PatternToken::literal(1).matches(kEmpty));
}

RuleEntry entry(CellState cur, PatternToken l, PatternToken r, CellState next) { return {cur, {l, {}}, {r, {}}, next}; }

TEST(Rule, UnmatchedInputsHold) {
  const Rule rule("r", 3, 1, true, {entry(0, PatternToken::any(), PatternToken::literal(1), 1)});
  EXPECT_EQ(rule.next(0, r1(2, 1)), 1);
  EXPECT_EQ(rule.next(0, r1(1, 2)), 1);  // mirrored
  EXPECT_EQ(rule.next(0, r1(kEmpty, 1)), 0);
  EXPECT_EQ(rule.next(2, r1(1, 1)), 2);
}

TEST(Rule, OrderedRuleDoesNotMirror) {
  const Rule rule("r", 3, 1, false, {entry(0, PatternToken::any(), PatternToken::literal(1), 1)});
  EXPECT_EQ(rule.next(0, r1(2, 1)), 1);
  EXPECT_EQ(rule.next(0, r1(1, 2)), 0);
}

TEST(Rule, ConflictingEntriesRejected) {
  EXPECT_THROW(Rule("r", 3, 1, false,
                    {entry(0, PatternToken::any(), PatternToken::literal(1), 1),
                     entry(0, PatternToken::literal(2), PatternToken::literal(1), 2)}),
               RuleError);
  // Agreeing overlaps are fine.
  EXPECT_NO_THROW(Rule("r", 3, 1, false,
                       {entry(0, PatternToken::any(), PatternToken::literal(1), 1),
                        entry(0, PatternToken::literal(2), PatternToken::literal(1), 1)}));
}

TEST(Rule, MirrorOverlapIsAConflict) {
  // {*,1} mirrored covers (1,0), which the second entry sends elsewhere.
  EXPECT_THROW(Rule("r", 3, 1, true,
                    {entry(0, PatternToken::any(), PatternToken::literal(1), 1),
                     entry(0, PatternToken::literal(1), PatternToken::literal(0), 2)}),
               RuleError);
}

TEST(Rule, RangeChecks) {
  EXPECT_THROW(Rule("r", 3, 1, false, {entry(3, PatternToken::any(), PatternToken::any(), 0)}), RuleError);
  EXPECT_THROW(Rule("r", 3, 1, false, {entry(0, PatternToken::any(), PatternToken::any(), 3)}), RuleError);
  EXPECT_THROW(Rule("r", 3, 1, false, {entry(0, PatternToken::literal(5), PatternToken::any(), 1)}), RuleError);
  EXPECT_THROW(Rule("r", 1, 1, false, {}), RuleError);
  EXPECT_THROW(Rule("r", 11, 1, false, {}), RuleError);
  EXPECT_THROW(Rule("r", 2, 3, false, {}), RuleError);
  const Rule ok("r", 2, 1, false, {});
  EXPECT_THROW((void)ok.next(2, r1(0, 0)), Error);
  EXPECT_THROW((void)ok.next(0, Neighborhood{2, {0, 0}, {0, 0}}), Error);
}

TEST(Rule, NeighborhoodCodeIsBaseSPlusOne) {
  const Rule rule("r", 3, 2, false, {});
  EXPECT_EQ(rule.neighborhood_count(), 4U * 4 * 4 * 4);
  for (const auto& n : admissible_neighborhoods(3, 2)) {
    const auto sym = [](MaybeState s) -> std::size_t { return s ? *s : 3; };
    const auto expected = ((sym(n.left[0]) * 4 + sym(n.left[1])) * 4 + sym(n.right[0])) * 4 + sym(n.right[1]);
    EXPECT_EQ(rule.neighborhood_code(n), expected);
  }
}

TEST(Rule, FromTableRoundTrips) {
  std::mt19937_64 rng(7);
  for (int s = 2; s <= 3; ++s) {
    for (int r = 1; r <= 2; ++r) {
      const auto count = neighborhood_count(s, r);
      std::vector<CellState> table(s * count);
      for (int c = 0; c < s; ++c)
        for (std::size_t k = 0; k < count; ++k) table[c * count + k] = static_cast<CellState>(c);
      // Only admissible cells are reachable; randomize those.
      for (const auto& n : admissible_neighborhoods(s, r)) {
        const Rule probe("p", s, r, false, {});
        for (int c = 0; c < s; ++c) table[c * count + probe.neighborhood_code(n)] = static_cast<CellState>(rng() % s);
      }
      const auto rule = Rule::from_table("t", s, r, table);
      EXPECT_TRUE(std::equal(table.begin(), table.end(), rule.table().begin(), rule.table().end()));
      const Rule rebuilt("t", s, r, false, std::vector<RuleEntry>(rule.entries().begin(), rule.entries().end()));
      EXPECT_TRUE(std::equal(rebuilt.table().begin(), rebuilt.table().end(), table.begin(), table.end()));
    }
  }
  EXPECT_THROW(Rule::from_table("t", 2, 1, std::vector<CellState>(17)), RuleError);
}

TEST(Rule, SymmetricTablesAreMirrorInvariant) {
  const Rule rule("r", 3, 2, true,
                  {{0, {PatternToken::empty(), PatternToken::literal(1)}, {PatternToken::any(), PatternToken::any()}, 2},
                   {1, {PatternToken::literal(0), PatternToken::literal(0)}, {PatternToken::literal(2), PatternToken::empty()}, 0}});
  for (const auto& n : admissible_neighborhoods(3, 2)) {
    for (CellState c = 0; c < 3; ++c) EXPECT_EQ(rule.next(c, n), rule.next(c, n.mirrored()));
  }
}

TEST(Rule, RenamedKeepsBehavior) {
  const Rule rule("a", 2, 1, false, {entry(0, PatternToken::any(), PatternToken::any(), 1)});
  const auto b = rule.renamed("b");
  EXPECT_EQ(b.name(), "b");
  EXPECT_TRUE(std::equal(rule.table().begin(), rule.table().end(), b.table().begin(), b.table().end()));
}

TEST(RuleError, CarriesLine) {
  const RuleError e("bad", 4);
  EXPECT_EQ(e.line(), 4);
  EXPECT_EQ(RuleError("bad").line(), 0);
}

}  // namespace
}  // namespace filament
