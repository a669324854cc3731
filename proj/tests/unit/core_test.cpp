#include <random>
#include <string>

#include "gtest/gtest.h"
#include "ontoforge/core/graph.hpp"
#include "ontoforge/core/model.hpp"
#include "ontoforge/core/parallel.hpp"
#include "ontoforge/core/symbol_table.hpp"
#include "ontoforge/error.hpp"

namespace ontoforge {
namespace {

Symbol S(const char* s) { return Symbol(s); }

TEST(CurieTest, ParsesPrefixAndLocalId) {
    const auto c = Curie::parse("CL:1001502");
    EXPECT_EQ(c.prefix(), "CL");
    EXPECT_EQ(c.local_id(), "1001502");
    EXPECT_EQ(c.str(), "CL:1001502");
}

TEST(CurieTest, RejectsMalformed) {
    EXPECT_THROW(Curie::parse("CL1001502"), InvalidCurie);
    EXPECT_THROW(Curie::parse("CL:10:02"), InvalidCurie);
    EXPECT_THROW(Curie::parse(":123"), InvalidCurie);
    EXPECT_THROW(Curie::parse("CL:"), InvalidCurie);
    EXPECT_FALSE(Curie::looks_like_curie("MitralCell"));
    EXPECT_TRUE(Curie::looks_like_curie("GO:0008150"));
}

TEST(SymbolTest, Validation) {
    EXPECT_TRUE(Symbol::is_valid("MitralCell"));
    EXPECT_TRUE(Symbol::is_valid("Curie_CL_0000099"));
    EXPECT_FALSE(Symbol::is_valid("5HT"));
    EXPECT_FALSE(Symbol::is_valid("has part"));
    EXPECT_FALSE(Symbol::is_valid(""));
    EXPECT_THROW(Symbol("bad symbol"), InvalidSymbol);
}

TEST(ToSymbolTest, MitralCellLabels) {
    EXPECT_EQ(to_symbol("mitral cell").str(), "MitralCell");
    EXPECT_EQ(to_symbol("interneuron").str(), "Interneuron");
    EXPECT_EQ(to_symbol("olfactory bulb mitral cell layer").str(), "OlfactoryBulbMitralCellLayer");
    EXPECT_EQ(to_symbol("has soma location").str(), "HasSomaLocation");
}

TEST(ToSymbolTest, PunctuationDigitsAndCase) {
    EXPECT_EQ(to_symbol("5-HT receptor").str(), "N5HTReceptor");
    EXPECT_EQ(to_symbol("abnormality of metabolism/homeostasis").str(), "AbnormalityOfMetabolismHomeostasis");
    EXPECT_EQ(to_symbol("subClassOf").str(), "SubClassOf");
    EXPECT_EQ(to_symbol("T-cell").str(), "TCell");
    EXPECT_EQ(to_symbol("type 2 diabetes").str(), "Type2Diabetes");
    EXPECT_THROW(to_symbol("--- !!"), InvalidLabel);
}

TEST(ToSymbolTest, FallbackForUnlabeledCurie) {
    EXPECT_EQ(fallback_symbol(Curie::parse("CL:0000099")).str(), "Curie_CL_0000099");
    EXPECT_EQ(fallback_symbol(Curie::parse("X:a.b-c")).str(), "Curie_X_a_b_c");
}

TEST(SymbolTableTest, SuffixesCollisionsAndLogsThem) {
    SymbolTable t;
    const auto a = t.register_term(Curie::parse("A:1"), "cell");
    const auto b = t.register_term(Curie::parse("B:1"), "Cell");
    const auto c = t.register_term(Curie::parse("C:1"), "cell");
    EXPECT_EQ(a.str(), "Cell");
    EXPECT_EQ(b.str(), "Cell2");
    EXPECT_EQ(c.str(), "Cell3");
    ASSERT_EQ(t.collisions().size(), 2u);
    EXPECT_EQ(t.collisions()[0].requested.str(), "Cell");
    EXPECT_EQ(t.curie_for(b)->str(), "B:1");
    EXPECT_EQ(*t.symbol_for(Curie::parse("C:1")), c);
    EXPECT_THROW(t.register_term(Curie::parse("A:1"), "other"), DuplicateCurie);
}

TEST(SymbolTableTest, IsBijective) {
    SymbolTable t;
    const char* labels[] = {"cell", "cell", "neuron", "Neuron", "glia", "cell"};
    for (int i = 0; i < 6; ++i) t.register_term(Curie("P", std::to_string(i)), labels[i]);
    ASSERT_EQ(t.forward().size(), t.reverse().size());
    for (const auto& [curie, sym] : t.forward()) EXPECT_EQ(t.reverse().at(sym), curie);
}

TEST(TermObjectTest, JsonRoundTrip) {
    TermObject t;
    t.id = S("MitralCell");
    t.original_id = Curie::parse("CL:1001502");
    t.label = "mitral cell";
    t.definition = "A cell.";
    t.relationships = {{subclass_of(), S("Interneuron")}, {S("HasSomaLocation"), S("OlfactoryBulbMitralCellLayer")}};
    t.logical_definitions = std::vector<Relationship>{{subclass_of(), S("Interneuron")}};
    t.created_date = "2023-01-02";
    EXPECT_EQ(term_from_json(to_json(t)), t);

    TermObject bare;
    bare.id = S("X");
    bare.label = "x";
    const auto j = to_json(bare);
    EXPECT_FALSE(j.contains("original_id"));
    EXPECT_FALSE(j.contains("definition"));
    EXPECT_EQ(term_from_json(j), bare);
}

TEST(TermObjectTest, GenusDifferentiaShape) {
    EXPECT_TRUE(is_genus_differentia({{subclass_of(), S("A")}, {S("PartOf"), S("B")}}));
    EXPECT_FALSE(is_genus_differentia({{S("PartOf"), S("B")}}));
    EXPECT_FALSE(is_genus_differentia({{subclass_of(), S("A")}, {subclass_of(), S("B")}}));
}

TEST(TermObjectTest, DedupeKeepsFirstOccurrence) {
    const std::vector<Relationship> in{{S("P"), S("A")}, {S("Q"), S("B")}, {S("P"), S("A")}};
    const auto out = dedupe_relationships(in);
    ASSERT_EQ(out.size(), 2u);
    EXPECT_EQ(out[0].target.str(), "A");
    EXPECT_EQ(out[1].target.str(), "B");
}

class GraphTest : public ::testing::Test {
protected:
    void SetUp() override {
        // X -isa-> B -isa-> A ; X -partOf-> H ; H -isa-> Body ; B -partOf-> Q
        g.add_edge(S("X"), subclass_of(), S("B"));
        g.add_edge(S("B"), subclass_of(), S("A"));
        g.add_edge(S("X"), S("PartOf"), S("H"));
        g.add_edge(S("H"), subclass_of(), S("Body"));
        g.add_edge(S("B"), S("PartOf"), S("Q"));
    }
    OntologyGraph g;
};

TEST_F(GraphTest, SubclassChain) {
    EXPECT_TRUE(is_more_general(g, S("X"), subclass_of(), S("B")));
    EXPECT_TRUE(is_more_general(g, S("X"), subclass_of(), S("A")));
    EXPECT_FALSE(is_more_general(g, S("A"), subclass_of(), S("X")));
}

TEST_F(GraphTest, MixedPredicatePaths) {
    EXPECT_TRUE(is_more_general(g, S("X"), S("PartOf"), S("Body")));
    EXPECT_TRUE(is_more_general(g, S("X"), S("PartOf"), S("Q")));
    EXPECT_FALSE(is_more_general(g, S("X"), subclass_of(), S("H")));
    EXPECT_FALSE(is_more_general(g, S("X"), S("HasPart"), S("H")));
}

TEST_F(GraphTest, NeedsAtLeastOneEdge) {
    EXPECT_FALSE(is_more_general(g, S("X"), subclass_of(), S("X")));
    EXPECT_FALSE(is_more_general(g, S("Unknown"), subclass_of(), S("A")));
}

TEST_F(GraphTest, CyclesTerminate) {
    g.add_edge(S("A"), subclass_of(), S("X"));
    EXPECT_TRUE(is_more_general(g, S("X"), subclass_of(), S("X")));
    EXPECT_FALSE(is_more_general(g, S("X"), subclass_of(), S("Nowhere")));
}

TEST(GraphBuildTest, DuplicateEdgesCollapse) {
    OntologyGraph g;
    EXPECT_TRUE(g.add_edge(S("A"), subclass_of(), S("B")));
    EXPECT_FALSE(g.add_edge(S("A"), subclass_of(), S("B")));
    EXPECT_EQ(g.edges().size(), 1u);
    EXPECT_EQ(g.nodes().size(), 2u);
}

TEST(ParallelTest, VisitsEveryIndexOnce) {
    std::vector<int> hits(1000, 0);
    parallel_for_bounded(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) EXPECT_EQ(h, 1);
}

TEST(ParallelTest, RethrowsLowestFailingIndex) {
    try {
        parallel_for_bounded(50, 1, [](std::size_t i) {
            if (i == 7 || i == 30) throw std::runtime_error(std::to_string(i));
        });
        FAIL();
    } catch (const std::runtime_error& e) {
        EXPECT_STREQ(e.what(), "7");
    }
}

} // namespace
} // namespace ontoforge
