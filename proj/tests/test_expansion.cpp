#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "skg/expansion.hpp"
#include "skg/textrank.hpp"

using namespace skg;

TEST_CASE("build_known_text") {
    SUBCASE("two-entity set with relation and other-entity text") {
        std::string other = "nick, cut a nick into";
        std::string got = build_known_text(
            {{"chip",
              "a mark left after a small piece has been chopped or broken off of "
              "something"},
             {"snick", "a small cut"}},
            "derivationally related form", &other);
        CHECK(got ==
              "chip, a mark left after a small piece has been chopped or broken off "
              "of something [PSEP] snick, a small cut [SEP] derivationally related "
              "form [SEP] nick, cut a nick into");
    }
    SUBCASE("single entity without other-entity text") {
        CHECK(build_known_text({{"name", "desc"}}, "relation") ==
              "name, desc [SEP] relation");
    }
    SUBCASE("empty description leaves no dangling comma") {
        CHECK(build_known_text({{"name", ""}}, "relation") == "name [SEP] relation");
    }
}

TEST_CASE("original_known_text and relation_input_text on the toy graph") {
    auto dir = testing::write_toy_dataset("exp_originals");
    KnowledgeGraph g = load_graph_dir(dir.string());
    Triple t{g.entity_ids.at("e1"), g.relation_ids.at("r0"), g.entity_ids.at("e2")};

    CHECK(original_known_text(g, t, Direction::TailPrediction) ==
          "snick, a small cut [SEP] derivationally related form");
    CHECK(original_known_text(g, t, Direction::HeadPrediction) ==
          "nick, cut a nick into [SEP] inverse derivationally related form");
    CHECK(relation_input_text(g, t) ==
          "snick, a small cut [SEP] nick, cut a nick into");
}

TEST_CASE("expand_dataset") {
    SUBCASE("no shared keys -> exactly 2 x n_train originals") {
        auto dir = testing::fresh_dir("exp_no_share");
        testing::write_file(dir / "train.txt", "a\tr0\tx\nb\tr0\ty\nc\tr1\tx\n");
        testing::write_file(dir / "valid.txt", "");
        testing::write_file(dir / "test.txt", "");
        testing::write_file(dir / "entity2text.txt",
                            "a\ta, da\nb\tb, db\nc\tc, dc\nx\tx, dx\ny\ty, dy\n");
        testing::write_file(dir / "relation2text.txt", "r0\tzero\nr1\tone\n");
        KnowledgeGraph g = load_graph_dir(dir.string());
        auto ex = expand_dataset(g);
        REQUIRE(ex.size() == 6);
        for (const auto& e : ex) {
            CHECK_FALSE(e.is_set_example());
            CHECK(e.group_members.size() == 1);
        }
        // Per-triple order: head-prediction example then tail-prediction.
        CHECK(ex[0].direction == Direction::HeadPrediction);
        CHECK(ex[0].target == g.entity_ids.at("a"));
        CHECK(ex[1].direction == Direction::TailPrediction);
        CHECK(ex[1].target == g.entity_ids.at("x"));
        CHECK(ex[1].known_text == "a, da [SEP] zero");
        CHECK(ex[0].known_text == "x, dx [SEP] inverse zero");
    }

    SUBCASE("three triples sharing one (r,t) -> 7 examples, one set of size 3") {
        auto dir = testing::fresh_dir("exp_rt_share");
        testing::write_file(dir / "train.txt", "a\tr0\tx\nb\tr0\tx\nc\tr0\tx\n");
        testing::write_file(dir / "valid.txt", "");
        testing::write_file(dir / "test.txt", "");
        testing::write_file(dir / "entity2text.txt",
                            "a\ta, da\nb\tb, db\nc\tc, dc\nx\tx, dx\n");
        testing::write_file(dir / "relation2text.txt", "r0\tzero\n");
        KnowledgeGraph g = load_graph_dir(dir.string());
        auto ex = expand_dataset(g);
        REQUIRE(ex.size() == 7);
        const ExpandedExample& set = ex.back();
        CHECK(set.is_set_example());
        CHECK(set.direction == Direction::TailPrediction);
        CHECK(set.target == g.entity_ids.at("x"));
        CHECK(set.group_members.size() == 3);
        // Group members reproduce the index entry for the key exactly.
        CHECK(set.group_members ==
              g.rt_index.at({g.relation_ids.at("r0"), g.entity_ids.at("x")}));
        CHECK(set.known_text == "a, da [PSEP] b, db [PSEP] c, dc [SEP] zero");
    }

    SUBCASE("shared (h,r) key yields a head-prediction set example") {
        auto dir = testing::fresh_dir("exp_hr_share");
        testing::write_file(dir / "train.txt", "a\tr0\tx\na\tr0\ty\n");
        testing::write_file(dir / "valid.txt", "");
        testing::write_file(dir / "test.txt", "");
        testing::write_file(dir / "entity2text.txt", "a\ta, da\nx\tx, dx\ny\ty, dy\n");
        testing::write_file(dir / "relation2text.txt", "r0\tzero\n");
        KnowledgeGraph g = load_graph_dir(dir.string());
        auto ex = expand_dataset(g);
        REQUIRE(ex.size() == 5);
        const ExpandedExample& set = ex.back();
        CHECK(set.direction == Direction::HeadPrediction);
        CHECK(set.target == g.entity_ids.at("a"));
        CHECK(set.group_members ==
              g.hr_index.at({g.entity_ids.at("a"), g.relation_ids.at("r0")}));
        CHECK(set.known_text == "x, dx [PSEP] y, dy [SEP] inverse zero");
    }

    SUBCASE("set-example counts agree with the graph indexes") {
        std::mt19937 rng(5);
        KnowledgeGraph g = testing::random_graph(rng, 30, 3, 300);
        auto ex = expand_dataset(g);
        std::size_t expected_sets = 0;
        for (const auto& [k, v] : g.rt_index)
            if (v.size() >= 2) ++expected_sets;
        for (const auto& [k, v] : g.hr_index)
            if (v.size() >= 2) ++expected_sets;
        CHECK(ex.size() == 2 * g.train.size() + expected_sets);

        // Dropping set examples recovers the original-only dataset exactly.
        ExpansionConfig originals_only;
        originals_only.min_group_size = g.train.size() + 1;
        auto orig = expand_dataset(g, originals_only);
        REQUIRE(orig.size() == 2 * g.train.size());
        for (std::size_t i = 0; i < orig.size(); ++i) {
            CHECK(orig[i].known_text == ex[i].known_text);
            CHECK(orig[i].target == ex[i].target);
        }
    }

    SUBCASE("groups capped at max_group_size, largest degree kept") {
        auto dir = testing::fresh_dir("exp_cap");
        std::ostringstream train, ent;
        // h0..h4 all point at x; h0 gets extra degree via a second relation.
        for (int i = 0; i < 5; ++i) {
            train << "h" << i << "\tr0\tx\n";
            ent << "h" << i << "\thead" << i << ", desc" << i << "\n";
        }
        train << "h0\tr1\ty\nh1\tr1\ty\nh4\tr1\tz\n";
        ent << "x\tx, dx\ny\ty, dy\nz\tz, dz\n";
        testing::write_file(dir / "train.txt", train.str());
        testing::write_file(dir / "valid.txt", "");
        testing::write_file(dir / "test.txt", "");
        testing::write_file(dir / "entity2text.txt", ent.str());
        testing::write_file(dir / "relation2text.txt", "r0\tzero\nr1\tone\n");
        KnowledgeGraph g = load_graph_dir(dir.string());
        ExpansionConfig cfg;
        cfg.max_group_size = 3;
        auto ex = expand_dataset(g, cfg);
        const ExpandedExample* set = nullptr;
        for (const auto& e : ex)
            if (e.is_set_example() && e.target == g.entity_ids.at("x")) set = &e;
        REQUIRE(set != nullptr);
        REQUIRE(set->group_members.size() == 3);
        // Degree-2 members h0, h1, h4 survive; output re-sorted by index.
        std::vector<int> want = {g.entity_ids.at("h0"), g.entity_ids.at("h1"),
                                 g.entity_ids.at("h4")};
        std::sort(want.begin(), want.end());
        CHECK(set->group_members == want);
    }

    SUBCASE("long set descriptions are summarized to top_n sentences") {
        auto dir = testing::fresh_dir("exp_summ");
        testing::write_file(dir / "train.txt", "a\tr0\tx\nb\tr0\tx\n");
        testing::write_file(dir / "valid.txt", "");
        testing::write_file(dir / "test.txt", "");
        testing::write_file(
            dir / "entity2text.txt",
            "a\ta, the quick brown fox jumps over fences. the quick brown fox runs "
            "through fields. submarine cables span oceans silently\n"
            "b\tb, the quick brown fox sleeps under trees. violet paint dries slowly "
            "indoors. seven drums echo loudly tonight\n"
            "x\tx, dx\n");
        testing::write_file(dir / "relation2text.txt", "r0\tzero\n");
        KnowledgeGraph g = load_graph_dir(dir.string());
        auto ex = expand_dataset(g);
        const ExpandedExample& set = ex.back();
        REQUIRE(set.is_set_example());
        // 6 sentences total, top 3 kept: the fox cluster dominates, so each
        // member keeps only its fox sentences and names stay verbatim.
        CHECK(set.known_text ==
              "a, the quick brown fox jumps over fences. the quick brown fox runs "
              "through fields [PSEP] b, the quick brown fox sleeps under trees "
              "[SEP] zero");
        std::size_t total_sentences = 0;
        for (int m : set.group_members)
            total_sentences += split_sentences(g.entity(m).description).size();
        CHECK(total_sentences > 3);
    }
}
