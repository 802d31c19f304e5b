#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include "alcove/characters.hpp"

using namespace alcove;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("alcove_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

} // namespace

TEST(Characters, TrivialRepresentation) {
    for (const auto& id : {make_algebra(Family::A, 3), make_algebra(Family::G, 2)}) {
        RootSystem rs = build_root_system(id);
        CharacterTable t = dominant_character(rs, Weight::zero(rs.rank()));
        ASSERT_EQ(t.entries.size(), 1u);
        EXPECT_EQ(t.entries.begin()->first, Weight::zero(rs.rank()));
        EXPECT_EQ(t.entries.begin()->second, 1);
    }
}

TEST(Characters, RankOneStrings) {
    RootSystem rs = build_root_system(make_algebra(Family::A, 1));
    for (long long n = 0; n <= 6; ++n) {
        CharacterTable t = dominant_character(rs, Weight({n}));
        // n, n-2, ..., down to 0 or 1, each with multiplicity one
        EXPECT_EQ(t.entries.size(), static_cast<std::size_t>(n / 2 + 1));
        for (long long m = n; m >= 0; m -= 2) {
            EXPECT_EQ(t.multiplicity_of_dominant(Weight({m})), 1) << "n=" << n << " m=" << m;
        }
        EXPECT_EQ(weyl_dimension(rs, Weight({n})), Rat(static_cast<long>(n + 1)));
    }
}

TEST(Characters, AdjointZeroWeightHasRankMultiplicity) {
    for (const auto& id : {make_algebra(Family::A, 2), make_algebra(Family::B, 3),
                           make_algebra(Family::C, 3), make_algebra(Family::D, 4),
                           make_algebra(Family::F, 4), make_algebra(Family::G, 2)}) {
        RootSystem rs = build_root_system(id);
        CharacterTable t = dominant_character(rs, rs.theta);
        EXPECT_EQ(weight_multiplicity(rs, t, Weight::zero(rs.rank())), rs.rank()) << id.str();
    }
}

TEST(Characters, E8Adjoint) {
    RootSystem rs = build_root_system(make_algebra(Family::E, 8));
    CharacterTable t = dominant_character(rs, rs.theta);
    ASSERT_EQ(t.entries.size(), 2u);
    EXPECT_EQ(t.multiplicity_of_dominant(rs.theta), 1);
    EXPECT_EQ(t.multiplicity_of_dominant(Weight::zero(8)), 8);
    EXPECT_EQ(orbit_size(rs, rs.theta), 240);
    EXPECT_EQ(character_dimension(rs, t), 248);
    EXPECT_EQ(weyl_dimension(rs, rs.theta), Rat(248));
    EXPECT_EQ(weyl_dimension(rs, Weight::fundamental(8, 0)), Rat(3875));
}

TEST(Characters, DimensionMatchesWeylFormula) {
    std::vector<std::pair<AlgebraId, Weight>> cases = {
        {make_algebra(Family::A, 2), Weight({1, 1})},
        {make_algebra(Family::A, 2), Weight({2, 1})},
        {make_algebra(Family::A, 3), Weight({1, 0, 1})},
        {make_algebra(Family::B, 3), Weight({0, 0, 1})},
        {make_algebra(Family::B, 3), Weight({1, 1, 0})},
        {make_algebra(Family::C, 3), Weight({0, 1, 0})},
        {make_algebra(Family::D, 4), Weight({0, 1, 0, 0})},
        {make_algebra(Family::F, 4), Weight({0, 0, 0, 1})},
        {make_algebra(Family::G, 2), Weight({1, 0})},
        {make_algebra(Family::G, 2), Weight({0, 1})},
        {make_algebra(Family::B, 5), Weight({0, 0, 0, 0, 2})},
    };
    for (const auto& [id, lambda] : cases) {
        RootSystem rs = build_root_system(id);
        CharacterTable t = dominant_character(rs, lambda);
        EXPECT_EQ(Rat(static_cast<long>(character_dimension(rs, t))), weyl_dimension(rs, lambda))
            << id.str() << " " << lambda.str();
    }
}

TEST(Characters, FundamentalsOfB13AreBinomials) {
    RootSystem rs = build_root_system(make_algebra(Family::B, 13));
    // dim Lambda^i of the 27-dimensional vector representation
    auto binom = [](long long n, long long k) {
        Rat r = 1;
        for (long long t = 0; t < k; ++t) r *= make_rat(static_cast<long>(n - t), static_cast<long>(t + 1));
        return r;
    };
    for (int i = 1; i <= 12; ++i)
        EXPECT_EQ(weyl_dimension(rs, Weight::fundamental(13, i - 1)), binom(27, i)) << i;
    EXPECT_EQ(weyl_dimension(rs, Weight::fundamental(13, 12)), Rat(8192)); // spinor
}

TEST(Characters, MultiplicityIsWeylInvariant) {
    RootSystem rs = build_root_system(make_algebra(Family::C, 3));
    Weight lambda({1, 1, 0});
    CharacterTable t = dominant_character(rs, lambda);
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<long long> label(-4, 4);
    for (int trial = 0; trial < 300; ++trial) {
        Weight mu({label(rng), label(rng), label(rng)});
        auto fold = to_dominant(rs, mu);
        EXPECT_EQ(weight_multiplicity(rs, t, mu), weight_multiplicity(rs, t, fold.dominant));
    }
}

TEST(Characters, LatticeObstruction) {
    RootSystem rs = build_root_system(make_algebra(Family::A, 2));
    CharacterTable t = dominant_character(rs, Weight({1, 1}));
    // lambda - mu outside the root lattice forces multiplicity zero
    EXPECT_EQ(weight_multiplicity(rs, t, Weight({1, 0})), 0);
    EXPECT_EQ(weight_multiplicity(rs, t, Weight({0, 1})), 0);
    EXPECT_EQ(weight_multiplicity(rs, t, Weight({1, 1})), 1);
    EXPECT_EQ(weight_multiplicity(rs, t, Weight({0, 0})), 2);
}

TEST(Characters, PositiveMultiplicityImpliesDescent) {
    RootSystem rs = build_root_system(make_algebra(Family::B, 3));
    Weight lambda({1, 0, 1});
    CharacterTable t = dominant_character(rs, lambda);
    for (const auto& [mu, mult] : t.entries) {
        auto coords = rs.root_coords(lambda - mu);
        ASSERT_TRUE(coords.has_value());
        for (long long c : *coords) EXPECT_GE(c, 0);
        EXPECT_GT(mult, 0);
    }
}

TEST(CharacterCache, RoundTrip) {
    TempDir dir;
    RootSystem rs = build_root_system(make_algebra(Family::E, 8));
    CharacterTable t = dominant_character(rs, rs.theta);
    cache_store(dir.path, rs, t);
    auto loaded = cache_load(dir.path, rs, rs.theta);
    ASSERT_TRUE(loaded.has_value());
    EXPECT_EQ(loaded->highest, t.highest);
    EXPECT_EQ(loaded->entries, t.entries);
}

TEST(CharacterCache, MissingComputedThenStored) {
    TempDir dir;
    RootSystem rs = build_root_system(make_algebra(Family::A, 2));
    Weight lambda({1, 1});
    EXPECT_FALSE(cache_load(dir.path, rs, lambda).has_value());
    CharacterStore store(dir.path);
    auto t = store.get(rs, lambda);
    EXPECT_EQ(t->multiplicity_of_dominant(Weight::zero(2)), 2);
    EXPECT_TRUE(cache_load(dir.path, rs, lambda).has_value());
}

TEST(CharacterCache, CorruptAndVersionMismatchIgnored) {
    TempDir dir;
    RootSystem rs = build_root_system(make_algebra(Family::A, 2));
    Weight lambda({1, 1});
    const auto file = dir.path / character_cache_filename(rs, lambda);
    {
        std::ofstream out(file);
        out << "this is not json";
    }
    EXPECT_FALSE(cache_load(dir.path, rs, lambda).has_value());
    CharacterStore store(dir.path);
    EXPECT_EQ(store.get(rs, lambda)->multiplicity_of_dominant(lambda), 1);

    CharacterTable t = dominant_character(rs, lambda);
    cache_store(dir.path, rs, t);
    {
        std::ifstream in(file);
        nlohmann::json doc = nlohmann::json::parse(in);
        doc["version"] = 999;
        std::ofstream out(file);
        out << doc.dump();
    }
    EXPECT_FALSE(cache_load(dir.path, rs, lambda).has_value());
}

TEST(Characters, RejectsNonDominant) {
    RootSystem rs = build_root_system(make_algebra(Family::A, 2));
    EXPECT_THROW(dominant_character(rs, Weight({-1, 0})), input_error);
}
