#include "tcs/blocks/building_block.hpp"
#include "tcs/blocks/catalog.hpp"

#include <gtest/gtest.h>

using namespace tcs;
using namespace tcs::blocks;

namespace {

IntVector iv(std::initializer_list<long long> v) { return IntVector(v.begin(), v.end()); }

const std::vector<SemiFanoFamily>& shipped() {
  static const auto catalog = load_catalog(TCS_CATALOG_PATH);
  return catalog;
}

std::string record_with(const std::string& key, const std::string& value) {
  Json j = family_to_json(find_family(shipped(), "Y5"));
  j[key] = Json::parse(value);
  return "[" + j.dump() + "]";
}

}  // namespace

TEST(Catalog, ShippedFamilies) {
  const auto& c = shipped();
  ASSERT_EQ(c.size(), 5u);
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_EQ(c[i].id, "Y" + std::to_string(i + 1));
  const auto report = validate_catalog(c);
  EXPECT_TRUE(report.ok()) << report.summary();
  EXPECT_TRUE(report.warnings.empty());
}

TEST(Catalog, RoundTrip) {
  for (const auto& y : shipped()) {
    const auto back = family_from_json(family_to_json(y));
    EXPECT_EQ(family_to_json(back).dump(), family_to_json(y).dump());
  }
}

TEST(Catalog, ValidationRules) {
  const auto bad = parse_catalog(record_with("c2_pairings", "[23]"));
  const auto report = validate_catalog(bad);
  ASSERT_FALSE(report.ok());
  EXPECT_EQ(report.issues.front().rule, "c1c2=24");
  EXPECT_THROW(require_valid(bad), Error);
  EXPECT_THROW(derive_block(bad.front()), Error);

  EXPECT_EQ(validate_catalog(parse_catalog(record_with("picard", "[[0]]"))).issues.front().rule, "nondegenerate");
  EXPECT_EQ(validate_catalog(parse_catalog(record_with("antiK", "[2]"))).issues.front().rule, "antiK-primitive");
  EXPECT_EQ(validate_catalog(parse_catalog(record_with("antiK", "[1, 0]"))).issues.front().rule, "shape");

  auto twice = shipped();
  twice.push_back(twice.front());
  EXPECT_EQ(validate_catalog(twice).issues.front().rule, "unique-id");
}

TEST(Catalog, EmptyAndMalformed) {
  const auto empty = parse_catalog("  \n");
  EXPECT_TRUE(empty.empty());
  const auto report = validate_catalog(empty);
  EXPECT_TRUE(report.ok());
  EXPECT_EQ(report.warnings.size(), 1u);
  EXPECT_THROW(parse_catalog("{"), Error);
  EXPECT_THROW(parse_catalog("{}"), Error);
  EXPECT_THROW(parse_catalog(record_with("extra", "1")), Error);
  EXPECT_THROW(parse_catalog(record_with("chi", "\"six\"")), Error);
  EXPECT_THROW(parse_catalog(record_with("picard", "[[1, 2], [3, 4]]")), Error);
  EXPECT_THROW(load_catalog("/nonexistent/catalog.json"), Error);
}

TEST(Blowup, ReproducesCatalogRecords) {
  struct Case {
    const char* id;
    long long degree, index, chi, b3, d, g, k;
  };
  const Case cases[] = {{"Y1", 54, 3, 4, 0, 6, 0, 3}, {"Y2", 64, 4, 4, 0, 8, 2, 4}, {"Y3", 64, 4, 4, 0, 11, 14, 4}};
  for (const auto& c : cases) {
    const auto y = blowup_rank1(c.degree, c.index, c.chi, c.b3, c.d, c.g, c.k, c.id);
    const auto& ref = find_family(shipped(), c.id);
    EXPECT_EQ(y.picard.gram(), ref.picard.gram()) << c.id;
    EXPECT_EQ(y.antiK, ref.antiK) << c.id;
    EXPECT_EQ(y.c2_pairings, ref.c2_pairings) << c.id;
    EXPECT_EQ(y.chi, ref.chi) << c.id;
    EXPECT_EQ(y.b3, ref.b3) << c.id;
    ValidationReport report;
    validate_family(y, report);
    EXPECT_TRUE(report.ok()) << report.summary();
  }
}

TEST(Blowup, Guards) {
  try {
    blowup_rank1(64, 4, 4, 0, 0, 0, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotWeakFano);
  }
  try {
    blowup_rank1(10, 3, 4, 0, 1, 0, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonIntegralDegree);
  }
  EXPECT_THROW(blowup_rank1(64, 4, 4, 0, 30, 0, 4), Error);
  EXPECT_THROW(blowup_rank1(-2, 1, 4, 0, 1, 0, 1), Error);
}

TEST(BuildingBlock, DerivedProfiles) {
  struct Expected {
    const char* id;
    IntVector c2Z;
    long long genus, chiZ, b3Z;
  };
  const Expected expected[] = {{"Y1", iv({40, 26, 16}), 9, -10, 18},
                               {"Y2", iv({26, 22, 2}), 2, 0, 8},
                               {"Y3", iv({26, 22, 2}), 2, -24, 32},
                               {"Y4", iv({12, 18, 54}), 28, -48, 56},
                               {"Y5", iv({42, 18}), 10, -18, 24}};
  for (const auto& e : expected) {
    const auto z = derive_block(find_family(shipped(), e.id));
    EXPECT_EQ(z.c2Z, e.c2Z) << e.id;
    EXPECT_EQ(z.genus, e.genus) << e.id;
    EXPECT_EQ(z.chiZ, e.chiZ) << e.id;
    EXPECT_EQ(z.b3Z, e.b3Z) << e.id;
    EXPECT_EQ(z.k_rank, 1u);
  }
}

TEST(BuildingBlock, ChernIdentities) {
  for (const auto& y : shipped()) {
    const auto z = derive_block(y);
    EXPECT_EQ(z.c1_dot_c2(), 24) << y.id;
    EXPECT_EQ(lattice::gd(z.c2Z) % 2, 0) << y.id;
    // c1(Z) spans the kernel of the restriction to a fibre.
    EXPECT_EQ(z.restriction() * z.c1(), IntVector(z.rank(), Int(0)));
    // chi(Z) = chi(Y) + chi(C) with C the base curve of genus g.
    EXPECT_EQ(z.chiZ, y.chi + 2 - 2 * z.genus);
  }
}

TEST(BuildingBlock, Json) {
  const auto j = block_to_json(derive_block(find_family(shipped(), "Y5")));
  EXPECT_EQ(j.dump(), R"({"family_id":"Y5","N":[[18]],"basis_labels":["H"],"c2Z":[42,18],"chiZ":-18,"b3Z":24,)"
                      R"("genus":10,"K_rank":1,"c1_dot_c2":24})");
}
