#include "ndncec/codebook.hpp"
#include "ndncec/errors.hpp"

#include <doctest.h>

#include <set>

using namespace ndncec;

namespace {
Name ns() { return Name::parse("/covert/test"); }
} // namespace

TEST_CASE("same seed and dimensions derive the same codebook") {
  auto a = Codebook::derive(1, 4, 1, ns(), CodebookMode::Plain);
  auto b = Codebook::derive(1, 4, 1, ns(), CodebookMode::Plain);
  REQUIRE(a.rows() == b.rows());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.columns(); ++c)
      CHECK(a.name_at(r, c) == b.name_at(r, c));

  auto other = Codebook::derive(2, 4, 1, ns(), CodebookMode::Plain);
  CHECK(a.name_at(0, 0) != other.name_at(0, 0));
}

TEST_CASE("n=1000, m=4 gives 250 rows by 16 columns") {
  auto cb = Codebook::derive(7, 1000, 4, ns(), CodebookMode::Plain);
  CHECK(cb.rows() == 250);
  CHECK(cb.columns() == 16);

  // ceil: 10 bits at m=4 -> 3 rows
  auto ragged = Codebook::derive(7, 10, 4, ns(), CodebookMode::Plain);
  CHECK(ragged.rows() == 3);
}

TEST_CASE("all names are distinct and live under the namespace") {
  auto cb = Codebook::derive(9, 64, 3, ns(), CodebookMode::Plain);
  std::set<Name> seen;
  for (const auto& n : cb.all_names()) {
    CHECK(ns().is_prefix_of(n));
    CHECK(seen.insert(n).second);
  }
  CHECK(seen.size() == static_cast<std::size_t>(cb.rows() * cb.columns()));
}

TEST_CASE("common-prefix mode: per-row prefixes match only their own row") {
  auto cb = Codebook::derive(3, 2, 1, ns(), CodebookMode::CommonPrefix);
  REQUIRE(cb.rows() == 2);
  for (int r = 0; r < cb.rows(); ++r) {
    const Name& pref = cb.row_prefix(r);
    CHECK(ns().is_prefix_of(pref));
    for (int r2 = 0; r2 < cb.rows(); ++r2)
      for (int c = 0; c < cb.columns(); ++c)
        CHECK(pref.is_prefix_of(cb.name_at(r2, c)) == (r2 == r));
    // proper prefix: never equal to a leaf name
    for (int c = 0; c < cb.columns(); ++c)
      CHECK(pref != cb.name_at(r, c));
  }
  CHECK_THROWS_AS(Codebook::derive(3, 2, 1, ns(), CodebookMode::Plain).row_prefix(0),
                  ConfigError);
}

TEST_CASE("m outside [1,8] is a parameter error") {
  CHECK_THROWS_AS(Codebook::derive(1, 8, 0, ns(), CodebookMode::Plain), ConfigError);
  CHECK_THROWS_AS(Codebook::derive(1, 8, 9, ns(), CodebookMode::Plain), ConfigError);
  CHECK_NOTHROW(Codebook::derive(1, 8, 8, ns(), CodebookMode::Plain));
  CHECK_THROWS_AS(Codebook::derive(1, 0, 1, ns(), CodebookMode::Plain), ConfigError);
}

TEST_CASE("column lookup by full name") {
  auto cb = Codebook::derive(5, 4, 2, ns(), CodebookMode::Plain);
  CHECK(cb.column_of(0, cb.name_at(0, 3)) == 3);
  CHECK(cb.column_of(0, cb.name_at(1, 0)) == -1);
  CHECK(cb.column_of(1, Name::parse("/elsewhere/x")) == -1);
}

TEST_CASE("publishing rejects collisions with existing popular content") {
  auto cb = Codebook::derive(5, 4, 1, ns(), CodebookMode::Plain);
  Producer pr("Pr");
  pr.publish(cb.name_at(0, 0), kSecond); // the popular set already has it
  CHECK_THROWS_AS(cb.publish_all(pr, kSecond, 377), ConfigError);

  Producer clean("Pr");
  CHECK_NOTHROW(cb.publish_all(clean, kSecond, 377));
  CHECK(clean.catalog_size() == static_cast<std::size_t>(cb.rows() * cb.columns()));
}
