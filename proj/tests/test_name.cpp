#include "ndncec/errors.hpp"
#include "ndncec/name.hpp"
#include "ndncec/packet.hpp"
#include "ndncec/rng.hpp"

#include <doctest.h>

#include <string>
#include <vector>

using namespace ndncec;

namespace {

Name random_name(RngStream& rng, int max_comps = 5, int max_len = 6) {
  int n = 1 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(max_comps)));
  std::vector<std::string> comps;
  for (int i = 0; i < n; ++i) {
    int len = 1 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(max_len)));
    std::string c;
    for (int k = 0; k < len; ++k)
      c.push_back(static_cast<char>(rng.uniform_index(256)));
    comps.push_back(std::move(c));
  }
  return Name(std::move(comps));
}

} // namespace

TEST_CASE("parse_name splits on slashes") {
  Name n = Name::parse("/cnn/politics/frontpage");
  REQUIRE(n.size() == 3);
  CHECK(n.components()[0] == "cnn");
  CHECK(n.components()[1] == "politics");
  CHECK(n.components()[2] == "frontpage");

  CHECK(Name::parse("/a").components() == std::vector<std::string>{"a"});
}

TEST_CASE("parse_name rejects malformed text") {
  CHECK_THROWS_AS(Name::parse("/a//b"), ConfigError);
  CHECK_THROWS_AS(Name::parse("a/b"), ConfigError);
  CHECK_THROWS_AS(Name::parse(""), ConfigError);
  CHECK_THROWS_AS(Name::parse("/"), ConfigError);
  CHECK_THROWS_AS(Name::parse("/a/"), ConfigError);
  CHECK_THROWS_AS(Name::parse("/a/%zz"), ConfigError);
}

TEST_CASE("name caps are enforced and configurable") {
  std::vector<std::string> many(Name::max_components() + 1, "x");
  CHECK_THROWS_AS(Name(std::move(many)), ConfigError);
  std::string big(Name::max_component_bytes() + 1, 'x');
  CHECK_THROWS_AS(Name(std::vector<std::string>{big}), ConfigError);

  Name::set_limits(2, 4);
  CHECK_THROWS_AS(Name::parse("/a/b/c"), ConfigError);
  CHECK_THROWS_AS(Name::parse("/abcde"), ConfigError);
  CHECK_NOTHROW(Name::parse("/ab/cd"));
  Name::set_limits(32, 255);
  CHECK_NOTHROW(Name::parse("/a/b/c"));
}

TEST_CASE("render/parse round-trips arbitrary bytes") {
  RngStream rng(7);
  for (int i = 0; i < 500; ++i) {
    Name n = random_name(rng);
    CAPTURE(n.render());
    CHECK(Name::parse(n.render()) == n);
  }
  // Separator and escape characters inside components survive.
  Name tricky(std::vector<std::string>{"a/b", "c%d", std::string("\x00\xff", 2)});
  CHECK(Name::parse(tricky.render()) == tricky);
}

TEST_CASE("is_prefix_of is leading-component containment") {
  CHECK(Name::parse("/cnn/politics").is_prefix_of(Name::parse("/cnn/politics/frontpage")));
  CHECK(Name::parse("/a").is_prefix_of(Name::parse("/a")));
  CHECK_FALSE(Name::parse("/cnn/politics/frontpage")
                  .is_prefix_of(Name::parse("/cnn/politics")));
  CHECK_FALSE(Name::parse("/ab").is_prefix_of(Name::parse("/a/b")));
}

TEST_CASE("prefix relation is a partial order") {
  RngStream rng(11);
  std::vector<Name> names;
  for (int i = 0; i < 60; ++i)
    names.push_back(random_name(rng, 4, 3));
  for (const auto& a : names) {
    CHECK(a.is_prefix_of(a)); // reflexive
    for (const auto& b : names) {
      if (a.is_prefix_of(b) && b.is_prefix_of(a))
        CHECK(a == b); // antisymmetric
      for (const auto& c : names) {
        if (a.is_prefix_of(b) && b.is_prefix_of(c))
          CHECK(a.is_prefix_of(c)); // transitive
      }
    }
  }
}

TEST_CASE("matches is prefix matching over interest and data") {
  Interest i1(Name::parse("/common/prefix"), 1);
  DataPacket d1(Name::parse("/common/prefix/C0"), "x", kSecond);
  CHECK(matches(i1, d1));

  Interest i2(Name::parse("/x/y"), 2);
  DataPacket d2(Name::parse("/x/y"), "x", kSecond);
  CHECK(matches(i2, d2));

  Interest i3(Name::parse("/x/z"), 3);
  DataPacket d3(Name::parse("/x/y/w"), "x", kSecond);
  CHECK_FALSE(matches(i3, d3));
}

TEST_CASE("matches is monotone under trailing shortening of the interest") {
  RngStream rng(13);
  for (int iter = 0; iter < 300; ++iter) {
    Name data_name = random_name(rng, 5, 4);
    Name iname = random_name(rng, 5, 4);
    if (rng.bernoulli(0.5)) {
      // Bias toward real prefixes so the property is exercised.
      auto comps = data_name.components();
      comps.resize(1 + rng.uniform_index(comps.size()));
      iname = Name(comps);
    }
    DataPacket d(data_name, "x", kSecond);
    Interest full(iname, 1);
    if (!matches(full, d))
      continue;
    auto comps = iname.components();
    while (comps.size() > 1) {
      comps.pop_back();
      CHECK(matches(Interest(Name(comps), 1), d));
    }
  }
}

TEST_CASE("interest and data validate their fields") {
  CHECK_THROWS_AS(Interest(Name::parse("/a"), 1, 3), ConfigError);
  CHECK_THROWS_AS(Interest(Name::parse("/a"), 1, 0), ConfigError);
  CHECK_NOTHROW(Interest(Name::parse("/a"), 1, 2));
  CHECK_THROWS_AS(DataPacket(Name::parse("/a"), "x", 0), ConfigError);
  CHECK_THROWS_AS(DataPacket(Name::parse("/a"), "x", kSecond, 0), ConfigError);
}
