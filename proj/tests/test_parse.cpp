#include <doctest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include "crn/error.hpp"
#include "crn/parse.hpp"
#include "oracles.hpp"

using namespace crn;

namespace {

ParseError parse_error(std::string_view src) {
  try {
    parse_text(src);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error for: " << src);
  throw;
}

bool same_network(const Network& a, const Network& b) {
  if (a.species() != b.species() || a.num_reactions() != b.num_reactions()) return false;
  for (std::size_t i = 0; i < a.num_reactions(); ++i) {
    const auto &x = a.reaction(i), &y = b.reaction(i);
    if (!(x.reactant == y.reactant) || !(x.product == y.product) || x.rate != y.rate) return false;
  }
  return true;
}

std::vector<std::string> fixture_files() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(CRN_FIXTURE_DIR))
    if (e.path().extension() == ".crn") out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("two reaction source without a species line") {
  const auto doc = parse_text("2 S1 -> S1 + S2 : 1.0\nS1 + 2 S2 -> 3 S1 : 1.0");
  const auto& net = doc.network;
  CHECK(net.species() == std::vector<std::string>{"S1", "S2"});
  REQUIRE(net.num_reactions() == 2);
  CHECK(net.reaction(0).reactant == Complex(std::vector<int>{2, 0}));
  CHECK(net.reaction(0).product == Complex(std::vector<int>{1, 1}));
  CHECK(net.reaction(1).reactant == Complex(std::vector<int>{1, 2}));
  CHECK(net.reaction(1).product == Complex(std::vector<int>{3, 0}));
  CHECK(net.reaction(1).rate == 1.0);
}

TEST_CASE("reversible arrows expand to two reactions") {
  const auto net = parse_text("S1 <-> S2 : 1.0, 2.0").network;
  REQUIRE(net.num_reactions() == 2);
  CHECK(net.reaction(0).rate == 1.0);
  CHECK(net.reaction(1).rate == 2.0);
  CHECK(net.reaction(1).reactant == Complex(std::vector<int>{0, 1}));
}

TEST_CASE("empty complex, comments and metadata") {
  const auto doc = parse_text("# source and sink\n@origin: hand written\nspecies: S1\n0 -> S1 : 2.0  # inflow\nS1 -> 0 : 1\n");
  CHECK(doc.network.reaction(0).reactant.is_zero());
  CHECK(doc.metadata.at("origin") == "hand written");
  const auto back = parse_text(format_network(doc));
  CHECK(same_network(back.network, doc.network));
  CHECK(back.metadata == doc.metadata);
}

TEST_CASE("canonical text is a fixed point") {
  const std::string canon = "species: S1 S2\n2 S1 -> S1 + S2 : 1\nS1 + 2 S2 -> 3 S1 : 1\n";
  CHECK(format_network(parse_text(canon)) == canon);
  CHECK(format_network(parse_text("2S1->S1+S2:1.0\nS1+2S2->3S1:1.0")) == canon);
}

TEST_CASE("error kinds and locations") {
  auto e = parse_error("S1 -> S1 : 1.0");
  CHECK(e.kind() == ParseErrorKind::SelfLoop);
  CHECK(e.line() == 1);

  e = parse_error("species: A B\nA -> ! : 1\n");
  CHECK(e.kind() == ParseErrorKind::BadToken);
  CHECK(e.line() == 2);
  CHECK(e.column() == 6);

  CHECK(parse_error("A -> B").kind() == ParseErrorKind::MissingRate);
  CHECK(parse_error("-2 A -> B : 1").kind() == ParseErrorKind::NegativeCoefficient);
  CHECK(parse_error("species: A A\nA -> 0 : 1").kind() == ParseErrorKind::DuplicateSpeciesDecl);
  CHECK(parse_error("species: A\nA -> B : 1").kind() == ParseErrorKind::UndeclaredSpecies);
  CHECK(parse_error("species: A B C\nA -> B : 1").kind() == ParseErrorKind::OrphanSpecies);
  CHECK(parse_error("A -> B : 0").kind() == ParseErrorKind::NonPositiveRate);
  CHECK(parse_error("# nothing here\n").kind() == ParseErrorKind::EmptyNetwork);
  CHECK(parse_error("S1 <-> S2 : 1.0").kind() == ParseErrorKind::MissingRate);
}

TEST_CASE("every fixture round-trips through text and json") {
  const auto files = fixture_files();
  REQUIRE(files.size() >= 10);
  for (const auto& f : files) {
    CAPTURE(f);
    const auto doc = parse_file(f);
    const auto text = format_network(doc);
    const auto again = parse_text(text, doc.source_name);
    CHECK(same_network(again.network, doc.network));
    CHECK(again.metadata == doc.metadata);
    CHECK(format_network(again) == text);
    const auto j = to_json(doc);
    const auto from = document_from_json(nlohmann::json::parse(j.dump()));
    CHECK(same_network(from.network, doc.network));
    CHECK(from.source_name == doc.source_name);
  }
}

TEST_CASE("format_double reads back exactly") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-20, 20);
  for (int i = 0; i < 1000; ++i) {
    const double v = std::pow(10.0, u(rng));
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("random mutations of valid sources either parse or point inside the text") {
  std::mt19937_64 rng(99);
  const std::string alphabet = "S12 +->:<,.0#@e\n\t-x";
  std::vector<std::string> seeds;
  for (const auto& f : fixture_files()) seeds.push_back(format_network(parse_file(f)));
  for (int t = 0; t < 2000; ++t) {
    std::string s = seeds[rng() % seeds.size()];
    const int edits = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < edits; ++k) {
      const std::size_t pos = rng() % (s.size() + 1);
      switch (rng() % 3) {
        case 0: s.insert(s.begin() + static_cast<long>(pos), alphabet[rng() % alphabet.size()]); break;
        case 1: if (pos < s.size()) s.erase(pos, 1); break;
        default: if (pos < s.size()) s[pos] = alphabet[rng() % alphabet.size()];
      }
    }
    try {
      parse_text(s);
    } catch (const ParseError& e) {
      std::vector<std::string> lines;
      std::stringstream ss(s);
      for (std::string l; std::getline(ss, l);) lines.push_back(l);
      if (lines.empty() || s.back() == '\n') lines.push_back("");
      REQUIRE(e.line() >= 1);
      REQUIRE(e.line() <= lines.size());
      REQUIRE(e.column() >= 1);
      REQUIRE(e.column() <= lines[e.line() - 1].size() + 1);
    }
  }
}
