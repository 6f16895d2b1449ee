#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "baire/json_io.hpp"
#include "baire/random.hpp"
#include "baire/sampling.hpp"

using namespace baire;

namespace {

const std::filesystem::path kSamples = BAIRE_SAMPLES_DIR;

Json load(const std::string& name) {
  std::ifstream f(kSamples / name);
  REQUIRE(f);
  return Json::parse(f);
}

}  // namespace

TEST_CASE("label and ordinal JSON forms") {
  CHECK(Json(Label::in()) == Json::parse(R"({"q":"in"})"));
  CHECK(Json(Label::out()) == Json::parse(R"({"q":"out"})"));
  CHECK(Json(Label::ord(parse_ordinal("w^2+1"))) == Json::parse(R"({"ord":"w^2+1"})"));
  CHECK(Json::parse(R"({"ord":"w*3"})").get<Label>() == Label::ord(parse_ordinal("w*3")));
  CHECK_THROWS(Json::parse(R"({"q":"maybe"})").get<Label>());
  CHECK_THROWS(Json::parse(R"({"ord":"w+w"})").get<Label>());
  CHECK(Json(FinSeq{3, 1}) == Json::parse("[3,1]"));
  CHECK(Json(parse_ordinal("w^w")) == "w^w");
}

TEST_CASE("shipped tree round trips and is valid") {
  const Json j = load("tree12.json");
  const AlphaTree t = tree_from_json(j);
  CHECK(t.size() == 12);
  CHECK(validate_alpha_tree(t).ok());
  CHECK(tree_to_json(t) == j);
}

TEST_CASE("shipped universal snapshots round trip") {
  for (const char* name : {"universal_w2_500.json", "universal_w2_500_lprime.json", "embedding_tree12_target.json"}) {
    const Json j = load(name);
    const UniversalSnapshot s = j.get<UniversalSnapshot>();
    CHECK(Json(s) == j);
    const UniversalTree u(s);
    CHECK(Json(u.snapshot()) == j);
    CHECK(validate_alpha_tree(u).ok());
  }
  const UniversalSnapshot plain = load("universal_w2_500.json").get<UniversalSnapshot>();
  UniversalTree rebuilt(plain.alpha, plain.variant);
  for (std::uint64_t i = 0; i < plain.step; ++i) rebuilt.build_step();
  CHECK(rebuilt.snapshot() == plain);
}

TEST_CASE("shipped transcripts round trip and pass the audit") {
  for (const char* name : {"game_greedy_gamma5.json", "game_random_omega.json"}) {
    const Json j = load(name);
    const Transcript t = j.get<Transcript>();
    CHECK(Json(t) == j);
    CHECK(t.outcome == GameOutcome::kRefuted);
    CHECK_FALSE(audit_transcript(t));
  }
  CHECK(load("game_greedy_gamma5.json").get<Transcript>().rounds.size() == 5);
}

TEST_CASE("shipped trace replays") {
  const Json j = load("trace_w2_seed7.json");
  const DescentTrace t = j.at("trace").get<DescentTrace>();
  CHECK(Json(t) == j.at("trace"));
  const Ordinal alpha = j.at("alpha").get<Ordinal>();
  const GammaCodec codec(alpha);
  const DescentTrace again = r_alpha_decide(alpha, natural_point(parse_point_spec(j.at("x").get<std::string>())),
                                            GammaPoint::from_spec(parse_point_spec(j.at("y").get<std::string>()), codec));
  CHECK(again == t);
  // The CLI draws the random specs from the seed in this order.
  Rng rng(7);
  const PointSpec xs = random_natural_spec(rng);
  const PointSpec ys = random_gamma_spec(rng, codec);
  CHECK(format_point_spec(xs) == j.at("x").get<std::string>());
  CHECK(format_point_spec(ys) == j.at("y").get<std::string>());
}

TEST_CASE("shipped embedding record round trips and checks out") {
  const Json j = load("embedding_tree12.json");
  const EmbeddingRecord r = j.get<EmbeddingRecord>();
  Json back = r;
  for (const auto& key : {"pairs", "source", "target"}) CHECK(back.at(key) == j.at(key));
  const AlphaTree tree = tree_from_json(load(r.source));
  const UniversalTree target(load(r.target).get<UniversalSnapshot>());
  std::vector<std::pair<FinSeq, NodeId>> map;
  for (const auto& [s, t] : r.pairs) map.emplace_back(s, target.find(t).value());
  const EmbeddingCheck c = check_embedding(map, TreeSource(tree), target);
  CHECK(c.ok());
  CHECK(c.nodes == 12);
}

TEST_CASE("point specs") {
  const PointSpec s = parse_point_spec("0,(2|w+1),((0|out),4)*");
  CHECK(format_point_spec(s) == "0,(2|w+1),((0|out),4)*");
  CHECK(s.has_letters());
  CHECK(natural_point(parse_point_spec("0,1,(3)*")).prefix(5) == FinSeq{0, 1, 3, 3, 3});
  CHECK(natural_point(parse_point_spec("4,5")).prefix(4) == FinSeq{4, 5, 0, 0});
  CHECK_THROWS_AS(natural_point(parse_point_spec("(1|in)*")), std::invalid_argument);
  for (const char* bad : {"0,(1", "(1|maybe)*", "1,,2", "(1)*,2", "(|in)"}) CHECK_THROWS_AS(parse_point_spec(bad), ParseError);
}

TEST_CASE("property: random structures round trip") {
  Rng rng(81);
  for (int i = 0; i < 20; ++i) {
    const AlphaTree t = random_alpha_tree(rng, RandomTreeOptions{});
    CHECK(tree_from_json(Json::parse(tree_to_json(t).dump())) == t);
  }
  const GammaCodec codec(parse_ordinal("w^3+w"));
  for (int i = 0; i < 100; ++i) {
    const PointSpec ys = random_gamma_spec(rng, codec);
    CHECK(parse_point_spec(format_point_spec(ys)) == ys);
    const DescentTrace t = r_alpha_decide(codec.alpha(), natural_point(random_natural_spec(rng)),
                                          GammaPoint::from_spec(ys, codec));
    CHECK(Json::parse(Json(t).dump()).get<DescentTrace>() == t);
  }
}

TEST_CASE("dot export") {
  const AlphaTree t = tree_from_json(load("tree12.json"));
  const std::string dot = tree_to_dot(t);
  CHECK(dot.rfind("graph", 0) == 0);
  CHECK(dot.find("w+1") != std::string::npos);
  CHECK(dot.find("style=dashed") != std::string::npos);
}
