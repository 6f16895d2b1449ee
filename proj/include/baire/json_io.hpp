#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "baire/alpha_tree.hpp"
#include "baire/clopen.hpp"
#include "baire/embed.hpp"
#include "baire/game.hpp"
#include "baire/hierarchy.hpp"
#include "baire/rank.hpp"
#include "baire/seqspace.hpp"
#include "baire/universal.hpp"

namespace baire {

using Json = nlohmann::json;

// Sequences are arrays of naturals and ordinals strings in the grammar of
// format_ordinal. Labels are {"q": "in"}, {"q": "out"} or {"ord": "w^2+1"}.
void to_json(Json& j, const FinSeq& s);
void from_json(const Json& j, FinSeq& s);
void to_json(Json& j, const Ordinal& o);
void from_json(const Json& j, Ordinal& o);
void to_json(Json& j, const Label& l);
void from_json(const Json& j, Label& l);
void to_json(Json& j, Verdict v);
void from_json(const Json& j, Verdict& v);

void to_json(Json& j, const PairDecision& d);
void from_json(const Json& j, PairDecision& d);
void to_json(Json& j, const Antichain& a);
void from_json(const Json& j, Antichain& a);
void to_json(Json& j, const DescentStep& s);
void from_json(const Json& j, DescentStep& s);
void to_json(Json& j, const DescentTrace& t);
void from_json(const Json& j, DescentTrace& t);
void to_json(Json& j, const RankBound& r);
void from_json(const Json& j, RankBound& r);

void to_json(Json& j, const ClopenPartition& p);
void from_json(const Json& j, ClopenPartition& p);
void to_json(Json& j, const GameState& s);
void from_json(const Json& j, GameState& s);
void to_json(Json& j, const Certificate& c);
void from_json(const Json& j, Certificate& c);
void to_json(Json& j, const Transcript& t);
void from_json(const Json& j, Transcript& t);

// {alpha, nodes: [[ints]], labels: [{s, t, label}]}, nodes in id order and
// labels sorted by (s, t).
Json tree_to_json(const LabeledTree& tree);
AlphaTree tree_from_json(const Json& j);

// The tree format with explicit labels only, plus {step, demand_steps,
// cursor: {block, grade}, block_starts, epochs, variant}.
void to_json(Json& j, const UniversalSnapshot& s);
void from_json(const Json& j, UniversalSnapshot& s);

struct EmbeddingRecord {
  std::vector<std::pair<FinSeq, FinSeq>> pairs;  // (source node, target node)
  std::string source;                             // reference to the source file
  std::string target;                             // reference to the target snapshot

  friend bool operator==(const EmbeddingRecord&, const EmbeddingRecord&) = default;
};
EmbeddingRecord record_of(const Embedding& e, std::string source_ref, std::string target_ref);
void to_json(Json& j, const EmbeddingRecord& e);
void from_json(const Json& j, EmbeddingRecord& e);

// Tree edges solid; labeled level pairs dashed, except out-labeled pairs
// which are the default and omitted. At most max_pairs pairs are drawn.
std::string tree_to_dot(const LabeledTree& tree, std::size_t max_pairs = 2000);

}  // namespace baire
