// json_io.hpp -- JSON (de)serialization for presentations and results.
#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "infgraph/chrgrammar.hpp"
#include "infgraph/hrgrammar.hpp"
#include "infgraph/prefixrec.hpp"
#include "infgraph/rational.hpp"

namespace infgraph {

using json = nlohmann::json;

json automaton_to_json(const FiniteAutomaton& a);
FiniteAutomaton automaton_from_json(const json& j);

json transducer_to_json(const LabelledTransducer& t);
LabelledTransducer transducer_from_json(const json& j);

json graph_to_json(const Hypergraph& g);
Hypergraph graph_from_json(const json& j);

json rational_to_json(const RationalGraphPresentation& p);
RationalGraphPresentation rational_from_json(const json& j);

json prefrec_to_json(const PrefixRecPresentation& p);
PrefixRecPresentation prefrec_from_json(const json& j);

json hr_to_json(const HRGrammar& g);
HRGrammar hr_from_json(const json& j);

json chr_to_json(const CHRGrammar& g);
CHRGrammar chr_from_json(const json& j);

using Presentation =
    std::variant<RationalGraphPresentation, PrefixRecPresentation, HRGrammar, CHRGrammar>;

// Dispatches on the "type" tag {rational, prefrec, hr, chr}.
Presentation presentation_from_json(const json& j);
Presentation load_presentation(const std::string& path);
json presentation_to_json(const Presentation& p);

}  // namespace infgraph
