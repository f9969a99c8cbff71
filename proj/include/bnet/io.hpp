#pragma once

#include <iosfwd>
#include <string>

#include "bnet/dataset.hpp"
#include "bnet/decide.hpp"
#include "bnet/network.hpp"

namespace bnet {

// Network file: JSON {"variables":[{"name","states":[...]}],
// "cpts":[{"child","parents":[...],"rows":[[...]]}]}, row order following
// parent_config_index. parse(serialize(net)) is the identity on canonical
// files.
DiscreteBayesNet parse_network_json(const std::string& text);
DiscreteBayesNet parse_network_file(const std::string& path);
std::string serialize_network(const DiscreteBayesNet& net);
void write_network_file(const DiscreteBayesNet& net, const std::string& path);

// Case file: CSV, header = variable names, cells = state labels, a leading
// "!" marking the value as forced.
Dataset parse_case_csv(const std::string& text, const Domain& domain);
Dataset parse_case_csv(const std::string& text);  // domain from the cells
Dataset parse_case_file(const std::string& path);
std::string serialize_cases(const Dataset& data);
void write_case_file(const Dataset& data, const std::string& path);

// Counts file: '#' comment lines, then one "variable NAME STATE..." line
// per variable in order, a "counts" line, and whitespace-separated counts
// in parent_config_index order (last declared variable varying fastest).
CountsTable parse_counts_text(const std::string& text);
CountsTable parse_counts_file(const std::string& path);
std::string serialize_counts(const CountsTable& table);

// Influence-diagram file: JSON with "decisions", "uncertainties" (network
// syntax, parents may name decisions), "outcome" and "utilities".
InfluenceDiagram parse_influence_json(const std::string& text);
InfluenceDiagram parse_influence_file(const std::string& path);

// Fixed-precision number rendering used by all reports (6 decimals), so
// identical runs emit byte-identical text.
std::string format_fixed(double value, int decimals = 6);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace bnet
