#include "bnet/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace bnet {

using json = nlohmann::ordered_json;

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

Domain parse_variables(const json& array) {
  Domain domain;
  for (const auto& v : array) {
    Variable var;
    var.name = v.at("name").get<std::string>();
    for (const auto& s : v.at("states")) var.states.push_back(s.get<std::string>());
    domain.push_back(std::move(var));
  }
  auto violations = validate_domain(domain);
  if (!violations.empty()) throw Error(violations.front());
  return domain;
}

void throw_if_invalid(const std::vector<std::string>& violations,
                      const std::string& what) {
  if (!violations.empty()) {
    std::string msg = what + ":";
    for (const auto& v : violations) msg += "\n  " + v;
    throw Error(msg);
  }
}

}  // namespace

DiscreteBayesNet parse_network_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("network file: invalid JSON: ") + e.what());
  }
  DiscreteBayesNet net;
  try {
    net.structure = DagStructure(parse_variables(doc.at("variables")));
    net.cpts.resize(net.size());
    std::vector<bool> seen(net.size(), false);
    for (const auto& c : doc.at("cpts")) {
      const std::string child_name = c.at("child").get<std::string>();
      const int child = domain_index(net.structure.variables, child_name);
      if (child < 0) throw Error("network file: unknown variable " + child_name);
      if (seen[child]) throw Error("network file: duplicate cpt for " + child_name);
      seen[child] = true;
      Cpt& cpt = net.cpts[child];
      cpt.child = child;
      for (const auto& p : c.at("parents")) {
        const int idx = domain_index(net.structure.variables, p.get<std::string>());
        if (idx < 0)
          throw Error("network file: unknown parent " + p.get<std::string>() +
                      " of " + child_name);
        cpt.parent_order.push_back(idx);
      }
      net.structure.parents[child] = cpt.parent_order;
      std::sort(net.structure.parents[child].begin(),
                net.structure.parents[child].end());
      for (const auto& row : c.at("rows"))
        cpt.rows.push_back(row.get<std::vector<double>>());
    }
    for (int i = 0; i < net.size(); ++i)
      if (!seen[i])
        throw Error("network file: missing cpt for " +
                    net.structure.variables[i].name);
  } catch (const json::exception& e) {
    throw Error(std::string("network file: ") + e.what());
  }
  throw_if_invalid(validate_network(net), "network file");
  return net;
}

std::string serialize_network(const DiscreteBayesNet& net) {
  json doc;
  doc["variables"] = json::array();
  for (const auto& v : net.structure.variables)
    doc["variables"].push_back({{"name", v.name}, {"states", v.states}});
  doc["cpts"] = json::array();
  for (const auto& cpt : net.cpts) {
    json c;
    c["child"] = net.structure.variables[cpt.child].name;
    c["parents"] = json::array();
    for (int p : cpt.parent_order)
      c["parents"].push_back(net.structure.variables[p].name);
    c["rows"] = cpt.rows;
    doc["cpts"].push_back(std::move(c));
  }
  return doc.dump(2) + "\n";
}

Dataset parse_case_csv(const std::string& text, const Domain& domain) {
  std::stringstream ss(text);
  std::string line;
  if (!std::getline(ss, line)) throw Error("case file: empty");
  const auto header = split_csv_line(line);
  std::vector<int> var_of_column;
  for (const auto& name : header) {
    const int idx = domain_index(domain, name);
    if (idx < 0) throw Error("case file: unknown variable " + name + " in header");
    var_of_column.push_back(idx);
  }
  if (header.size() != domain.size())
    throw Error("case file: header does not cover the domain");

  Dataset data;
  data.variables = domain;
  std::size_t row_no = 1;
  while (std::getline(ss, line)) {
    ++row_no;
    if (trim(line).empty()) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw Error("case file: row " + std::to_string(row_no) + " has " +
                  std::to_string(cells.size()) + " cells, expected " +
                  std::to_string(header.size()));
    std::vector<int> states(domain.size());
    std::vector<std::uint8_t> forced(domain.size(), 0);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      std::string label = cells[c];
      bool is_forced = false;
      if (!label.empty() && label[0] == '!') {
        is_forced = true;
        label = label.substr(1);
      }
      if (label.empty())
        throw Error("case file: row " + std::to_string(row_no) + ", column " +
                    header[c] + ": empty or malformed cell");
      const int v = var_of_column[c];
      const int s = domain[v].state_index(label);
      if (s < 0)
        throw Error("case file: row " + std::to_string(row_no) + ", column " +
                    header[c] + ": unknown state label '" + label + "'");
      states[v] = s;
      forced[v] = is_forced ? 1 : 0;
    }
    data.add_case(std::move(states), std::move(forced));
  }
  return data;
}

Dataset parse_case_csv(const std::string& text) {
  // Infer the domain: states are the distinct labels per column, sorted.
  std::stringstream ss(text);
  std::string line;
  if (!std::getline(ss, line)) throw Error("case file: empty");
  const auto header = split_csv_line(line);
  std::vector<std::vector<std::string>> labels(header.size());
  while (std::getline(ss, line)) {
    if (trim(line).empty()) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw Error("case file: ragged row while inferring domain");
    for (std::size_t c = 0; c < cells.size(); ++c) {
      std::string label = cells[c];
      if (!label.empty() && label[0] == '!') label = label.substr(1);
      if (std::find(labels[c].begin(), labels[c].end(), label) == labels[c].end())
        labels[c].push_back(label);
    }
  }
  Domain domain;
  for (std::size_t c = 0; c < header.size(); ++c) {
    std::sort(labels[c].begin(), labels[c].end());
    domain.push_back(Variable{header[c], labels[c]});
  }
  throw_if_invalid(validate_domain(domain), "case file (inferred domain)");
  return parse_case_csv(text, domain);
}

std::string serialize_cases(const Dataset& data) {
  std::string out;
  for (std::size_t i = 0; i < data.variables.size(); ++i) {
    if (i) out += ",";
    out += data.variables[i].name;
  }
  out += "\n";
  for (std::size_t r = 0; r < data.cases.size(); ++r) {
    for (std::size_t i = 0; i < data.variables.size(); ++i) {
      if (i) out += ",";
      if (data.forced[r][i]) out += "!";
      out += data.variables[i].states[data.cases[r][i]];
    }
    out += "\n";
  }
  return out;
}

CountsTable parse_counts_text(const std::string& text) {
  CountsTable table;
  std::stringstream ss(text);
  std::string line;
  bool in_counts = false;
  while (std::getline(ss, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (!in_counts) {
      std::stringstream ls(line);
      std::string tok;
      ls >> tok;
      if (tok == "variable") {
        Variable var;
        ls >> var.name;
        std::string state;
        while (ls >> state) var.states.push_back(state);
        if (var.name.empty() || var.states.size() < 2)
          throw Error("counts file: malformed variable line: " + line);
        table.variables.push_back(std::move(var));
      } else if (tok == "counts") {
        in_counts = true;
      } else {
        throw Error("counts file: unexpected line before counts: " + line);
      }
    } else {
      std::stringstream ls(line);
      long long value;
      while (ls >> value) {
        if (value < 0) throw Error("counts file: negative count " +
                                   std::to_string(value));
        table.counts.push_back(value);
      }
      if (!ls.eof()) throw Error("counts file: non-numeric token in counts: " + line);
    }
  }
  if (!in_counts) throw Error("counts file: missing 'counts' section");
  throw_if_invalid(validate_counts(table), "counts file");
  return table;
}

std::string serialize_counts(const CountsTable& table) {
  std::string out;
  for (const auto& v : table.variables) {
    out += "variable " + v.name;
    for (const auto& s : v.states) out += " " + s;
    out += "\n";
  }
  out += "counts\n";
  for (std::size_t i = 0; i < table.counts.size(); ++i) {
    out += std::to_string(table.counts[i]);
    out += ((i + 1) % 16 == 0 || i + 1 == table.counts.size()) ? "\n" : " ";
  }
  return out;
}

InfluenceDiagram parse_influence_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("influence file: invalid JSON: ") + e.what());
  }
  InfluenceDiagram id;
  try {
    for (const auto& d : doc.at("decisions")) {
      DecisionVar dec;
      dec.name = d.at("name").get<std::string>();
      for (const auto& a : d.at("alternatives"))
        dec.alternatives.push_back(a.get<std::string>());
      id.decisions.push_back(std::move(dec));
    }
    id.uncertainties = parse_variables(doc.at("uncertainties").at("variables"));

    auto node_id = [&](const std::string& name) {
      for (std::size_t i = 0; i < id.decisions.size(); ++i)
        if (id.decisions[i].name == name) return static_cast<int>(i);
      const int u = domain_index(id.uncertainties, name);
      if (u < 0) throw Error("influence file: unknown node " + name);
      return id.num_decisions() + u;
    };

    id.cpts.resize(id.uncertainties.size());
    std::vector<bool> seen(id.uncertainties.size(), false);
    for (const auto& c : doc.at("uncertainties").at("cpts")) {
      const std::string child_name = c.at("child").get<std::string>();
      const int u = domain_index(id.uncertainties, child_name);
      if (u < 0) throw Error("influence file: unknown uncertainty " + child_name);
      if (seen[u]) throw Error("influence file: duplicate cpt for " + child_name);
      seen[u] = true;
      Cpt& cpt = id.cpts[u];
      cpt.child = id.num_decisions() + u;
      for (const auto& p : c.at("parents"))
        cpt.parent_order.push_back(node_id(p.get<std::string>()));
      for (const auto& row : c.at("rows"))
        cpt.rows.push_back(row.get<std::vector<double>>());
    }
    for (std::size_t u = 0; u < id.uncertainties.size(); ++u)
      if (!seen[u])
        throw Error("influence file: missing cpt for " + id.uncertainties[u].name);

    for (const auto& p : doc.at("outcome").at("uncertainty_parents"))
      id.outcome_parents.push_back(node_id(p.get<std::string>()));
    for (const auto& label : doc.at("outcome").at("labels"))
      id.outcome_map.push_back(label.get<std::string>());
    for (const auto& [label, value] : doc.at("utilities").items())
      id.utilities[label] = value.get<double>();
  } catch (const json::exception& e) {
    throw Error(std::string("influence file: ") + e.what());
  }
  throw_if_invalid(validate_diagram(id), "influence file");
  return id;
}

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path);
  out << text;
}

DiscreteBayesNet parse_network_file(const std::string& path) {
  return parse_network_json(read_text_file(path));
}

void write_network_file(const DiscreteBayesNet& net, const std::string& path) {
  write_text_file(path, serialize_network(net));
}

Dataset parse_case_file(const std::string& path) {
  return parse_case_csv(read_text_file(path));
}

void write_case_file(const Dataset& data, const std::string& path) {
  write_text_file(path, serialize_cases(data));
}

CountsTable parse_counts_file(const std::string& path) {
  return parse_counts_text(read_text_file(path));
}

InfluenceDiagram parse_influence_file(const std::string& path) {
  return parse_influence_json(read_text_file(path));
}

}  // namespace bnet
