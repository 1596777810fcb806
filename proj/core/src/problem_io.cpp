#include "statelift/problem_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace statelift {

using nlohmann::json;

namespace {

json poly_to_json(const Polynomial& p, const VariableSpace& space) {
  json terms = json::array();
  for (auto& [mi, c] : p.terms()) {
    json exps = json::object();
    for (auto& [v, e] : mi.terms()) exps[space.var(v).name] = e;
    terms.push_back({{"coeff", c}, {"exponents", exps}});
  }
  return terms;
}

int parse_var(const std::string& name, const VariableSpace& space) {
  // "x[i][j]" or "s[i][l]"
  if (name.size() < 7 || (name[0] != 'x' && name[0] != 's'))
    throw std::runtime_error("bad variable name '" + name + "'");
  VarKind kind = name[0] == 'x' ? VarKind::Local : VarKind::State;
  int stage = 0, comp = 0;
  if (std::sscanf(name.c_str() + 1, "[%d][%d]", &stage, &comp) != 2)
    throw std::runtime_error("bad variable name '" + name + "'");
  return space.id_of(stage, kind, comp);
}

Polynomial poly_from_json(const json& terms, const VarSpacePtr& space) {
  Polynomial p(space);
  for (auto& t : terms) {
    std::vector<std::pair<int, int>> mi;
    for (auto& [name, e] : t.at("exponents").items())
      mi.emplace_back(parse_var(name, *space), e.get<int>());
    p = p + Polynomial::monomial(space, MultiIndex(std::move(mi)), t.at("coeff").get<double>());
  }
  return p;
}

}  // namespace

std::string write_problem(const CompositionChain& chain) {
  chain.validate();
  json doc;
  doc["n"] = chain.n;
  doc["ranks"] = chain.ranks;
  doc["local_widths"] = chain.local_widths;
  doc["box_radii"] = chain.box_radii;
  if (chain.state_radii) doc["state_radii"] = *chain.state_radii;
  doc["objective_sense"] = chain.sense == Sense::Minimize ? "minimize" : "maximize";
  json stages = json::array();
  for (int i = 1; i <= chain.n; ++i) {
    json st;
    json F = json::array();
    for (auto& f : chain.stages[i - 1].components) F.push_back(poly_to_json(f, *chain.space));
    st["F"] = F;
    json cons = json::array();
    for (auto& c : chain.constraints)
      if (c.stage == i)
        cons.push_back({{"poly", poly_to_json(c.poly, *chain.space)},
                        {"sense", c.sense == ConstraintSense::GeqZero ? ">=0" : "=0"}});
    st["constraints"] = cons;
    stages.push_back(st);
  }
  doc["stages"] = stages;
  return doc.dump(2);
}

CompositionChain read_problem(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("problem file: ") + e.what());
  }
  CompositionChain chain;
  try {
    chain.n = doc.at("n").get<int>();
    chain.ranks = doc.at("ranks").get<std::vector<int>>();
    chain.local_widths = doc.at("local_widths").get<std::vector<int>>();
    chain.box_radii = doc.at("box_radii").get<std::vector<double>>();
    if (doc.contains("state_radii"))
      chain.state_radii = doc.at("state_radii").get<std::vector<double>>();
    std::string sense = doc.value("objective_sense", "minimize");
    if (sense != "minimize" && sense != "maximize")
      throw std::runtime_error("objective_sense must be minimize or maximize");
    chain.sense = sense == "minimize" ? Sense::Minimize : Sense::Maximize;
    chain.space = make_chain_space(chain.ranks, chain.local_widths);
    const json& stages = doc.at("stages");
    if (static_cast<int>(stages.size()) != chain.n)
      throw std::runtime_error("stages array length does not match n");
    for (int i = 1; i <= chain.n; ++i) {
      const json& st = stages[i - 1];
      StageMap sm;
      sm.stage = i;
      for (auto& f : st.at("F")) sm.components.push_back(poly_from_json(f, chain.space));
      chain.stages.push_back(std::move(sm));
      for (auto& c : st.value("constraints", json::array())) {
        StageConstraint sc;
        sc.stage = i;
        sc.poly = poly_from_json(c.at("poly"), chain.space);
        std::string cs = c.at("sense").get<std::string>();
        if (cs == ">=0")
          sc.sense = ConstraintSense::GeqZero;
        else if (cs == "=0")
          sc.sense = ConstraintSense::EqZero;
        else
          throw std::runtime_error("constraint sense must be '>=0' or '=0'");
        chain.constraints.push_back(std::move(sc));
      }
    }
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("problem file: ") + e.what());
  }
  chain.validate();
  return chain;
}

CompositionChain read_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open problem file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return read_problem(ss.str());
}

void write_problem_file(const CompositionChain& chain, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write problem file '" + path + "'");
  out << write_problem(chain) << "\n";
}

}  // namespace statelift
