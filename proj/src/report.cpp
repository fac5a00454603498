#include "hopfdde/report.hpp"

#include <sstream>

#include "hopfdde/errors.hpp"
#include "hopfdde/format.hpp"

namespace hopfdde {

using nlohmann::json;

AnalysisReport analyze(const ModelParams& p, bool with_normal_form) {
  AnalysisReport rep;
  rep.params = p;
  rep.equilibria = equilibria(p);
  rep.estar_stability = estar_stability(p);
  const Equilibrium& estar = rep.equilibria.back();
  if (!estar.exists) return rep;

  rep.coeffs = char_coeffs(p, estar);
  rep.h1 = h1_holds(*rep.coeffs);
  rep.g = g_cubic(*rep.coeffs);
  auto search = find_hopf_candidates(*rep.coeffs);
  rep.candidates = std::move(search.candidates);
  rep.rejected = std::move(search.rejected);
  for (const auto& cand : rep.candidates) {
    if (!rep.critical || cand.delays.front() < rep.critical->s0) {
      rep.critical = CriticalDelay{cand.delays.front(), cand};
    }
  }

  if (with_normal_form && rep.critical) {
    try {
      rep.normal_form = compute_normal_form(p, rep.critical->candidate.omega, rep.critical->s0);
    } catch (const Error& e) {
      rep.normal_form_error = e.what();
    }
  }
  return rep;
}

namespace {

json number_or_null(std::optional<double> x) { return x ? json(*x) : json(nullptr); }

json state_json(const State& x) { return json::array({x.u, x.v, x.w}); }

json complex_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json cvec_json(const CVec3& v) {
  json out = json::array();
  for (int i = 0; i < 3; ++i) out.push_back(complex_json(v(i)));
  return out;
}

}  // namespace

json to_json(const AnalysisReport& rep) {
  json doc;
  json params = json::object();
  for (auto name : ModelParams::field_names) params[std::string(name)] = rep.params.field(name);
  doc["params"] = params;

  json eqs = json::array();
  for (const auto& e : rep.equilibria) {
    const Stability st = e.label == EquilibriumLabel::EStar ? rep.estar_stability : e.stability;
    eqs.push_back({{"label", to_string(e.label)},
                   {"exists", e.exists},
                   {"point", e.exists ? state_json(e.point) : json(nullptr)},
                   {"stability", to_string(st)}});
  }
  doc["equilibria"] = eqs;

  doc["h1"] = rep.h1 ? json(*rep.h1) : json(nullptr);
  if (rep.coeffs) {
    const auto& c = *rep.coeffs;
    doc["char_coeffs"] = {{"p0", c.p0}, {"p1", c.p1}, {"p2", c.p2}, {"q0", c.q0}, {"q1", c.q1}, {"q2", c.q2}};
  } else {
    doc["char_coeffs"] = nullptr;
  }
  doc["g_cubic"] = rep.g ? json{{"m", rep.g->m}, {"n", rep.g->n}, {"h", rep.g->h}} : json(nullptr);

  json cands = json::array();
  for (const auto& c : rep.candidates) {
    cands.push_back({{"z", c.z},
                     {"omega", c.omega},
                     {"delays", c.delays},
                     {"transversality", to_string(c.transversality)}});
  }
  doc["hopf_candidates"] = cands;
  doc["rejected_roots"] = rep.rejected;
  doc["s0"] = rep.critical ? json(rep.critical->s0) : json(nullptr);

  if (rep.normal_form) {
    const auto& nf = *rep.normal_form;
    doc["normal_form"] = {{"omega_star", nf.omega_star}, {"s_star", nf.s_star},
                          {"gamma1", complex_json(nf.gamma1)}, {"gamma2", complex_json(nf.gamma2)},
                          {"chi1", nf.chi1}, {"chi2", nf.chi2}, {"direction", to_string(nf.direction)},
                          {"c_vec", cvec_json(nf.c_vec)}, {"d_vec", cvec_json(nf.d_vec)},
                          {"e_vec", cvec_json(nf.e_vec)}, {"f_vec", cvec_json(nf.f_vec)}};
  } else {
    doc["normal_form"] = nullptr;
  }
  doc["normal_form_error"] = rep.normal_form_error ? json(*rep.normal_form_error) : json(nullptr);

  if (rep.simulation) {
    const auto& sim = *rep.simulation;
    json s = {{"initial", state_json(sim.initial)},
              {"t_end", sim.t_end},
              {"step", sim.step},
              {"rows", sim.rows},
              {"blow_up_time", number_or_null(sim.blow_up_time)}};
    if (sim.metrics) {
      const auto& m = *sim.metrics;
      s["metrics"] = {{"classification", to_string(m.classification)},
                      {"amplitude", state_json(m.amplitude)},
                      {"period", m.period},
                      {"n_periods_measured", m.n_periods_measured},
                      {"max_deviation", m.max_deviation}};
    } else {
      s["metrics"] = nullptr;
    }
    doc["simulation"] = s;
  } else {
    doc["simulation"] = nullptr;
  }
  return doc;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

void flatten(const json& node, const std::string& prefix, std::ostringstream& out) {
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, out);
    return;
  }
  if (node.is_array()) {
    if (node.empty()) {
      out << csv_escape(prefix) << ",\n";
      return;
    }
    for (std::size_t i = 0; i < node.size(); ++i) flatten(node[i], prefix + "." + std::to_string(i), out);
    return;
  }
  out << csv_escape(prefix) << ',';
  if (node.is_null()) {
  } else if (node.is_boolean()) {
    out << (node.get<bool>() ? "true" : "false");
  } else if (node.is_number_integer()) {
    out << node.dump();
  } else if (node.is_number_float()) {
    out << format_g17(node.get<double>());
  } else if (node.is_string()) {
    out << csv_escape(node.get<std::string>());
  }
  out << '\n';
}

}  // namespace

std::string flatten_to_csv(const json& doc) {
  std::ostringstream out;
  out << "key,value\n";
  flatten(doc, "", out);
  return out.str();
}

SweepRow sweep_row(const ModelParams& p) {
  SweepRow row;
  if (!positive_equilibrium_exists(p)) return row;
  const auto crit = s0(p);
  if (!crit) return row;
  row.s0 = crit->s0;
  try {
    const NormalForm nf = compute_normal_form(p, crit->candidate.omega, crit->s0);
    row.chi1 = nf.chi1;
    row.chi2 = nf.chi2;
    row.direction = nf.direction;
  } catch (const Error&) {
    // left empty: resonance or degenerate normalization at this point
  }
  return row;
}

std::string sweep_csv(const std::string& param, const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "param,value,s0,chi1,chi2,direction\n";
  const auto cell = [](std::optional<double> x) { return x ? format_g17(*x) : std::string(); };
  for (const auto& row : rows) {
    out << param << ',' << format_g17(row.value) << ',' << cell(row.s0) << ',' << cell(row.chi1) << ','
        << cell(row.chi2) << ',' << (row.direction ? std::string(to_string(*row.direction)) : std::string()) << '\n';
  }
  return out.str();
}

}  // namespace hopfdde
