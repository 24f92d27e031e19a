#include "qfid/report.hpp"

namespace qfid::report {

Json field_json(const FieldPtr& field) {
  if (!field) return nullptr;
  Json j;
  j["minpoly"] = field->minpoly().to_string("t");
  j["lo"] = to_string(field->lo());
  j["hi"] = to_string(field->hi());
  return j;
}

Json model_json(const std::string& path, const Engine& e) {
  const QmcModel& m = e.model();
  Json j;
  j["path"] = path;
  j["hash"] = e.hash();
  j["dimension"] = m.d;
  j["states"] = m.states;
  j["field"] = field_json(m.field);
  return j;
}

Json solver_json(const SolverConfig& cfg) {
  Json j;
  j["command"] = cfg.command;
  j["timeout_seconds"] = cfg.timeout_seconds;
  return j;
}

Json verdict_json(const Verdict& v) {
  Json j;
  j["truth"] = to_string(v.truth);
  j["solver_seconds"] = v.solver_seconds;
  Json qs = Json::array();
  for (const auto& q : v.queries) {
    Json jq;
    jq["quantifier"] = q.quantifier == Quantifier::Exists ? "exists" : "forall";
    jq["relation"] = to_string(q.rel);
    jq["answer"] = to_string(q.answer);
    jq["timed_out"] = q.timed_out;
    jq["seconds"] = q.seconds;
    if (!q.error.empty()) jq["error"] = q.error;
    qs.push_back(jq);
  }
  j["queries"] = qs;
  if (v.witness) {
    Json w = Json::array();
    for (const auto& a : *v.witness) w.push_back(Json::array({a.real(), a.imag()}));
    j["witness"] = w;
  }
  if (v.witness_value) j["witness_value"] = *v.witness_value;
  if (v.numeric_upper) j["numeric_upper"] = *v.numeric_upper;
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

Json record_json(const QmcModel& m, const FidelityRecord& r) {
  Json j;
  j["state"] = m.states.at(r.state);
  j["formula"] = r.formula;
  j["verdict"] = verdict_json(r.verdict);
  return j;
}

Json bracket_json(const FidelityBracket& b) {
  Json j;
  j["lo"] = to_string(b.lo);
  j["hi"] = to_string(b.hi);
  j["lo_decimal"] = b.lo.get_d();
  j["hi_decimal"] = b.hi.get_d();
  j["complete"] = b.complete;
  j["solver_seconds"] = b.solver_seconds;
  Json steps = Json::array();
  for (const auto& s : b.trace) steps.push_back({{"tau", to_string(s.tau)}, {"truth", to_string(s.truth)}});
  j["steps"] = steps;
  if (!b.note.empty()) j["note"] = b.note;
  return j;
}

Json matrix_json(const Mat& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json entries = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string());
    entries.push_back(row);
  }
  j["entries"] = entries;
  return j;
}

Json header(const std::string& command, const std::string& model_path, const Engine& e) {
  Json j;
  j["tool"] = "qfid";
  j["report_version"] = kReportVersion;
  j["command"] = command;
  j["model"] = model_json(model_path, e);
  j["solver"] = solver_json(e.options().fidelity.solver);
  return j;
}

}  // namespace qfid::report
