#include "dcec/guard/report.hpp"

#include <sstream>

namespace dcec {

Report trace_report(const Trace& trace) {
  Report out = Report::array();
  for (std::int64_t m = 0; m <= trace.horizon; ++m) {
    const auto i = static_cast<std::size_t>(m);
    Report row;
    row["moment"] = m;
    row["fluents"] = Report::array();
    for (const Term& f : trace.fluents[i]) row["fluents"].push_back(print_term(f));
    row["events"] = Report::array();
    for (const Term& e : trace.events[i]) row["events"].push_back(print_term(e));
    out.push_back(std::move(row));
  }
  return out;
}

Report proof_report(const Proof& p) {
  Report out = Report::array();
  std::istringstream in(serialize(p));
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

Report dde_report(const DDEVerdict& v, std::int64_t gamma) {
  Report r;
  r["status"] = "evaluated";
  r["compliant"] = v.compliant();
  r["net_utility"] = v.net;
  r["gamma"] = gamma;
  r["effects"] = Report::array();
  for (const Effect& e : v.effects) r["effects"].push_back(print_effect(e) + " (" + std::string(to_string(e.valence)) + ")");
  Report clauses;
  for (const ClauseVerdict* c : v.clauses()) {
    Report x;
    x["result"] = std::string(to_string(c->result));
    x["justification"] = c->justification;
    if (!c->proofs.empty()) {
      x["proofs"] = Report::array();
      for (const Proof& p : c->proofs) x["proofs"].push_back(proof_report(p));
    }
    clauses[c->name] = std::move(x);
  }
  r["clauses"] = std::move(clauses);
  return r;
}

Report verdict_report(const Scenario& s, const Verdict& v) {
  Report r;
  r["scenario"] = s.name;
  r["request"] = print_term(s.request_occurrence().event) + " at " + std::to_string(s.request.moment);
  r["guardian"] = print_term(s.guardian);
  r["decision"] = std::string(to_string(v.decision));
  r["obligation"] = print_formula(v.obligation);
  r["obligation_status"] = std::string(to_string(v.obligation_status));
  r["obligation_proof"] = v.obligation_proof ? proof_report(*v.obligation_proof) : Report(nullptr);
  r["proof_verified"] = v.proof_verified;
  if (v.dde)
    r["dde"] = dde_report(*v.dde, s.utilities.gamma);
  else if (v.dde_unknown)
    r["dde"] = Report{{"status", "unknown"}};
  else
    r["dde"] = nullptr;
  r["trace"] = trace_report(project(s.hypothetical_theory()));
  r["elapsed_ms"] = v.elapsed.count();
  return r;
}

std::string render_json(const Report& r) { return r.dump(2) + "\n"; }

namespace {

std::string scalar(const Report& r) {
  if (r.is_string()) return r.get<std::string>();
  if (r.is_null()) return "none";
  return r.dump();
}

bool is_flat(const Report& r) { return !r.is_object() && !r.is_array(); }

void render(const Report& r, int indent, std::ostream& out) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (r.is_object()) {
    for (const auto& [key, value] : r.items()) {
      if (is_flat(value)) {
        out << pad << key << ": " << scalar(value) << "\n";
      } else if (value.empty()) {
        out << pad << key << ": " << (value.is_array() ? "[]" : "{}") << "\n";
      } else {
        out << pad << key << ":\n";
        render(value, indent + 2, out);
      }
    }
    return;
  }
  for (const Report& item : r) {
    if (is_flat(item)) {
      out << pad << "- " << scalar(item) << "\n";
    } else {
      out << pad << "-\n";
      render(item, indent + 2, out);
    }
  }
}

}  // namespace

std::string render_text(const Report& r) {
  std::ostringstream out;
  render(r, 0, out);
  return out.str();
}

}  // namespace dcec
