// Structured reports. The text form is rendered from the same JSON document,
// so both carry the same fields.

#ifndef DCEC_GUARD_REPORT_HPP
#define DCEC_GUARD_REPORT_HPP

#include <string>

#include <json.hpp>

#include "dcec/guard/guard.hpp"

namespace dcec {

using Report = nlohmann::ordered_json;

Report trace_report(const Trace& trace);
Report dde_report(const DDEVerdict& v, std::int64_t gamma);
Report proof_report(const Proof& p);
Report verdict_report(const Scenario& s, const Verdict& v);

std::string render_json(const Report& r);
std::string render_text(const Report& r);

}  // namespace dcec

#endif  // DCEC_GUARD_REPORT_HPP
