#include "ndp/app.hpp"

#include <cctype>

namespace ndp {

using namespace ndproof;

ProofDocument load_document(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i < text.size() && text[i] == '{') return document_from_json(parse_json(text));
  return parse_proof(text);
}

CheckOutcome run_check(const ProofDocument& doc, const CheckConfig& cfg, std::optional<int> max_domain) {
  CheckOutcome out;
  out.report = check_proof(doc, cfg);
  if (max_domain && out.report.accepted) {
    EntailOptions opts;
    opts.extra = doc.signature();
    out.soundness = entails(doc.premises(), *out.report.proved, *max_domain, opts);
  }
  return out;
}

Json outcome_to_json(const CheckOutcome& outcome) {
  Json j = report_to_json(outcome.report);
  if (outcome.soundness) j["soundness"] = verdict_to_json(*outcome.soundness);
  return j;
}

std::string outcome_json_text(const CheckOutcome& outcome) { return outcome_to_json(outcome).dump(2) + "\n"; }

Json error_json(std::string_view code, std::string_view message) {
  return Json{{"version", kSchemaVersion}, {"error", {{"code", code}, {"message", message}}}};
}

}  // namespace ndp
