#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <ndproof/checker.hpp>
#include <ndproof/semantics.hpp>
#include <ndproof/serialize.hpp>

namespace ndp {

/// Reads either the `.ndp` text format or a v1 document JSON (detected by a
/// leading '{'). Throws ndproof::ParseError.
ndproof::ProofDocument load_document(std::string_view text);

/// A check report together with the optional bounded soundness run.
struct CheckOutcome {
  ndproof::CheckReport report;
  /// Present when a domain bound was requested and the proof was accepted.
  std::optional<ndproof::Verdict> soundness;

  bool ok() const { return report.accepted && (!soundness || soundness->valid()); }
};

/// Throws ndproof::ResourceError when the soundness search exceeds the cap.
CheckOutcome run_check(const ndproof::ProofDocument& doc, const ndproof::CheckConfig& cfg,
                       std::optional<int> max_domain);

/// Report JSON, with a "soundness" verdict appended when one was computed.
ndproof::Json outcome_to_json(const CheckOutcome& outcome);
/// Shared by `ndp check --json` and POST /v1/check.
std::string outcome_json_text(const CheckOutcome& outcome);

ndproof::Json error_json(std::string_view code, std::string_view message);

}  // namespace ndp
