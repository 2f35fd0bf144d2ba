// Structured reports and file formats. Reports are schema-versioned ordered
// JSON ("chatelet-report/1") with every numerical entry exact (rationals as
// "num/den" strings); parsing and re-emitting a report is byte-identical.

#ifndef CHATELET_REPORT_HPP
#define CHATELET_REPORT_HPP

#include <json.hpp>

#include "chatelet/construct.hpp"
#include "chatelet/surface.hpp"

namespace chatelet {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "chatelet-report/1";

ordered_json report_of_verdict(const ChateletSurface& V, const Verdict& verdict,
                               long elapsed_ms);
ordered_json report_of_extension(const ChateletSurface& V, const NumberFieldPtr& L,
                                 const ExtensionAnalysis& ext, long elapsed_ms);

ordered_json constraint_set_to_json(const ConstraintSet& cs);
ConstraintSet constraint_set_from_json(const ordered_json& j);

ordered_json trace_to_json(const ConstructionTrace& tr);

ordered_json surface_to_json(const ChateletSurface& V);

// Surface input file: {"field": [int coeffs] (optional, default Q),
// "a": rational or coordinate list, "P": list of 5 entries, optional
// "factorization": {"k": ..., "f1": [...], "f2": [...]}}. Rationals are
// written "p/q"; coordinates of field elements are lists of rationals.
ChateletSurface surface_from_json(const ordered_json& j);

NumberFieldPtr field_from_json(const ordered_json& j);

}  // namespace chatelet

#endif
