#pragma once

#include "causa/diagnostic.hpp"
#include "causa/engine.hpp"
#include "causa/model.hpp"

#include <json.hpp>

#include <ostream>
#include <vector>

namespace causa {

inline constexpr int kReportSchemaVersion = 1;

using ReportJson = nlohmann::ordered_json;

ReportJson to_json(const Trace& t);
ReportJson to_json(const Diagnostic& d);
ReportJson to_json(const ViolationReport& r);
ReportJson to_json(const Verdict& v);
ReportJson to_json(const ModelAssignment& a);
ReportJson to_json(const CauseReport& r);
ReportJson to_json(const EnumerationStats& s);

void print_diagnostics(std::ostream& os, const std::vector<Diagnostic>& diagnostics);
void print_violation_report(std::ostream& os, const ViolationReport& r);
void print_cause_report(std::ostream& os, const CauseReport& r);
void print_stats(std::ostream& os, Mode mode, const EnumerationStats& s);

} // namespace causa
