#include <cstdio>
#include <sstream>

#include "depsent/harness.hpp"

namespace depsent {

namespace {

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%6.2f%%", 100.0 * v);
  return buf;
}

std::string pad(std::string_view s, std::size_t width) {
  std::string out(s);
  if (out.size() < width) out.append(width - out.size(), ' ');
  return out;
}

}  // namespace

std::string report_tsv(const EvalReport& r, EvalMode mode, bool macro) {
  const auto& m = r.metrics;
  const auto& c = r.confusion;
  std::ostringstream out;
  out << "precision\trecall\tf_measure\taccuracy\ttp\tfp\tfn\ttn\tunclassified_rate";
  if (mode == EvalMode::Hybrid) out << "\tfallback_rate\tfallback_positive\tfallback_negative";
  if (macro) out << "\tmacro_precision\tmacro_recall\tmacro_f_measure";
  out << '\n';
  out << fixed(m.precision) << '\t' << fixed(m.recall) << '\t' << fixed(m.f_measure) << '\t' << fixed(m.accuracy)
      << '\t' << c.tp << '\t' << c.fp << '\t' << c.fn << '\t' << c.tn << '\t' << fixed(r.unclassified_rate);
  if (mode == EvalMode::Hybrid) {
    out << '\t' << fixed(r.fallback_rate) << '\t' << r.fallback_positive << '\t' << r.fallback_negative;
  }
  if (macro) out << '\t' << fixed(m.macro_precision) << '\t' << fixed(m.macro_recall) << '\t' << fixed(m.macro_f_measure);
  out << '\n';
  return out.str();
}

std::string report_table(const EvalReport& r, EvalMode mode, bool macro) {
  const auto& m = r.metrics;
  const auto& c = r.confusion;
  std::ostringstream out;
  out << (mode == EvalMode::Rules ? "Rules only" : "Hybrid") << " (" << c.total() << " sentences)\n";
  out << "  Precision  " << percent(m.precision) << (m.precision_undefined ? "  (no positive predictions)" : "")
      << '\n';
  out << "  Recall     " << percent(m.recall) << (m.recall_undefined ? "  (no positive gold items)" : "") << '\n';
  out << "  F-measure  " << percent(m.f_measure) << '\n';
  out << "  Accuracy   " << percent(m.accuracy) << '\n';
  if (macro) {
    out << "  Macro P    " << percent(m.macro_precision) << '\n';
    out << "  Macro R    " << percent(m.macro_recall) << '\n';
    out << "  Macro F    " << percent(m.macro_f_measure) << '\n';
  }
  out << "  Confusion  TP " << c.tp << "  FP " << c.fp << "  FN " << c.fn << "  TN " << c.tn << '\n';
  out << "  Unclassified by rules " << percent(r.unclassified_rate) << '\n';
  if (mode == EvalMode::Hybrid) {
    out << "  Routed to fallback    " << percent(r.fallback_rate) << " (" << r.fallback_positive << " positive, "
        << r.fallback_negative << " negative)\n";
  }
  return out.str();
}

std::string ablation_tsv(std::span<const AblationRow> rows) {
  std::ostringstream out;
  out << "Rule\tPrecision\tRecall\tF-measure\tAccuracy\n";
  for (const auto& row : rows) {
    const auto& m = row.report.metrics;
    out << rule_name(row.rule) << '\t' << fixed(m.precision) << '\t' << fixed(m.recall) << '\t' << fixed(m.f_measure)
        << '\t' << fixed(m.accuracy) << '\n';
  }
  return out.str();
}

std::string ablation_table(std::span<const AblationRow> rows) {
  std::ostringstream out;
  out << pad("Rule", 26) << "Precision  Recall     F-measure  Accuracy   Unclassified\n";
  for (const auto& row : rows) {
    const auto& r = row.report;
    out << pad(rule_name(row.rule), 26) << pad(percent(r.metrics.precision), 11) << pad(percent(r.metrics.recall), 11)
        << pad(percent(r.metrics.f_measure), 11) << pad(percent(r.metrics.accuracy), 11)
        << percent(r.unclassified_rate) << '\n';
  }
  return out.str();
}

}  // namespace depsent
