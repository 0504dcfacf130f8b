#pragma once

#include <span>
#include <string>

#include "physiograde/evaluation.hpp"
#include "physiograde/features.hpp"

namespace physio {

/// Rounds half away from zero to two decimals, e.g. 0.125 -> "0.13".
std::string round2_away(double value);

/// Markdown table, one column per classifier, cells "mean (std)" at two
/// decimals.
std::string render_results_md(const EvalSummary& summary);

/// Full-precision CSV: classifier,mean_auc,std_auc,auc_rep_1..auc_rep_R.
std::string render_results_csv(const EvalSummary& summary);

/// threshold,fpr,tpr rows in curve order (descending threshold).
std::string render_roc_csv(std::span<const RocPoint> curve);

/// student_id,exam,<15 feature columns>,percent,label.
std::string render_features_csv(std::span<const LabeledExample> examples);

/// Deterministic 800x600 SVG overlaying every classifier's pooled ROC curve
/// of repetition 1, with axes, a diagonal reference line, and a legend.
std::string render_roc_svg(const EvalSummary& summary);

} // namespace physio
