#include "physiograde/report.hpp"

#include <cmath>
#include <map>

#include "physiograde/text.hpp"

namespace physio {

namespace {

std::string display_name(const std::string& name) {
    static const std::map<std::string, std::string> names = {
        {"rf", "RF"}, {"sgd", "SGD"}, {"svm", "SVM"}, {"knn", "KNN"}};
    auto it = names.find(name);
    return it != names.end() ? it->second : name;
}

const char* curve_color(const std::string& name) {
    if (name == "rf") return "#d62728";
    if (name == "sgd") return "#ff7f0e";
    if (name == "svm") return "#2ca02c";
    if (name == "knn") return "#1f77b4";
    return "#7f7f7f";
}

} // namespace

std::string round2_away(double value) {
    double rounded = std::round(value * 100.0) / 100.0;
    return fmt_fixed(rounded, 2);
}

std::string render_results_md(const EvalSummary& summary) {
    std::string out;
    out += "# ROC-AUC by classifier\n\n";
    out += "Pooled leave-one-student-out ROC-AUC, mean (population std) over " +
           std::to_string(summary.repetitions) + " repetition" +
           (summary.repetitions == 1 ? "" : "s") + ", " + std::to_string(summary.n_examples) +
           " examples in " + std::to_string(summary.n_folds) + " folds.\n\n";
    out += "| |";
    for (const ClassifierSummary& cs : summary.classifiers) {
        out += " " + display_name(cs.name) + " |";
    }
    out += "\n|---|";
    for (std::size_t i = 0; i < summary.classifiers.size(); ++i) out += "---|";
    out += "\n| ROC-AUC |";
    for (const ClassifierSummary& cs : summary.classifiers) {
        out += " " + round2_away(cs.mean_auc) + " (" + round2_away(cs.std_auc) + ") |";
    }
    out += "\n";
    return out;
}

std::string render_results_csv(const EvalSummary& summary) {
    std::string out = "classifier,mean_auc,std_auc";
    for (int r = 1; r <= summary.repetitions; ++r) {
        out += ",auc_rep_" + std::to_string(r);
    }
    out += "\n";
    for (const ClassifierSummary& cs : summary.classifiers) {
        out += cs.name + "," + fmt_double(cs.mean_auc) + "," + fmt_double(cs.std_auc);
        for (double auc : cs.repetition_aucs) out += "," + fmt_double(auc);
        out += "\n";
    }
    return out;
}

std::string render_roc_csv(std::span<const RocPoint> curve) {
    std::string out = "threshold,fpr,tpr\n";
    for (const RocPoint& p : curve) {
        out += fmt_double(p.threshold) + "," + fmt_double(p.false_positive_rate) + "," +
               fmt_double(p.true_positive_rate) + "\n";
    }
    return out;
}

std::string render_features_csv(std::span<const LabeledExample> examples) {
    std::string out = "student_id,exam";
    for (const char* name : kFeatureNames) out += std::string(",") + name;
    out += ",percent,label\n";
    for (const LabeledExample& ex : examples) {
        out += ex.student_id;
        out += ",";
        out += exam_token(ex.exam);
        for (double v : ex.features.values) out += "," + fmt_double(v);
        out += "," + fmt_double(ex.percent) + "," + (ex.label ? std::string("1") : std::string("0"));
        out += "\n";
    }
    return out;
}

std::string render_roc_svg(const EvalSummary& summary) {
    // Fixed 800x600 canvas; plot area x in [70,620], y in [40,540].
    constexpr double x0 = 70, y0 = 40, side = 550;
    auto px = [&](double fpr) { return fmt_fixed(x0 + fpr * side, 2); };
    auto py = [&](double tpr) { return fmt_fixed(y0 + side - tpr * side, 2); };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
           "viewBox=\"0 0 800 600\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
    svg += "<rect x=\"" + px(0.0) + "\" y=\"" + py(1.0) + "\" width=\"" + fmt_fixed(side, 2) +
           "\" height=\"" + fmt_fixed(side, 2) + "\" fill=\"none\" stroke=\"black\"/>\n";

    // Axis ticks and labels every 0.2.
    for (int i = 0; i <= 5; ++i) {
        double v = i / 5.0;
        std::string label = fmt_fixed(v, 1);
        svg += "<line x1=\"" + px(v) + "\" y1=\"" + py(0.0) + "\" x2=\"" + px(v) + "\" y2=\"" +
               fmt_fixed(y0 + side + 6, 2) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + px(v) + "\" y=\"" + fmt_fixed(y0 + side + 22, 2) +
               "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">" + label +
               "</text>\n";
        svg += "<line x1=\"" + fmt_fixed(x0 - 6, 2) + "\" y1=\"" + py(v) + "\" x2=\"" + px(0.0) +
               "\" y2=\"" + py(v) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fmt_fixed(x0 - 10, 2) + "\" y=\"" + fmt_fixed(y0 + side - v * side + 4, 2) +
               "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"end\">" + label +
               "</text>\n";
    }
    svg += "<text x=\"" + fmt_fixed(x0 + side / 2, 2) + "\" y=\"" + fmt_fixed(y0 + side + 45, 2) +
           "\" font-family=\"sans-serif\" font-size=\"15\" text-anchor=\"middle\">False positive "
           "rate</text>\n";
    svg += "<text x=\"22\" y=\"" + fmt_fixed(y0 + side / 2, 2) +
           "\" font-family=\"sans-serif\" font-size=\"15\" text-anchor=\"middle\" "
           "transform=\"rotate(-90 22 " +
           fmt_fixed(y0 + side / 2, 2) + ")\">True positive rate</text>\n";

    // Chance-level diagonal.
    svg += "<line x1=\"" + px(0.0) + "\" y1=\"" + py(0.0) + "\" x2=\"" + px(1.0) + "\" y2=\"" +
           py(1.0) + "\" stroke=\"#999999\" stroke-dasharray=\"6,4\"/>\n";

    for (const ClassifierSummary& cs : summary.classifiers) {
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(curve_color(cs.name)) +
               "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < cs.pooled_roc.size(); ++i) {
            if (i > 0) svg += " ";
            svg += px(cs.pooled_roc[i].false_positive_rate) + "," +
                   py(cs.pooled_roc[i].true_positive_rate);
        }
        svg += "\"/>\n";
    }

    // Legend.
    double ly = y0 + 10;
    for (const ClassifierSummary& cs : summary.classifiers) {
        svg += "<line x1=\"650\" y1=\"" + fmt_fixed(ly, 2) + "\" x2=\"685\" y2=\"" +
               fmt_fixed(ly, 2) + "\" stroke=\"" + curve_color(cs.name) +
               "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"692\" y=\"" + fmt_fixed(ly + 4, 2) +
               "\" font-family=\"sans-serif\" font-size=\"14\">" + display_name(cs.name) +
               "</text>\n";
        ly += 22;
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace physio
