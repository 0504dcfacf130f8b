#include "physiograde/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "physiograde/error.hpp"
#include "physiograde/text.hpp"

namespace physio {

namespace {

std::string session_tag(const Session& session) {
    return session.student_id + "/" + exam_token(session.exam);
}

} // namespace

Session trim_to_common_window(const Session& session) {
    if (session.recordings.empty()) fail(Errc::EmptyInput, "session has no recordings");
    double window_start = -std::numeric_limits<double>::infinity();
    double window_end = std::numeric_limits<double>::infinity();
    for (const auto& [kind, rec] : session.recordings) {
        if (rec.samples.empty()) {
            fail(Errc::EmptyInput, session_tag(session) + ": empty " + signal_short_name(kind));
        }
        window_start = std::max(window_start, rec.start_epoch);
        window_end = std::min(window_end, rec.end_epoch());
    }
    if (window_start > window_end) {
        fail(Errc::NoCommonWindow,
             session_tag(session) + ": recordings share no common time interval");
    }

    Session trimmed = session;
    for (auto& [kind, rec] : trimmed.recordings) {
        std::size_t first = rec.samples.size();
        std::size_t last = 0;
        for (std::size_t i = 0; i < rec.samples.size(); ++i) {
            double t = rec.sample_time(i);
            if (t >= window_start && t <= window_end) {
                first = std::min(first, i);
                last = i;
            }
        }
        if (first >= rec.samples.size()) {
            fail(Errc::NoCommonWindow, session_tag(session) + ": " + signal_short_name(kind) +
                                           " has no samples inside the common window");
        }
        double new_start = rec.sample_time(first);
        rec.samples = std::vector<double>(rec.samples.begin() + long(first),
                                          rec.samples.begin() + long(last) + 1);
        rec.start_epoch = new_start;
    }
    return trimmed;
}

std::vector<double> moving_average(std::span<const double> samples, int window) {
    if (window < 1 || window % 2 == 0) {
        fail(Errc::InvalidWindow,
             "moving-average window must be odd and positive, got " + std::to_string(window));
    }
    if (samples.empty()) fail(Errc::EmptyInput, "moving_average on empty input");

    std::size_t n = samples.size();
    std::size_t half = std::size_t(window - 1) / 2;
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t lo = i >= half ? i - half : 0;
        std::size_t hi = std::min(i + half, n - 1);
        double sum = 0.0;
        for (std::size_t j = lo; j <= hi; ++j) sum += samples[j];
        out[i] = sum / double(hi - lo + 1);
    }
    return out;
}

ZNormParams compute_znorm_params(std::span<const double> reference) {
    if (reference.empty()) fail(Errc::EmptyInput, "z-normalization needs a non-empty reference");
    double sum = 0.0;
    for (double v : reference) sum += v;
    double mu = sum / double(reference.size());
    double sq = 0.0;
    for (double v : reference) sq += (v - mu) * (v - mu);
    return {mu, std::sqrt(sq / double(reference.size()))};
}

std::vector<double> apply_znorm(std::span<const double> samples, const ZNormParams& params) {
    if (params.sigma <= 0.0) {
        fail(Errc::DegenerateSignal,
             "zero standard deviation (constant signal) cannot be normalized");
    }
    std::vector<double> out(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        out[i] = (samples[i] - params.mu) / params.sigma;
    }
    return out;
}

std::vector<CleanSession> preprocess_all(std::span<const Session> sessions,
                                         const PreprocessConfig& config) {
    std::vector<const Session*> order;
    order.reserve(sessions.size());
    for (const Session& s : sessions) order.push_back(&s);
    std::sort(order.begin(), order.end(), [](const Session* a, const Session* b) {
        return std::tie(a->student_id, a->exam) < std::tie(b->student_id, b->exam);
    });

    struct Filtered {
        const Session* session;
        std::map<SignalKind, RawRecording> recordings; // trimmed + filtered
    };
    std::vector<Filtered> filtered;
    filtered.reserve(order.size());
    for (const Session* session : order) {
        Session trimmed = trim_to_common_window(*session);
        Filtered f{session, {}};
        for (auto& [kind, rec] : trimmed.recordings) {
            rec.samples = moving_average(rec.samples, config.ma_window);
            f.recordings[kind] = std::move(rec);
        }
        filtered.push_back(std::move(f));
    }

    // Normalization parameters per reference scope.
    std::map<std::pair<std::string, SignalKind>, ZNormParams> pooled;
    if (config.norm_scope == NormScope::PerStudentPooled) {
        std::map<std::pair<std::string, SignalKind>, std::vector<double>> pools;
        for (const Filtered& f : filtered) {
            for (const auto& [kind, rec] : f.recordings) {
                auto& pool = pools[{f.session->student_id, kind}];
                pool.insert(pool.end(), rec.samples.begin(), rec.samples.end());
            }
        }
        for (const auto& [key, pool] : pools) {
            ZNormParams params = compute_znorm_params(pool);
            if (params.sigma <= 0.0) {
                fail(Errc::DegenerateSignal, "student " + key.first + " signal " +
                                                 signal_short_name(key.second) +
                                                 ": pooled samples are constant");
            }
            pooled[key] = params;
        }
    }

    std::vector<CleanSession> result;
    result.reserve(filtered.size());
    for (const Filtered& f : filtered) {
        CleanSession clean;
        clean.student_id = f.session->student_id;
        clean.exam = f.session->exam;
        for (const auto& [kind, rec] : f.recordings) {
            ZNormParams params;
            if (config.norm_scope == NormScope::PerStudentPooled) {
                params = pooled.at({clean.student_id, kind});
            } else {
                params = compute_znorm_params(rec.samples);
                if (params.sigma <= 0.0) {
                    fail(Errc::DegenerateSignal, session_tag(*f.session) + " signal " +
                                                     signal_short_name(kind) +
                                                     ": constant after filtering");
                }
            }
            CleanRecording out;
            out.kind = kind;
            out.start_epoch = rec.start_epoch;
            out.sample_rate = rec.sample_rate;
            out.samples = apply_znorm(rec.samples, params);
            clean.recordings[kind] = std::move(out);
        }
        result.push_back(std::move(clean));
    }
    return result;
}

} // namespace physio
