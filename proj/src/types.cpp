#include "physiograde/types.hpp"

#include "physiograde/error.hpp"
#include "physiograde/text.hpp"

namespace physio {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::ParseError: return "ParseError";
        case Errc::InvalidRate: return "InvalidRate";
        case Errc::EmptyRecording: return "EmptyRecording";
        case Errc::InvalidGrade: return "InvalidGrade";
        case Errc::DuplicateRecord: return "DuplicateRecord";
        case Errc::IncompleteSession: return "IncompleteSession";
        case Errc::MissingGrade: return "MissingGrade";
        case Errc::NoCommonWindow: return "NoCommonWindow";
        case Errc::InvalidWindow: return "InvalidWindow";
        case Errc::EmptyInput: return "EmptyInput";
        case Errc::InvalidSample: return "InvalidSample";
        case Errc::DegenerateSignal: return "DegenerateSignal";
        case Errc::SingleClassTrainingSet: return "SingleClassTrainingSet";
        case Errc::InvalidK: return "InvalidK";
        case Errc::InsufficientStudents: return "InsufficientStudents";
        case Errc::UndefinedAuc: return "UndefinedAuc";
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::IoError: return "IoError";
        case Errc::ConfigError: return "ConfigError";
    }
    return "Error";
}

const char* signal_short_name(SignalKind kind) {
    switch (kind) {
        case SignalKind::SkinTemperature: return "temp";
        case SignalKind::HeartRate: return "hr";
        case SignalKind::ElectrodermalActivity: return "eda";
    }
    return "?";
}

const char* signal_file_name(SignalKind kind) {
    switch (kind) {
        case SignalKind::SkinTemperature: return "TEMP.csv";
        case SignalKind::HeartRate: return "HR.csv";
        case SignalKind::ElectrodermalActivity: return "EDA.csv";
    }
    return "?";
}

const char* exam_token(ExamKind exam) {
    switch (exam) {
        case ExamKind::Midterm1: return "midterm1";
        case ExamKind::Midterm2: return "midterm2";
        case ExamKind::Final: return "final";
    }
    return "?";
}

const char* exam_dir_name(ExamKind exam) {
    switch (exam) {
        case ExamKind::Midterm1: return "Midterm1";
        case ExamKind::Midterm2: return "Midterm2";
        case ExamKind::Final: return "Final";
    }
    return "?";
}

std::optional<ExamKind> exam_from_token(std::string_view token) {
    for (ExamKind exam : kExamOrder) {
        if (iequals(token, exam_token(exam))) return exam;
    }
    return std::nullopt;
}

} // namespace physio
