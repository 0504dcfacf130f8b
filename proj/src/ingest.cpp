#include "physiograde/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "physiograde/error.hpp"
#include "physiograde/text.hpp"

namespace physio {

namespace {

double parse_numeric_line(std::string_view line, std::size_t line_no) {
    auto value = parse_double(line);
    if (!value || !std::isfinite(*value)) {
        fail(Errc::ParseError,
             "line " + std::to_string(line_no) + ": expected a number, got \"" +
                 std::string(trim(line)) + "\"");
    }
    return *value;
}

} // namespace

RawRecording parse_sensor_csv(std::string_view text, SignalKind kind) {
    std::vector<std::string_view> lines = split_lines(text);
    while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
    if (lines.size() < 3) {
        fail(Errc::EmptyRecording,
             "need a start epoch, a sample rate, and at least one sample (got " +
                 std::to_string(lines.size()) + " lines)");
    }

    RawRecording rec;
    rec.kind = kind;
    rec.start_epoch = parse_numeric_line(lines[0], 1);
    rec.sample_rate = parse_numeric_line(lines[1], 2);
    if (rec.sample_rate <= 0.0) {
        fail(Errc::InvalidRate, "sample rate must be > 0, got " + fmt_double(rec.sample_rate));
    }
    rec.samples.reserve(lines.size() - 2);
    for (std::size_t i = 2; i < lines.size(); ++i) {
        rec.samples.push_back(parse_numeric_line(lines[i], i + 1));
    }
    return rec;
}

std::string render_sensor_csv(const RawRecording& recording) {
    std::string out;
    out.reserve(recording.samples.size() * 8 + 32);
    out += fmt_double(recording.start_epoch);
    out += '\n';
    out += fmt_double(recording.sample_rate);
    out += '\n';
    for (double sample : recording.samples) {
        out += fmt_double(sample);
        out += '\n';
    }
    return out;
}

std::vector<GradeRecord> parse_grade_roster(std::string_view text) {
    std::vector<std::string_view> lines = split_lines(text);
    while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
    if (lines.empty()) fail(Errc::ParseError, "roster is empty");

    static constexpr const char* kHeader[4] = {"student_id", "exam", "raw_score", "max_score"};
    std::vector<std::string_view> header = split(lines[0], ',');
    if (header.size() != 4 || !iequals(trim(header[0]), kHeader[0]) ||
        !iequals(trim(header[1]), kHeader[1]) || !iequals(trim(header[2]), kHeader[2]) ||
        !iequals(trim(header[3]), kHeader[3])) {
        fail(Errc::ParseError,
             "roster header must be \"student_id,exam,raw_score,max_score\", got \"" +
                 std::string(lines[0]) + "\"");
    }

    std::vector<GradeRecord> records;
    std::set<std::pair<std::string, ExamKind>> seen;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::size_t line_no = i + 1;
        std::vector<std::string_view> cols = split(lines[i], ',');
        if (cols.size() != 4) {
            fail(Errc::ParseError,
                 "line " + std::to_string(line_no) + ": expected 4 columns, got " +
                     std::to_string(cols.size()));
        }
        GradeRecord rec;
        rec.student_id = std::string(trim(cols[0]));
        if (rec.student_id.empty()) {
            fail(Errc::ParseError, "line " + std::to_string(line_no) + ": empty student_id");
        }
        auto exam = exam_from_token(trim(cols[1]));
        if (!exam) {
            fail(Errc::ParseError, "line " + std::to_string(line_no) + ": unknown exam token \"" +
                                       std::string(trim(cols[1])) + "\"");
        }
        rec.exam = *exam;
        auto raw = parse_double(cols[2]);
        auto max = parse_double(cols[3]);
        if (!raw || !max) {
            fail(Errc::ParseError, "line " + std::to_string(line_no) + ": non-numeric score");
        }
        rec.raw_score = *raw;
        rec.max_score = *max;
        if (rec.max_score <= 0.0 || rec.raw_score < 0.0 || rec.raw_score > rec.max_score) {
            fail(Errc::InvalidGrade,
                 "line " + std::to_string(line_no) + ": score " + fmt_double(rec.raw_score) +
                     "/" + fmt_double(rec.max_score) + " out of range for " + rec.student_id);
        }
        if (!seen.insert({rec.student_id, rec.exam}).second) {
            fail(Errc::DuplicateRecord, "line " + std::to_string(line_no) + ": duplicate (" +
                                            rec.student_id + ", " + exam_token(rec.exam) + ")");
        }
        records.push_back(std::move(rec));
    }
    return records;
}

std::string render_grade_roster(std::span<const GradeRecord> records) {
    std::string out = "student_id,exam,raw_score,max_score\n";
    for (const GradeRecord& rec : records) {
        out += rec.student_id;
        out += ',';
        out += exam_token(rec.exam);
        out += ',';
        out += fmt_double(rec.raw_score);
        out += ',';
        out += fmt_double(rec.max_score);
        out += '\n';
    }
    return out;
}

DatasetManifest discover_manifest(const std::filesystem::path& root,
                                  std::vector<std::string> exclusions) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(root)) {
        fail(Errc::IoError, "dataset root is not a directory: " + root.string());
    }
    DatasetManifest manifest;
    manifest.root = root;
    manifest.exclusions = std::move(exclusions);

    std::vector<std::string> students;
    for (const auto& entry : fs::directory_iterator(root)) {
        if (entry.is_directory()) students.push_back(entry.path().filename().string());
    }
    std::sort(students.begin(), students.end());

    for (const std::string& student : students) {
        for (ExamKind exam : kExamOrder) {
            fs::path exam_dir = root / student / exam_dir_name(exam);
            if (!fs::is_directory(exam_dir)) continue;
            ManifestEntry entry;
            entry.student_id = student;
            entry.exam = exam;
            for (SignalKind kind : kSignalOrder) {
                fs::path file = exam_dir / signal_file_name(kind);
                if (fs::is_regular_file(file)) entry.signal_files[kind] = file;
            }
            manifest.entries.push_back(std::move(entry));
        }
    }
    return manifest;
}

std::vector<Session> assemble_sessions(const DatasetManifest& manifest,
                                       std::span<const GradeRecord> roster) {
    std::set<std::string> excluded(manifest.exclusions.begin(), manifest.exclusions.end());

    std::map<std::pair<std::string, ExamKind>, const GradeRecord*> grades;
    for (const GradeRecord& rec : roster) {
        grades[{rec.student_id, rec.exam}] = &rec;
    }

    std::map<std::string, std::map<ExamKind, const ManifestEntry*>> by_student;
    for (const ManifestEntry& entry : manifest.entries) {
        if (excluded.count(entry.student_id)) continue;
        by_student[entry.student_id][entry.exam] = &entry;
    }

    std::vector<Session> sessions;
    for (const auto& [student, exams] : by_student) {
        for (ExamKind exam : kExamOrder) {
            auto it = exams.find(exam);
            if (it == exams.end()) {
                fail(Errc::IncompleteSession,
                     student + " has no " + std::string(exam_dir_name(exam)) + " directory");
            }
            const ManifestEntry& entry = *it->second;
            Session session;
            session.student_id = student;
            session.exam = exam;
            for (SignalKind kind : kSignalOrder) {
                auto file_it = entry.signal_files.find(kind);
                if (file_it == entry.signal_files.end()) {
                    fail(Errc::IncompleteSession, student + "/" + exam_dir_name(exam) +
                                                      " is missing " + signal_file_name(kind));
                }
                try {
                    session.recordings[kind] =
                        parse_sensor_csv(read_text_file(file_it->second), kind);
                } catch (const Error& e) {
                    throw Error(e.code(), file_it->second.string() + ": " + e.what());
                }
            }
            auto grade_it = grades.find({student, exam});
            if (grade_it == grades.end()) {
                fail(Errc::MissingGrade,
                     "no roster row for (" + student + ", " + exam_token(exam) + ")");
            }
            session.grade = *grade_it->second;
            sessions.push_back(std::move(session));
        }
    }
    // by_student map iteration already yields (student, exam) order.
    return sessions;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::IoError, "cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) fail(Errc::IoError, "cannot read " + path.string());
    return std::move(buffer).str();
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(Errc::IoError, "cannot open " + path.string() + " for writing");
    out.write(contents.data(), std::streamsize(contents.size()));
    if (!out) fail(Errc::IoError, "cannot write " + path.string());
}

} // namespace physio
