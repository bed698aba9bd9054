#pragma once

#include <stdexcept>
#include <string>

namespace cartanlim {

/// Signals a broken internal invariant (e.g. a value outside a range that is
/// mathematically impossible for valid inputs).  Maps to exit code 2 in the
/// CLI, as opposed to user errors (exit code 1).
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

/// Conjugacy class of a 2-dimensional limit group.
enum class ClassLabel { C, F, N1, N2, N3 };

inline constexpr ClassLabel kAllClasses[5] = {ClassLabel::C, ClassLabel::F, ClassLabel::N1,
                                              ClassLabel::N2, ClassLabel::N3};

inline const char* to_string(ClassLabel c) {
    switch (c) {
        case ClassLabel::C: return "C";
        case ClassLabel::F: return "F";
        case ClassLabel::N1: return "N1";
        case ClassLabel::N2: return "N2";
        case ClassLabel::N3: return "N3";
    }
    return "?";
}

inline ClassLabel class_label_from_string(const std::string& s) {
    for (ClassLabel c : kAllClasses)
        if (s == to_string(c)) return c;
    throw std::invalid_argument("unknown class label: " + s);
}

/// Degenerate triangle configuration class, keyed by its counts of distinct
/// points and lines.  A configuration has 1..3 points and 1..3 lines, and the
/// combinations (2 points, 3 lines) and (3 points, 2 lines) are impossible,
/// which leaves 7 classes.  TN2p and TN3p are not characteristic for any
/// limit group.
enum class ConfigLabel { TC, TF, TN1, TN2, TN3, TN2p, TN3p };

inline const char* to_string(ConfigLabel c) {
    switch (c) {
        case ConfigLabel::TC: return "TC";
        case ConfigLabel::TF: return "TF";
        case ConfigLabel::TN1: return "TN1";
        case ConfigLabel::TN2: return "TN2";
        case ConfigLabel::TN3: return "TN3";
        case ConfigLabel::TN2p: return "TN2'";
        case ConfigLabel::TN3p: return "TN3'";
    }
    return "?";
}

struct ConfigClass {
    ConfigLabel label;
    int points;
    int lines;
    std::string description;          // what the configuration is
    std::string maximal_description;  // the maximal configuration a stabilizing group preserves
};

/// The (point count, line count) signatures for TN1 (1,1), TN2' (1,2) and
/// TN3' (2,1) are inferred from the constraints on degenerate triangle
/// configurations; see the README notes.
inline ConfigClass config_from_counts(int points, int lines) {
    auto make = [&](ConfigLabel l, const char* d, const char* m) {
        return ConfigClass{l, points, lines, d, m};
    };
    if (points == 3 && lines == 3)
        return make(ConfigLabel::TC, "three points and three lines in general position",
                    "three fixed points and three invariant lines");
    if (points == 2 && lines == 2)
        return make(ConfigLabel::TF, "two points and two lines",
                    "two fixed points and two invariant lines");
    if (points == 1 && lines == 1)
        return make(ConfigLabel::TN1, "one point on one line",
                    "one fixed point on one invariant line");
    if (points == 1 && lines == 3)
        return make(ConfigLabel::TN2, "three lines of a pencil through one point",
                    "invariant pencil: one fixed point with every line through it preserved");
    if (points == 3 && lines == 1)
        return make(ConfigLabel::TN3, "three points on one line",
                    "pointwise-fixed line: one invariant line with every point on it fixed");
    if (points == 1 && lines == 2)
        return make(ConfigLabel::TN2p, "two lines through one point",
                    "not characteristic for any limit group");
    if (points == 2 && lines == 1)
        return make(ConfigLabel::TN3p, "two points on one line",
                    "not characteristic for any limit group");
    throw InternalError("impossible degenerate triangle configuration: " + std::to_string(points) +
                        " points, " + std::to_string(lines) + " lines");
}

}  // namespace cartanlim
