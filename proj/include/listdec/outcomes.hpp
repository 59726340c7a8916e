#pragma once

#include "listdec/dataset.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace listdec {

// Tri-valued result of one multifilter tree node.
struct Candidate {
    Eigen::VectorXd mu_hat; // at most k nonzeros
};
struct Reject {
    std::string diagnostic;
};
struct Split {
    std::vector<WorkItem> items; // length 1 or 2
};
using FilterOutcome = std::variant<Candidate, Reject, Split>;

// Result of the basic multifilter on a single probe.
struct BasicYes {
    double mean = 0.0;
    double variance = 0.0;
};
struct BasicNo {
    std::string diagnostic;
};
struct SplitOne {
    WorkItem item;
};
struct SplitTwo {
    WorkItem first;
    WorkItem second;
};
using BasicOutcome = std::variant<BasicYes, BasicNo, SplitOne, SplitTwo>;

inline bool is_yes(const BasicOutcome& o) { return std::holds_alternative<BasicYes>(o); }

} // namespace listdec
