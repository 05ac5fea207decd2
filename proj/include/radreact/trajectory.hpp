#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "radreact/eom.hpp"
#include "radreact/maxaccel.hpp"

namespace radreact {

/// Per-sample diagnostics; these are the CSV columns after the jet.
struct DiagnosticsRecord {
    double a_sq = 0.0;             // η(ẍ, ẍ)
    double eps = 0.0;              // a_sq / A_max²
    double eps_dot = 0.0;          // 2 η(x⃛, ẍ) / A_max²
    double g_norm_residual = 0.0;  // g(ẋ, ẋ) + 1
    double kin2_residual = 0.0;
    double kin3_residual = 0.0;
    double fl_sq = 0.0;
    double radiated_power_t = 0.0;  // time component of the Larmor rate
    double bound_margin = 0.0;      // √2 √fl_sq / m - √a_sq
    bool superluminal = false;
    std::optional<double> beta2;  // first-order convention; absent where ε̇ = 0
};

struct Sample {
    double tau = 0.0;
    Jet3 jet;
    DiagnosticsRecord diag;
};

struct Termination {
    enum class Kind { Completed, Runaway, StepFailure, DomainError };

    Kind kind = Kind::Completed;
    double tau = 0.0;
    std::string message;
};

std::string_view to_string(Termination::Kind kind);

struct Trajectory {
    std::vector<Sample> samples;
    EomKind eom = EomKind::LorentzOnly;
    Termination terminated_by;
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;
};

}  // namespace radreact
