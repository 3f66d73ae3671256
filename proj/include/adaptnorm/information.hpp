#pragma once

#include <array>
#include <string_view>

#include "likelihood.hpp"

namespace adaptnorm {

//! Information measures used to norm the MLE.
enum class InfoMeasureKind
{
    expected_fisher,               //!< i(xi_A, theta), deterministic
    observed,                      //!< j_n = -dS/dtheta
    incremental_observed_subject,  //!< sum of squared subject increments
    incremental_observed_stage,    //!< sum of squared stage increments
    incremental_expected,          //!< conditional variances (both splits)
};

inline constexpr std::size_t kNumInfoMeasures = 5;

inline constexpr std::array<InfoMeasureKind, kNumInfoMeasures> kAllInfoMeasures{
    InfoMeasureKind::expected_fisher,
    InfoMeasureKind::observed,
    InfoMeasureKind::incremental_observed_subject,
    InfoMeasureKind::incremental_observed_stage,
    InfoMeasureKind::incremental_expected,
};

//! The four measures reported in tail tables and CDF-distance curves.
inline constexpr std::array<InfoMeasureKind, 4> kTabulatedInfoMeasures{
    InfoMeasureKind::expected_fisher,
    InfoMeasureKind::observed,
    InfoMeasureKind::incremental_observed_subject,
    InfoMeasureKind::incremental_expected,
};

constexpr std::size_t index(InfoMeasureKind kind)
{
    return static_cast<std::size_t>(kind);
}

std::string_view to_string(InfoMeasureKind kind);

//! True for measures that are sums of squares or squared derivatives.
constexpr bool is_nonnegative(InfoMeasureKind kind)
{
    return kind != InfoMeasureKind::observed;
}

//! Limiting scale U^{-2} = deta(x2, theta)^2 / sigma^2.
struct LimitScale
{
    double u_inv_sq;
    bool degenerate;  //!< deta(x2, theta) == 0
};

//! Stage-wise score increments D_1, D_2 (their sum is the score).
struct StageIncrements
{
    double first;
    double second;
};

//! Observed information; may be negative for small samples.
double observed_info(MeanModel const& model,
                     TwoStageSample const& sample,
                     double theta);

//! Quadratic variation of the score over subject-wise increments.
double incremental_observed_subject(MeanModel const& model,
                                    TwoStageSample const& sample,
                                    double theta);

//! Quadratic variation of the score over stage-wise increments.
double incremental_observed_stage(MeanModel const& model,
                                  TwoStageSample const& sample,
                                  double theta);

//! Quadratic characteristic; identical for subject and stage splits.
double incremental_expected_info(MeanModel const& model,
                                 TwoStageSample const& sample,
                                 double theta);

//! Same value accumulated as a sum of per-subject conditional variances.
double incremental_expected_info_subjectwise(MeanModel const& model,
                                             TwoStageSample const& sample,
                                             double theta);

StageIncrements stage_increments(MeanModel const& model,
                                 TwoStageSample const& sample,
                                 double theta);

LimitScale
limit_scale(MeanModel const& model, double x2, double theta, double sigma);

}  // namespace adaptnorm
