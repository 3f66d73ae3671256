#pragma once

#include <string>
#include <string_view>

namespace adaptnorm {

//! Mean-function families for single-parameter dose-response regression.
enum class Family
{
    logistic_location,     //!< (1 + e^{x - theta})^{-1}
    logistic_scale,        //!< (1 + e^{theta x})^{-1}
    exponential_location,  //!< e^{-x + theta}
    exponential_scale,     //!< e^{-theta x}
};

std::string_view to_string(Family family);

//! Parse a family name; throws ConfigError on unknown names.
Family family_from_string(std::string_view name);

//! Admissible dose range [a, b].
struct DoseInterval
{
    double a;
    double b;

    bool contains(double x) const { return x >= a && x <= b; }
    double clamp(double x) const { return x < a ? a : (x > b ? b : x); }
};

/*!
 * A mean function eta(x, theta) with analytic theta-derivatives and the
 * truncated parameter range [theta_lo, theta_hi] used by every estimator.
 */
class MeanModel
{
  public:
    //! Throws ConfigError unless theta_lo < theta_hi, both finite.
    MeanModel(Family family, double theta_lo, double theta_hi);

    //! Model truncated to (0, 1/a); requires a > 0.
    static MeanModel with_default_bounds(Family family, DoseInterval interval);

    Family family() const { return family_; }
    double theta_lo() const { return theta_lo_; }
    double theta_hi() const { return theta_hi_; }
    double clamp_theta(double theta) const;

    double eta(double x, double theta) const;
    double deta(double x, double theta) const;
    double ddeta(double x, double theta) const;

    /*!
     * Closed-form MLE from stage-1 data alone: inverts eta(x1, .) at the
     * stage mean and clamps to [theta_lo, theta_hi]. Means outside the
     * attainable range map to the corresponding bound.
     */
    double stage1_mle(double x1, double ybar1) const;

    /*!
     * Dose in [a, b] maximizing deta(x, theta)^2. Closed form except for
     * the logistic-scale family, which uses grid-seeded golden section.
     */
    double optimal_dose(double theta, DoseInterval interval) const;

  private:
    Family family_;
    double theta_lo_;
    double theta_hi_;
};

}  // namespace adaptnorm
