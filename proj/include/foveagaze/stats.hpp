#pragma once

#include <span>

namespace foveagaze::stats {

/// Regularized incomplete beta I_x(a, b), evaluated by Lentz's continued fraction.
double incomplete_beta(double a, double b, double x);

/// P(|T| >= |t|) for Student's t with `df` degrees of freedom.
double student_t_two_sided_p(double t, double df);

/// P(F' >= f) for the F distribution with (df1, df2) degrees of freedom.
double f_survival(double f, double df1, double df2);

enum class SdKind {
    population,   // divide by n
    sample,       // divide by n - 1
};

double mean(std::span<const double> xs);
/// 0 when n < 2 for sample SD, or n < 1.
double standard_deviation(std::span<const double> xs, SdKind kind);

}  // namespace foveagaze::stats
