#pragma once

#include <tripanel/geometry.hpp>

/**
   Closed-form trigonometric integrals underlying every panel integral:

     I(m, n, p; alpha, theta) = integral_0^theta sin^m t cos^n t Delta(t)^p dt
     J(m, n; theta)           = integral_0^theta sin^m t cos^n t dt

   with Delta(t) = (1 - alpha^2 sin^2 t)^(1/2). Only the keys reached by the
   panel integrals are implemented; every key has m + n odd (I) or appears in the
   J table below.

   For alpha at or below series_threshold the I keys with n >= 0 are summed as a
   binomial series in alpha^2 (one of m, n is odd, so each series term is a
   polynomial in sin or cos). This avoids the 1/alpha^k cancellation the closed
   forms suffer as the field point approaches the element plane.
*/
namespace tripanel::prim {

inline constexpr double series_threshold = 0.5;

/// alpha together with alpha' = (1 - alpha^2)^(1/2).
struct Modulus
{
    double alpha = 0.0;
    double alpha_p = 1.0;

    static Modulus of(double alpha);
};

double delta(double alpha, double theta);
double delta(const Modulus& k, const Angle& t);

bool admissible_J(int m, int n);
bool admissible_I(int m, int n, int p);

/// Definite J from 0 to theta. Throws UnsupportedKey / DomainError.
double eval_J(int m, int n, double theta);

/// Definite I from 0 to theta. Throws UnsupportedKey / DomainError.
double eval_I(int m, int n, int p, double alpha, double theta);

/**
   Antiderivatives of the admissible keys at one angle. Only differences of two
   evaluations with the same modulus are meaningful: the constants of
   integration differ between keys and between the series and closed-form
   branches.
*/
class Antiderivatives
{
public:
    Antiderivatives(const Modulus& k, const Angle& t);

    double J(int m, int n) const;
    double I(int m, int n, int p) const;

    double delta() const { return delta_; }
    const Angle& angle() const { return t_; }
    const Modulus& modulus() const { return k_; }

    /// ln((Delta + alpha') / (Delta - alpha')) / 2, evaluated as
    /// ln((Delta + alpha') / (alpha cos)); requires alpha > 0 and cos > 0.
    double half_log_ratio() const;

    /// The transcendental building blocks of the closed forms.
    struct LogTerms
    {
        double asin_ratio; ///< asin(alpha sin) / alpha
        double log_c;      ///< ln(alpha cos + Delta)
        double atanh_w;    ///< atanh(alpha' sin / Delta)
        double atanh_s;    ///< atanh(sin)
    };
    LogTerms log_terms() const { return {asin_ratio_, log_c_, atanh_w_, atanh_s_}; }

private:
    double closed_I(int m, int n, int p) const;
    double series_I(int m, int n, int p) const;

    Modulus k_;
    Angle t_;
    double delta_;
    double asin_ratio_; // asin(alpha sin) / alpha, -> sin as alpha -> 0
    double log_c_;      // ln(alpha cos + Delta)
    double atanh_w_;    // atanh(alpha' sin / Delta)
    double atanh_s_;    // atanh(sin)
};

} // namespace tripanel::prim
