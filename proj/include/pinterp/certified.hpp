#pragma once
//
// certified.hpp : numeric values carrying rigorous absolute-error bounds,
// and the L_p exponent type with its conjugate.
//

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace pinterp {

enum class Provenance { exact, series_truncation, quadrature };

// A value together with a rigorous absolute-error bound.
struct CertifiedValue {
    double value = 0.0;
    double abs_err = 0.0;
    Provenance provenance = Provenance::exact;

    CertifiedValue() = default;
    CertifiedValue(double v, double e, Provenance p) : value(v), abs_err(e), provenance(p) {
        if (!(abs_err >= 0.0) || !std::isfinite(abs_err))
            throw std::invalid_argument("CertifiedValue: abs_err must be finite and nonnegative");
        if (provenance == Provenance::exact && abs_err != 0.0)
            throw std::invalid_argument("CertifiedValue: exact provenance requires abs_err == 0");
    }

    static CertifiedValue exact(double v) { return CertifiedValue(v, 0.0, Provenance::exact); }

    double upper() const { return value + abs_err; }
    double lower() const { return value - abs_err; }
};

// p in [1, inf] with 1/p + 1/p' = 1.
class LpExponent {
  public:
    LpExponent() : p_(2.0) {}
    explicit LpExponent(double p) : p_(p) {
        if (std::isnan(p_) || p_ < 1.0)
            throw std::domain_error("LpExponent: p must lie in [1, inf]");
    }

    static LpExponent infinity() { return LpExponent(std::numeric_limits<double>::infinity()); }

    static LpExponent parse(const std::string& s) {
        if (s == "inf" || s == "Inf" || s == "INF" || s == "infinity")
            return infinity();
        return LpExponent(std::stod(s));
    }

    double value() const { return p_; }
    bool is_inf() const { return std::isinf(p_); }

    LpExponent conjugate() const {
        if (is_inf()) return LpExponent(1.0);
        if (p_ == 1.0) return infinity();
        return LpExponent(p_ / (p_ - 1.0));
    }

  private:
    double p_;
};

}  // namespace pinterp
