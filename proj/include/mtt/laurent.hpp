#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace mtt {

/// Integer-coefficient Laurent polynomial in one variable q, stored as
/// exponent -> coefficient with zero coefficients dropped. This is the shape
/// of every graded interaction polynomial; the surface is deliberately small
/// (sum, integer scale, shift by q^k, evaluation at +-1).
class LaurentPoly {
  public:
    LaurentPoly() = default;

    static LaurentPoly monomial(std::int64_t coeff, int exponent) {
        LaurentPoly p;
        p.set(exponent, coeff);
        return p;
    }

    const std::map<int, std::int64_t>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    std::int64_t coeff(int exponent) const {
        auto it = coeffs_.find(exponent);
        return it == coeffs_.end() ? 0 : it->second;
    }

    void set(int exponent, std::int64_t coeff) {
        if (coeff == 0)
            coeffs_.erase(exponent);
        else
            coeffs_[exponent] = coeff;
    }

    void add(int exponent, std::int64_t coeff) { set(exponent, this->coeff(exponent) + coeff); }

    LaurentPoly operator+(const LaurentPoly& other) const {
        LaurentPoly out = *this;
        for (const auto& [e, c] : other.coeffs_)
            out.add(e, c);
        return out;
    }

    LaurentPoly scaled(std::int64_t s) const {
        LaurentPoly out;
        if (s != 0)
            for (const auto& [e, c] : coeffs_)
                out.set(e, c * s);
        return out;
    }

    /// Multiply by q^k.
    LaurentPoly shifted(int k) const {
        LaurentPoly out;
        for (const auto& [e, c] : coeffs_)
            out.set(e + k, c);
        return out;
    }

    /// Evaluate at q = 1 or q = -1; the two specializations the package
    /// carries (total size and Euler-signed size).
    std::int64_t eval(int at) const {
        if (at != 1 && at != -1)
            throw std::invalid_argument("LaurentPoly::eval only supports q = 1 or q = -1");
        std::int64_t total = 0;
        for (const auto& [e, c] : coeffs_)
            total += (at == 1 || e % 2 == 0) ? c : -c;
        return total;
    }

    bool operator==(const LaurentPoly& other) const { return coeffs_ == other.coeffs_; }
    bool operator!=(const LaurentPoly& other) const { return !(*this == other); }

    /// Human form used in reports, e.g. "3*q^-1 + 2 + 5*q^2". Terms ascend by
    /// exponent; the constant term prints bare.
    std::string printed() const {
        if (coeffs_.empty())
            return "0";
        std::string out;
        for (const auto& [e, c] : coeffs_) {
            if (!out.empty())
                out += " + ";
            if (e == 0) {
                out += std::to_string(c);
            } else {
                out += std::to_string(c) + "*q";
                if (e != 1)
                    out += "^" + std::to_string(e);
            }
        }
        return out;
    }

  private:
    std::map<int, std::int64_t> coeffs_;
};

}  // namespace mtt
