#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/rational.hpp>

namespace qid {

/// Exact rational exponent of q. Series code stores exponents as integer
/// "lattice units" (multiples of 1/scale); Exponent is the boundary type
/// that converts to and from that grid. No floating point anywhere.
class Exponent {
public:
    using rational = boost::rational<std::int64_t>;

    Exponent() : r_(0) {}
    Exponent(std::int64_t n) : r_(n) {}
    Exponent(std::int64_t num, std::int64_t den) : r_(num, den) {
        if (den == 0) throw std::invalid_argument("Exponent: zero denominator");
    }
    explicit Exponent(rational r) : r_(r) {}

    static Exponent from_lattice(std::int64_t units, std::int64_t scale) {
        return Exponent(units, scale);
    }

    std::int64_t num() const { return r_.numerator(); }
    std::int64_t den() const { return r_.denominator(); }

    bool on_lattice(std::int64_t scale) const {
        return scale > 0 && (num() * scale) % den() == 0;
    }

    /// Index on the 1/scale grid; throws when the exponent is off-lattice.
    std::int64_t lattice_units(std::int64_t scale) const {
        if (!on_lattice(scale))
            throw std::domain_error("exponent " + str() + " not representable at scale " +
                                    std::to_string(scale));
        return num() * scale / den();
    }

    std::string str() const {
        if (den() == 1) return std::to_string(num());
        return std::to_string(num()) + "/" + std::to_string(den());
    }

    friend Exponent operator+(Exponent a, Exponent b) { return Exponent(a.r_ + b.r_); }
    friend Exponent operator-(Exponent a, Exponent b) { return Exponent(a.r_ - b.r_); }
    friend Exponent operator-(Exponent a) { return Exponent(-a.r_); }
    friend Exponent operator*(Exponent a, Exponent b) { return Exponent(a.r_ * b.r_); }
    friend Exponent operator*(std::int64_t k, Exponent b) { return Exponent(k * b.r_); }
    friend Exponent operator/(Exponent a, Exponent b) {
        if (b.r_.numerator() == 0) throw std::invalid_argument("Exponent: division by zero");
        return Exponent(a.r_ / b.r_);
    }
    friend bool operator==(Exponent a, Exponent b) { return a.r_ == b.r_; }
    friend bool operator!=(Exponent a, Exponent b) { return a.r_ != b.r_; }
    friend bool operator<(Exponent a, Exponent b) { return a.r_ < b.r_; }
    friend bool operator<=(Exponent a, Exponent b) { return a.r_ <= b.r_; }
    friend bool operator>(Exponent a, Exponent b) { return a.r_ > b.r_; }
    friend bool operator>=(Exponent a, Exponent b) { return a.r_ >= b.r_; }

private:
    rational r_;
};

/// Reduced textual form of a lattice point, "k" or "a/b".
inline std::string exponent_string(std::int64_t units, std::int64_t scale) {
    return Exponent(units, scale).str();
}

} // namespace qid
