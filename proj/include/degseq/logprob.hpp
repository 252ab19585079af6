#pragma once

#include <cmath>
#include <limits>

namespace degseq {

// A probability carried in natural-log space. The value -inf is the explicit
// zero sentinel; every other stored value is the log of a positive probability.
class LogProb {
public:
    LogProb() : log_(-std::numeric_limits<double>::infinity()) {}

    static LogProb zero() { return LogProb(); }

    static LogProb one() { return from_log(0.0); }

    static LogProb from_log(double log_value) {
        LogProb p;
        p.log_ = log_value;
        return p;
    }

    static LogProb from_linear(double value) {
        return value > 0.0 ? from_log(std::log(value)) : zero();
    }

    bool is_zero() const { return std::isinf(log_) && log_ < 0.0; }

    // Natural log of the probability; -inf when zero.
    double log() const { return log_; }

    double linear() const { return is_zero() ? 0.0 : std::exp(log_); }

    LogProb operator*(LogProb other) const {
        if (is_zero() || other.is_zero()) return zero();
        return from_log(log_ + other.log_);
    }

    LogProb& operator*=(LogProb other) {
        *this = *this * other;
        return *this;
    }

    // this / other; other must be nonzero.
    LogProb operator/(LogProb other) const {
        if (is_zero()) return zero();
        return from_log(log_ - other.log_);
    }

    friend bool operator<(LogProb a, LogProb b) { return a.log_ < b.log_; }
    friend bool operator<=(LogProb a, LogProb b) { return a.log_ <= b.log_; }

private:
    double log_;
};

// log(exp(a) + exp(b)) without leaving log space.
inline LogProb log_add(LogProb a, LogProb b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    double hi = a.log(), lo = b.log();
    if (hi < lo) std::swap(hi, lo);
    return LogProb::from_log(hi + std::log1p(std::exp(lo - hi)));
}

}  // namespace degseq
