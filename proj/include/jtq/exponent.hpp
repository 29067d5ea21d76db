#pragma once

#include "jtq/numeric.hpp"

#include <numeric>
#include <string>
#include <vector>

namespace jtq {

// Integer exponent vector e = (e_1, ..., e_r) indexing a Jordan totient
// quotient  J_e(n) = prod_i J_i(n)^{e_i}.  Trailing zeros are immaterial and
// stripped on construction, so (−2,1,0) == (−2,1); the empty vector is the
// trivial quotient J_e == 1.
class ExponentVector {
public:
    ExponentVector() = default;

    explicit ExponentVector(std::vector<long> entries) : e_(std::move(entries)) {
        while (!e_.empty() && e_.back() == 0) e_.pop_back();
    }

    ExponentVector(std::initializer_list<long> entries)
        : ExponentVector(std::vector<long>(entries)) {}

    const std::vector<long>& entries() const { return e_; }
    std::size_t size() const { return e_.size(); }
    long operator[](std::size_t i) const { return i < e_.size() ? e_[i] : 0; }
    bool trivial() const { return e_.empty(); }

    // weight w(e) = sum_i i * e_i; J_e(n) ~ n^w times a bounded Euler factor.
    long weight() const {
        long w = 0;
        for (std::size_t i = 0; i < e_.size(); ++i)
            w += static_cast<long>(i + 1) * e_[i];
        return w;
    }

    bool balanced() const { return weight() == 0; }

    // sum of |e_i| over negative entries, weighted by index: the p-power needed
    // to clear denominators of prod (1 - p^{-i})^{e_i}.
    long negative_index_mass() const {
        long s = 0;
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] < 0) s += static_cast<long>(i + 1) * (-e_[i]);
        return s;
    }

    bool operator==(const ExponentVector& o) const { return e_ == o.e_; }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < e_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(e_[i]);
        }
        if (e_.empty()) s += "0";
        return s + ")";
    }

    // Parses "-2,1" or "(-2, 1)"; rejects anything non-integer.
    static ExponentVector parse(const std::string& text) {
        std::vector<long> v;
        std::string t;
        for (char c : text)
            if (c != '(' && c != ')' && c != ' ') t += c;
        std::size_t pos = 0;
        while (pos <= t.size()) {
            std::size_t comma = t.find(',', pos);
            std::string tok = t.substr(pos, comma == std::string::npos
                                                ? std::string::npos : comma - pos);
            if (tok.empty())
                throw std::invalid_argument("ExponentVector: empty component in '" + text + "'");
            std::size_t used = 0;
            long val;
            try {
                val = std::stol(tok, &used);
            } catch (const std::exception&) {
                throw std::invalid_argument("ExponentVector: bad component '" + tok + "'");
            }
            if (used != tok.size())
                throw std::invalid_argument("ExponentVector: bad component '" + tok + "'");
            v.push_back(val);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return ExponentVector(std::move(v));
    }

private:
    std::vector<long> e_;
};

}  // namespace jtq
