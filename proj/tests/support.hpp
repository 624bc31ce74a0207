#pragma once

// Shared test helpers: chi-square survival function for sampler statistics and
// a minimal XML well-formedness check for rendered SVG.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace testsupport {

// Regularized upper incomplete gamma Q(a, x), series + continued fraction.
inline double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) return 1.0;
    if (x == 0.0) return 1.0;
    const double gln = std::lgamma(a);
    if (x < a + 1.0) {
        // lower series, return 1 - P
        double ap = a;
        double sum = 1.0 / a;
        double del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::fabs(del) < std::fabs(sum) * 1e-14) break;
        }
        return 1.0 - sum * std::exp(-x + a * std::log(x) - gln);
    }
    // continued fraction for Q
    double b = x + 1.0 - a;
    double c = 1e300;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::fabs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-14) break;
    }
    return std::exp(-x + a * std::log(x) - gln) * h;
}

// p-value of a chi-square goodness-of-fit statistic with `dof` degrees.
inline double chi_square_sf(double stat, double dof) { return gamma_q(dof / 2.0, stat / 2.0); }

// Pearson statistic for observed counts against expected probabilities.
inline double chi_square_stat(const std::vector<std::size_t>& observed,
                              const std::vector<double>& probs) {
    double total = 0.0;
    for (std::size_t o : observed) total += static_cast<double>(o);
    double stat = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        double expected = probs[i] * total;
        double diff = static_cast<double>(observed[i]) - expected;
        stat += diff * diff / expected;
    }
    return stat;
}

// Checks tag balance and attribute quoting; enough to catch malformed output.
inline bool xml_well_formed(const std::string& text) {
    std::vector<std::string> stack;
    std::size_t i = 0;
    if (text.rfind("<?xml", 0) == 0) {
        i = text.find("?>");
        if (i == std::string::npos) return false;
        i += 2;
    }
    while (i < text.size()) {
        if (text[i] != '<') {
            if (text[i] == '>') return false;
            ++i;
            continue;
        }
        std::size_t close = i + 1;
        bool in_quote = false;
        while (close < text.size() && (text[close] != '>' || in_quote)) {
            if (text[close] == '"') in_quote = !in_quote;
            ++close;
        }
        if (close >= text.size()) return false;
        std::string tag = text.substr(i + 1, close - i - 1);
        if (tag.empty()) return false;
        if (tag[0] == '/') {
            if (stack.empty()) return false;
            if (stack.back() != tag.substr(1)) return false;
            stack.pop_back();
        } else if (tag.back() != '/' && tag[0] != '!' && tag[0] != '?') {
            std::size_t space = tag.find_first_of(" \t\n");
            stack.push_back(space == std::string::npos ? tag : tag.substr(0, space));
        }
        i = close + 1;
    }
    return stack.empty();
}

}  // namespace testsupport
