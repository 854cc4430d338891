#include "darkrabi/omatrix.hpp"

#include <cmath>
#include <stdexcept>

namespace darkrabi {

namespace {

void check_couplings(const std::vector<double>& g) {
    if (g.empty() || g.size() > 16)
        throw std::invalid_argument("omatrix: need 1..16 couplings");
    for (double v : g)
        if (!std::isfinite(v))
            throw std::invalid_argument("omatrix: couplings must be finite");
}

}  // namespace

Eigen::MatrixXd coupling_matrix(const std::vector<double>& g) {
    check_couplings(g);
    Eigen::MatrixXd core(1, 1);
    core(0, 0) = g[0];
    for (std::size_t k = 1; k < g.size(); ++k) {
        Eigen::Index m = core.rows();
        Eigen::MatrixXd next = Eigen::MatrixXd::Zero(2 * m, 2 * m);
        next.topLeftCorner(m, m) = core;
        next.bottomRightCorner(m, m) = core;
        next.topRightCorner(m, m) = g[k] * Eigen::MatrixXd::Identity(m, m);
        next.bottomLeftCorner(m, m) = g[k] * Eigen::MatrixXd::Identity(m, m);
        core = std::move(next);
    }
    return core;
}

std::string SignPattern::to_string() const {
    std::string s;
    s.reserve(signs.size());
    for (int v : signs) s.push_back(v > 0 ? '+' : '-');
    return s;
}

SignPattern SignPattern::from_string(const std::string& s) {
    if (s.empty())
        throw std::invalid_argument("SignPattern: empty pattern");
    if (s[0] != '+')
        throw std::invalid_argument("SignPattern: first sign must be '+'");
    SignPattern p;
    p.signs.reserve(s.size());
    for (char c : s) {
        if (c == '+')
            p.signs.push_back(+1);
        else if (c == '-')
            p.signs.push_back(-1);
        else
            throw std::invalid_argument("SignPattern: expected only '+'/'-', got '" + s + "'");
    }
    return p;
}

double pattern_value(const std::vector<double>& g, const SignPattern& pattern) {
    check_couplings(g);
    if (pattern.signs.size() != g.size())
        throw std::invalid_argument("pattern_value: pattern length mismatch");
    if (pattern.signs[0] != +1)
        throw std::invalid_argument("pattern_value: first sign must be +1");
    double tail = 0.0;
    for (std::size_t k = 1; k < g.size(); ++k) tail += pattern.signs[k] * g[k];
    return g[0] + tail;
}

std::vector<PatternEig> sign_pattern_eigs(const std::vector<double>& g) {
    check_couplings(g);
    const int n = static_cast<int>(g.size());
    const std::size_t count = std::size_t{1} << (n - 1);

    std::vector<PatternEig> out;
    out.reserve(count);
    for (std::size_t t = 0; t < count; ++t) {
        SignPattern pattern;
        pattern.signs.assign(static_cast<std::size_t>(n), +1);
        for (int k = 1; k < n; ++k)
            if ((t >> (n - 1 - k)) & 1u) pattern.signs[static_cast<std::size_t>(k)] = -1;

        Eigen::VectorXd v(1);
        v(0) = 1.0;
        for (int k = 1; k < n; ++k) {
            Eigen::VectorXd next(2 * v.size());
            next.head(v.size()) = v;
            next.tail(v.size()) = pattern.signs[static_cast<std::size_t>(k)] * v;
            v = std::move(next);
        }
        out.push_back({pattern, pattern_value(g, pattern), std::move(v)});
    }
    return out;
}

ZeroModeBasis zero_modes(const std::vector<double>& g, double tol) {
    if (!(tol > 0.0))
        throw std::invalid_argument("zero_modes: tol must be > 0");
    double scale = 0.0;
    for (double v : g) scale += std::abs(v);
    scale = std::max(1.0, scale);

    ZeroModeBasis basis;
    std::vector<Eigen::VectorXd> cols;
    for (const PatternEig& pe : sign_pattern_eigs(g)) {
        if (std::abs(pe.value) <= tol * scale) {
            basis.patterns.push_back(pe.pattern);
            cols.push_back(pe.vector / pe.vector.norm());
        }
    }
    if (!cols.empty()) {
        basis.vectors.resize(cols[0].size(), static_cast<Eigen::Index>(cols.size()));
        for (std::size_t c = 0; c < cols.size(); ++c)
            basis.vectors.col(static_cast<Eigen::Index>(c)) = cols[c];
    }
    return basis;
}

std::vector<double> snap_coupling(std::vector<double> g, const SignPattern& pattern) {
    check_couplings(g);
    if (pattern.signs.size() != g.size())
        throw std::invalid_argument("snap_coupling: pattern length mismatch");
    if (pattern.signs[0] != +1)
        throw std::invalid_argument("snap_coupling: first sign must be +1");
    double tail = 0.0;
    for (std::size_t k = 1; k < g.size(); ++k) tail += pattern.signs[k] * g[k];
    if (tail > 0.0)
        throw std::invalid_argument("snap_coupling: pattern needs a negative tail to keep g_1 >= 0");
    g[0] = -tail;
    return g;
}

}  // namespace darkrabi
