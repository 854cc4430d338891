#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace darkrabi {

// Coupling core O_N shared by every off-diagonal block of a chain:
//   O_1 = [g_1],   O_N = [[O_{N-1}, g_N I], [g_N I, O_{N-1}]].
// Dimension 2^{N-1}; identical for both sector orientations.
Eigen::MatrixXd coupling_matrix(const std::vector<double>& g);

// Sign assignment for the closed-form eigensystem of O_N. The first sign is
// always +1; eigenvalue = g_1 + sum_k signs[k] g_k.
struct SignPattern {
    std::vector<int> signs;

    std::string to_string() const;  // e.g. "+--"
    static SignPattern from_string(const std::string& s);
};

// Pattern value with a fixed accumulation order (tail sum first, g_1 added
// last) so that snap_coupling can cancel it exactly in floating point.
double pattern_value(const std::vector<double>& g, const SignPattern& pattern);

struct PatternEig {
    SignPattern pattern;
    double value;
    Eigen::VectorXd vector;  // entries +-1, orientation fixed by the doubling
};

// All 2^{N-1} closed-form eigenpairs, enumerated with the sign of g_2
// varying slowest (all-plus first).
std::vector<PatternEig> sign_pattern_eigs(const std::vector<double>& g);

struct ZeroModeBasis {
    std::vector<SignPattern> patterns;
    Eigen::MatrixXd vectors;  // unit-norm columns, one per pattern

    int count() const { return static_cast<int>(patterns.size()); }
    bool empty() const { return patterns.empty(); }
};

// Patterns whose eigenvalue vanishes within tol * max(1, sum |g_k|).
ZeroModeBasis zero_modes(const std::vector<double>& g, double tol = 1e-12);

// Adjusts g_1 so that pattern_value(...) becomes exactly zero.
std::vector<double> snap_coupling(std::vector<double> g, const SignPattern& pattern);

}  // namespace darkrabi
