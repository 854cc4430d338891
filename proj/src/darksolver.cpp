#include "darkrabi/darksolver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "darkrabi/blocks.hpp"
#include "darkrabi/omatrix.hpp"

namespace darkrabi {

// -------------------- DarkLikeState --------------------

int DarkLikeState::max_photon() const {
    int best = -1;
    for (const Amplitude& a : amplitudes)
        if (a.value != 0.0) best = std::max(best, a.photon);
    if (best < 0 && !amplitudes.empty()) best = amplitudes.front().photon;
    return best;
}

double DarkLikeState::norm() const {
    double s = 0.0;
    for (const Amplitude& a : amplitudes) s += a.value * a.value;
    return std::sqrt(s);
}

DarkLikeState DarkLikeState::normalized_view() const {
    const double n = norm();
    if (n == 0.0) throw std::runtime_error("DarkLikeState: cannot normalize the zero state");
    DarkLikeState out(*this);
    for (Amplitude& a : out.amplitudes) a.value /= n;
    out.normalized = true;
    return out;
}

// -------------------- relations --------------------

double Relation::residual(const ModelParams& params) const {
    if (g_coeff.size() != params.couplings.size() || d_coeff.size() != params.splittings.size())
        throw std::invalid_argument("Relation: coefficient length mismatch");
    double r = omega_coeff * params.omega;
    for (std::size_t k = 0; k < g_coeff.size(); ++k) r += g_coeff[k] * params.couplings[k];
    for (std::size_t k = 0; k < d_coeff.size(); ++k) r += d_coeff[k] * params.splittings[k];
    return r;
}

namespace {

std::string coeff_term(double c, const std::string& name, bool first) {
    char buf[64];
    const double a = std::abs(c);
    if (a == 1.0)
        std::snprintf(buf, sizeof buf, "%s", name.c_str());
    else
        std::snprintf(buf, sizeof buf, "%g %s", a, name.c_str());
    std::string term(buf);
    if (first) return (c < 0 ? "-" + term : term);
    return (c < 0 ? " - " : " + ") + term;
}

}  // namespace

std::string Relation::text() const {
    std::string s;
    for (std::size_t k = 0; k < g_coeff.size(); ++k)
        if (g_coeff[k] != 0.0) s += coeff_term(g_coeff[k], "g" + std::to_string(k + 1), s.empty());
    for (std::size_t k = 0; k < d_coeff.size(); ++k)
        if (d_coeff[k] != 0.0) s += coeff_term(d_coeff[k], "D" + std::to_string(k + 1), s.empty());
    if (omega_coeff != 0.0) s += coeff_term(omega_coeff, "omega", s.empty());
    return s.empty() ? "0 = 0" : s + " = 0";
}

// -------------------- catalog templates --------------------

namespace {

double param_scale(const ModelParams& p) {
    double s = p.omega;
    for (double g : p.couplings) s += std::abs(g);
    for (double d : p.splittings) s += std::abs(d);
    return std::max(1.0, s);
}

Relation blank(int n) {
    Relation r;
    r.g_coeff.assign(static_cast<std::size_t>(n), 0.0);
    r.d_coeff.assign(static_cast<std::size_t>(n), 0.0);
    return r;
}

Relation g_equal(int n, int a, int b) {
    Relation r = blank(n);
    r.g_coeff[static_cast<std::size_t>(a)] = +1.0;
    r.g_coeff[static_cast<std::size_t>(b)] = -1.0;
    return r;
}

Relation d_equal(int n, int a, int b) {
    Relation r = blank(n);
    r.d_coeff[static_cast<std::size_t>(a)] = +1.0;
    r.d_coeff[static_cast<std::size_t>(b)] = -1.0;
    return r;
}

Relation g_split(int n, int a, int b, int c) {
    Relation r = blank(n);
    r.g_coeff[static_cast<std::size_t>(a)] = +1.0;
    r.g_coeff[static_cast<std::size_t>(b)] = -1.0;
    r.g_coeff[static_cast<std::size_t>(c)] = -1.0;
    return r;
}

// sum of signed splittings pinned to e0 * omega
Relation d_energy(int n, const std::vector<std::pair<int, double>>& terms, double e0) {
    Relation r = blank(n);
    for (auto [k, c] : terms) r.d_coeff[static_cast<std::size_t>(k)] = c;
    r.omega_coeff = -e0;
    return r;
}

struct TwoQ {
    const char* variant;
    int parity;  // head-block sector of the two-qubit state alone
};
constexpr TwoQ kTwoQ[] = {{"even", +1}, {"odd-a", -1}, {"odd-b", -1}};

std::vector<Relation> two_qubit_relations(int n, int a, int b, const std::string& variant,
                                          double e0) {
    std::vector<Relation> rels{g_equal(n, a, b)};
    if (variant == "even")
        rels.push_back(d_energy(n, {{a, +1.0}, {b, +1.0}}, e0));
    else if (variant == "odd-a")
        rels.push_back(d_energy(n, {{a, +1.0}, {b, -1.0}}, e0));
    else if (variant == "odd-b")
        rels.push_back(d_energy(n, {{a, -1.0}, {b, +1.0}}, e0));
    else
        throw std::logic_error("two_qubit_relations: unknown variant");
    return rels;
}

std::vector<Relation> three_qubit_relations(int n, int a, int b, int c, double e0) {
    std::vector<Relation> rels{g_split(n, a, b, c)};
    for (int k : {a, b, c}) rels.push_back(d_energy(n, {{k, +1.0}}, e0));
    return rels;
}

void singlet_relations(int n, const std::vector<std::pair<int, int>>& pairs,
                       std::vector<Relation>& rels) {
    for (auto [c, d] : pairs) {
        rels.push_back(g_equal(n, c, d));
        rels.push_back(d_equal(n, c, d));
    }
}

void pair_partitions(const std::vector<int>& elems,
                     std::vector<std::pair<int, int>>& current,
                     std::vector<std::vector<std::pair<int, int>>>& out) {
    if (elems.empty()) {
        out.push_back(current);
        return;
    }
    const int first = elems[0];
    for (std::size_t j = 1; j < elems.size(); ++j) {
        std::vector<int> rest;
        for (std::size_t k = 1; k < elems.size(); ++k)
            if (k != j) rest.push_back(elems[k]);
        current.emplace_back(first, elems[j]);
        pair_partitions(rest, current, out);
        current.pop_back();
    }
}

std::string qubit_list(const std::vector<int>& qs) {
    std::string s;
    for (int q : qs) {
        if (!s.empty()) s += ",";
        s += std::to_string(q + 1);
    }
    return s;
}

// Structural family instances for N qubits at photon order M (constraints
// already carry the lifted energy e0 = M; head photon i filled in later).
std::vector<FamilyCondition> catalog_templates(int n, int m) {
    const double e0 = static_cast<double>(m);
    std::vector<FamilyCondition> out;

    auto push = [&](std::string id, std::string variant, int parity,
                    std::vector<Relation> rels, std::vector<int> active,
                    std::vector<std::pair<int, int>> singlets, int degeneracy) {
        FamilyCondition f;
        f.id = std::move(id);
        f.variant = std::move(variant);
        f.photon_order = m;
        f.parity = parity;
        f.degeneracy = degeneracy;
        f.constraints = std::move(rels);
        f.active = std::move(active);
        f.singlets = std::move(singlets);
        out.push_back(std::move(f));
    };

    if (n == 2) {
        for (const TwoQ& sub : kTwoQ)
            push(std::string("2q-") + sub.variant, sub.variant, sub.parity,
                 two_qubit_relations(n, 0, 1, sub.variant, e0), {0, 1}, {}, 1);
    } else if (n == 3) {
        for (int a = 0; a < 3; ++a) {
            std::vector<int> others;
            for (int k = 0; k < 3; ++k)
                if (k != a) others.push_back(k);
            push("3q", "g" + std::to_string(a + 1) + "=g" + std::to_string(others[0] + 1) +
                           "+g" + std::to_string(others[1] + 1),
                 -1, three_qubit_relations(n, a, others[0], others[1], e0),
                 {a, others[0], others[1]}, {}, 1);
        }
    } else if (n == 4) {
        // (d) active pair + spectator singlet pair, all 6 assignments
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b) {
                std::vector<int> rest;
                for (int k = 0; k < 4; ++k)
                    if (k != a && k != b) rest.push_back(k);
                for (const TwoQ& sub : kTwoQ) {
                    std::vector<Relation> rels = two_qubit_relations(n, a, b, sub.variant, e0);
                    singlet_relations(n, {{rest[0], rest[1]}}, rels);
                    push("4q-pair", std::string(sub.variant) + " active " + qubit_list({a, b}),
                         -sub.parity, std::move(rels), {a, b}, {{rest[0], rest[1]}}, 1);
                }
            }
        // (e) singlet x singlet dark state
        {
            std::vector<Relation> rels;
            singlet_relations(n, {{0, 1}, {2, 3}}, rels);
            push("4q-dark", "", +1, std::move(rels), {}, {{0, 1}, {2, 3}}, 1);
        }
        // (f) equal couplings, three equal splittings tied to the remaining one
        for (int r = 0; r < 4; ++r) {
            std::vector<int> others;
            for (int k = 0; k < 4; ++k)
                if (k != r) others.push_back(k);
            struct Variant {
                const char* name;
                double r_sign;  // relation: r_sign*D_r - D_others +- e0 omega = 0
                double e_sign;
                int parity;
            };
            // minus: D_o = D_r - e0 (odd-a pair products), plus: D_o = D_r + e0
            // (odd-b products), mirror: D_o = -D_r + e0 (even pair products)
            const Variant variants[] = {{"minus", +1.0, -1.0, +1},
                                        {"plus", +1.0, +1.0, +1},
                                        {"mirror", -1.0, +1.0, -1}};
            for (const Variant& v : variants) {
                std::vector<Relation> rels{g_equal(n, 0, 1), g_equal(n, 1, 2), g_equal(n, 2, 3),
                                           d_equal(n, others[0], others[1]),
                                           d_equal(n, others[1], others[2])};
                Relation tie = blank(n);
                tie.d_coeff[static_cast<std::size_t>(others[0])] = +1.0;
                tie.d_coeff[static_cast<std::size_t>(r)] = -v.r_sign;
                tie.omega_coeff = -v.e_sign * e0;
                rels.push_back(tie);
                push("4q-equal-g", std::string(v.name) + " r=" + std::to_string(r + 1), v.parity,
                     std::move(rels), {r}, {}, 3);
            }
        }
    } else if (n >= 5) {
        // (g) products: active 2q (even N) or 3q (odd N) family x singlet pairs
        if (n % 2 == 0) {
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b) {
                    std::vector<int> rest;
                    for (int k = 0; k < n; ++k)
                        if (k != a && k != b) rest.push_back(k);
                    std::vector<std::vector<std::pair<int, int>>> partitions;
                    std::vector<std::pair<int, int>> scratch;
                    pair_partitions(rest, scratch, partitions);
                    for (const auto& pairs : partitions)
                        for (const TwoQ& sub : kTwoQ) {
                            std::vector<Relation> rels =
                                two_qubit_relations(n, a, b, sub.variant, e0);
                            singlet_relations(n, pairs, rels);
                            const int parity =
                                (pairs.size() % 2 == 0) ? sub.parity : -sub.parity;
                            push("nq-product",
                                 std::string(sub.variant) + " active " + qubit_list({a, b}),
                                 parity, std::move(rels), {a, b}, pairs, 1);
                        }
                }
        } else {
            for (int x = 0; x < n; ++x)
                for (int y = x + 1; y < n; ++y)
                    for (int z = y + 1; z < n; ++z)
                        for (int a : {x, y, z}) {
                            std::vector<int> bc;
                            for (int k : {x, y, z})
                                if (k != a) bc.push_back(k);
                            std::vector<int> rest;
                            for (int k = 0; k < n; ++k)
                                if (k != x && k != y && k != z) rest.push_back(k);
                            std::vector<std::vector<std::pair<int, int>>> partitions;
                            std::vector<std::pair<int, int>> scratch;
                            pair_partitions(rest, scratch, partitions);
                            for (const auto& pairs : partitions) {
                                std::vector<Relation> rels =
                                    three_qubit_relations(n, a, bc[0], bc[1], e0);
                                singlet_relations(n, pairs, rels);
                                const int parity = (pairs.size() % 2 == 0) ? -1 : +1;
                                push("nq-product",
                                     "g" + std::to_string(a + 1) + "=g" +
                                         std::to_string(bc[0] + 1) + "+g" +
                                         std::to_string(bc[1] + 1),
                                     parity, std::move(rels), {a, bc[0], bc[1]}, pairs, 1);
                            }
                        }
        }
    }
    return out;
}

}  // namespace

bool FamilyCondition::satisfied(const ModelParams& params, double tol) const {
    const double scale = param_scale(params);
    for (const Relation& rel : constraints)
        if (std::abs(rel.residual(params)) > tol * scale) return false;
    return true;
}

std::vector<FamilyCondition> catalog_match(const ModelParams& params, double tol) {
    params.validate();
    if (!(tol > 0.0)) throw std::invalid_argument("catalog_match: tol must be > 0");
    std::vector<FamilyCondition> out;
    for (FamilyCondition& f : catalog_templates(params.n_qubits, params.photon_order)) {
        if (!f.satisfied(params, tol)) continue;
        for (int i = 0; i < params.photon_order; ++i) {
            FamilyCondition fi = f;
            fi.subspace_i = i;
            fi.predicted_energy = (fi.id == "4q-dark")
                                      ? static_cast<double>(i)
                                      : static_cast<double>(i + params.photon_order);
            out.push_back(std::move(fi));
        }
    }
    return out;
}

FamilyCondition lift_to_multiphoton(const FamilyCondition& family, int photon_order, int i) {
    if (family.photon_order != 1 || family.subspace_i != 0)
        throw std::invalid_argument("lift_to_multiphoton: operand must be a single-photon family");
    if (photon_order < 1 || i < 0 || i >= photon_order)
        throw std::invalid_argument("lift_to_multiphoton: need M >= 1 and 0 <= i < M");
    FamilyCondition out = family;
    out.photon_order = photon_order;
    out.subspace_i = i;
    // constraint energy E -> E + M - 1, i.e. the omega coefficient scales by M
    for (Relation& rel : out.constraints) rel.omega_coeff *= photon_order;
    out.predicted_energy = (out.id == "4q-dark") ? static_cast<double>(i)
                                                 : static_cast<double>(i + photon_order);
    return out;
}

// -------------------- state construction --------------------

namespace {

struct Term {
    int block;  // 0 = head block (photon i), 1 = photon i + M
    std::uint32_t bits;
    double value;
};

std::uint32_t bit(int k) { return 1u << k; }

// two-qubit closed forms; the head-block coefficient carries the ladder
// factor w0 of the chain's first off-diagonal block
std::vector<Term> core_2q(const std::string& variant, int a, int b, const ModelParams& p,
                          double w0) {
    const double gsum = p.couplings[static_cast<std::size_t>(a)] +
                        p.couplings[static_cast<std::size_t>(b)];
    if (!(gsum > 0.0))
        throw std::runtime_error("build_states: decoupled limit (active couplings are zero)");
    const double da = p.splittings[static_cast<std::size_t>(a)];
    const double db = p.splittings[static_cast<std::size_t>(b)];
    if (variant == "even")
        return {{0, bit(a) | bit(b), 2.0 * (da - db) / (w0 * gsum)},
                {1, bit(a), -1.0},
                {1, bit(b), +1.0}};
    if (variant == "odd-a")
        return {{0, bit(a), 2.0 * (da + db) / (w0 * gsum)},
                {1, 0u, +1.0},
                {1, bit(a) | bit(b), -1.0}};
    if (variant == "odd-b")
        return {{0, bit(b), 2.0 * (da + db) / (w0 * gsum)},
                {1, 0u, +1.0},
                {1, bit(a) | bit(b), -1.0}};
    throw std::logic_error("core_2q: unknown variant");
}

std::vector<Term> core_3q(int a, int b, int c, const ModelParams& p, double w0) {
    const double ga = p.couplings[static_cast<std::size_t>(a)];
    const double gb = p.couplings[static_cast<std::size_t>(b)];
    const double gc = p.couplings[static_cast<std::size_t>(c)];
    if (!(gb > 0.0) || !(gc > 0.0))
        throw std::runtime_error("build_states: decoupled limit (active couplings are zero)");
    // the photon-(i+M) block sits M*omega away from E on every config this
    // state touches, so the head coefficients scale with the photon order
    const double dm = static_cast<double>(p.photon_order);
    return {{0, bit(a) | bit(b), dm * gc / (gb * ga * w0)},
            {0, bit(a) | bit(c), dm * gb / (gc * ga * w0)},
            {0, bit(b) | bit(c), -dm * ga / (gb * gc * w0)},
            {1, bit(a), +1.0},
            {1, bit(b), -1.0},
            {1, bit(c), -1.0},
            {1, bit(a) | bit(b) | bit(c), +1.0}};
}

void tensor_singlet(std::vector<Term>& terms, int c, int d) {
    std::vector<Term> out;
    out.reserve(terms.size() * 2);
    for (const Term& t : terms) {
        out.push_back({t.block, t.bits | bit(c), +t.value});
        out.push_back({t.block, t.bits | bit(d), -t.value});
    }
    terms = std::move(out);
}

DarkLikeState finish_state(const FamilyCondition& fam, const ModelParams& p,
                           std::vector<Term> terms, const std::string& tag) {
    const ParityChainBasis basis = parity_chain_basis(p.n_qubits);
    for (const Term& t : terms) {
        const int expected = (t.block == 0) ? fam.parity : -fam.parity;
        if (basis.sector_of({t.bits, p.n_qubits}) != expected)
            throw std::logic_error("build_states: construction left the labeled chain");
    }
    std::sort(terms.begin(), terms.end(), [&](const Term& x, const Term& y) {
        if (x.block != y.block) return x.block < y.block;
        return basis.index_of({x.bits, p.n_qubits}) < basis.index_of({y.bits, p.n_qubits});
    });

    DarkLikeState st;
    st.label = {fam.subspace_i, fam.parity};
    st.energy = fam.predicted_energy;
    st.family = tag;
    st.normalized = false;
    st.amplitudes.reserve(terms.size());
    for (const Term& t : terms)
        st.amplitudes.push_back({fam.subspace_i + t.block * fam.photon_order,
                                 QubitConfig{t.bits, p.n_qubits}, t.value});
    return st;
}

}  // namespace

std::vector<DarkLikeState> build_states(const FamilyCondition& fam, const ModelParams& params,
                                        double tol) {
    params.validate();
    if (params.n_qubits != static_cast<int>(fam.constraints.empty()
                                                ? params.n_qubits
                                                : fam.constraints[0].g_coeff.size()))
        throw std::invalid_argument("build_states: family was built for a different qubit count");
    if (params.photon_order != fam.photon_order)
        throw std::invalid_argument("build_states: family photon order does not match the model");
    if (!fam.satisfied(params, tol))
        throw std::invalid_argument("build_states: parameters violate the family constraints");

    const double w0 = offdiag_factor(fam.photon_order, fam.subspace_i, 0);
    const std::string tag =
        fam.id + (fam.variant.empty() ? std::string() : " [" + fam.variant + "]");

    std::vector<DarkLikeState> out;
    if (fam.id == "2q-even" || fam.id == "2q-odd-a" || fam.id == "2q-odd-b") {
        out.push_back(finish_state(
            fam, params, core_2q(fam.variant, fam.active[0], fam.active[1], params, w0), tag));
    } else if (fam.id == "3q") {
        out.push_back(finish_state(
            fam, params, core_3q(fam.active[0], fam.active[1], fam.active[2], params, w0), tag));
    } else if (fam.id == "4q-pair" || fam.id == "nq-product") {
        const std::string sub = fam.active.size() == 2
                                    ? fam.variant.substr(0, fam.variant.find(' '))
                                    : std::string("3q");
        std::vector<Term> terms =
            fam.active.size() == 2
                ? core_2q(sub, fam.active[0], fam.active[1], params, w0)
                : core_3q(fam.active[0], fam.active[1], fam.active[2], params, w0);
        for (auto [c, d] : fam.singlets) tensor_singlet(terms, c, d);
        out.push_back(finish_state(fam, params, std::move(terms), tag));
    } else if (fam.id == "4q-dark") {
        std::vector<Term> terms{{0, 0u, 1.0}};
        for (auto [c, d] : fam.singlets) tensor_singlet(terms, c, d);
        out.push_back(finish_state(fam, params, std::move(terms), tag));
    } else if (fam.id == "4q-equal-g") {
        const int r = fam.active[0];
        const std::string sub = fam.variant.substr(0, fam.variant.find(' '));
        const std::string core =
            (sub == "minus") ? "odd-a" : (sub == "plus") ? "odd-b" : "even";
        for (int k = 0; k < 4; ++k) {
            if (k == r) continue;
            std::vector<int> spectators;
            for (int q = 0; q < 4; ++q)
                if (q != r && q != k) spectators.push_back(q);
            std::vector<Term> terms = core_2q(core, r, k, params, w0);
            tensor_singlet(terms, spectators[0], spectators[1]);
            out.push_back(finish_state(fam, params, std::move(terms),
                                       tag + " pair " + std::to_string(r + 1) + "," +
                                           std::to_string(k + 1)));
        }
    } else {
        throw std::invalid_argument("build_states: unknown family id '" + fam.id + "'");
    }
    return out;
}

// -------------------- verification --------------------

VerifyReport verify_state(const ModelParams& params, const DarkLikeState& state, double tol) {
    params.validate();
    validate_label(state.label, params.photon_order);
    if (state.amplitudes.empty())
        throw std::invalid_argument("verify_state: state has no amplitudes");

    const int m = params.photon_order;
    const int i = state.label.i;
    const ParityChainBasis basis = parity_chain_basis(params.n_qubits);

    int max_block = 0;
    for (const Amplitude& a : state.amplitudes) {
        if (a.photon < i || (a.photon - i) % m != 0)
            throw std::runtime_error("verify_state: photon support outside the labeled chain");
        const int j = (a.photon - i) / m;
        const int expected = (j % 2 == 0) ? state.label.parity : -state.label.parity;
        if (a.config.n_qubits != params.n_qubits || basis.sector_of(a.config) != expected)
            throw std::runtime_error("verify_state: qubit sector outside the labeled chain");
        max_block = std::max(max_block, j);
    }

    const int blocks = std::max(3, max_block + 2);
    const BlockChain chain = assemble_chain(params, state.label, blocks);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(chain.dim());
    for (const Amplitude& a : state.amplitudes) {
        const int j = (a.photon - i) / m;
        x(static_cast<Eigen::Index>(j) * chain.block_dim + basis.index_of(a.config)) += a.value;
    }
    const double nrm = x.norm();
    if (nrm == 0.0) throw std::invalid_argument("verify_state: zero state");

    const Eigen::VectorXd hx = chain.apply(x);
    VerifyReport rep;
    rep.blocks_used = blocks;
    rep.energy = x.dot(hx) / (nrm * nrm);
    rep.residual = (hx - state.energy * x).norm() / nrm;
    rep.pass = rep.residual < tol;
    return rep;
}

// -------------------- generic scan --------------------

namespace {

struct SigmaPair {
    double smin, smax;
};

}  // namespace

ScanResult generic_scan(const ModelParams& params, const SubspaceLabel& label, double e_min,
                        double e_max, double tol, int grid_points) {
    params.validate();
    validate_label(label, params.photon_order);
    if (!(e_min < e_max))
        throw std::invalid_argument("generic_scan: energy window must satisfy e_min < e_max");
    if (grid_points < 3)
        throw std::invalid_argument("generic_scan: need at least 3 grid points");
    if (!(tol > 0.0)) throw std::invalid_argument("generic_scan: tol must be > 0");

    ScanResult result;
    const ZeroModeBasis zm = zero_modes(params.couplings);
    if (zm.empty()) return result;  // no closed subspace without a zero mode

    const int nq = 1 << (params.n_qubits - 1);
    const int d = zm.count();
    const Eigen::VectorXd d0 = diag_block(params, label, 0);
    const Eigen::VectorXd d1 = diag_block(params, label, 1);
    const double w0 = offdiag_factor(params.photon_order, label.i, 0);
    const Eigen::MatrixXd core = coupling_matrix(params.reduced_couplings());
    const Eigen::MatrixXd& z = zm.vectors;

    // rows: (d0 - E) c0 = 0 and w0 O c0 + (d1 - E) Z u = 0, with c1 = Z u
    auto build_a = [&](double e) {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2 * nq, nq + d);
        a.topLeftCorner(nq, nq).diagonal() = (d0.array() - e).matrix();
        a.bottomLeftCorner(nq, nq) = w0 * core;
        a.bottomRightCorner(nq, d) = (d1.array() - e).matrix().asDiagonal() * z;
        return a;
    };
    auto sigma = [&](double e) -> SigmaPair {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(build_a(e));
        const Eigen::VectorXd& s = svd.singularValues();
        return {s(s.size() - 1), s(0)};
    };

    const double step = (e_max - e_min) / (grid_points - 1);
    std::vector<double> es(static_cast<std::size_t>(grid_points));
    std::vector<double> smin(static_cast<std::size_t>(grid_points));
    for (int k = 0; k < grid_points; ++k) {
        es[static_cast<std::size_t>(k)] = e_min + k * step;
        smin[static_cast<std::size_t>(k)] = sigma(es[static_cast<std::size_t>(k)]).smin;
    }

    struct Candidate {
        double lo, hi, guess;
    };
    std::vector<Candidate> candidates;
    for (int k = 0; k < grid_points; ++k) {
        const bool left_ok = (k == 0) || smin[std::size_t(k)] <= smin[std::size_t(k - 1)];
        const bool right_ok =
            (k == grid_points - 1) || smin[std::size_t(k)] <= smin[std::size_t(k + 1)];
        if (left_ok && right_ok)
            candidates.push_back({es[std::size_t(std::max(0, k - 1))],
                                  es[std::size_t(std::min(grid_points - 1, k + 1))],
                                  es[std::size_t(k)]});
    }
    // bounded-support states can only sit at a block-diagonal entry or at the
    // ladder head i + M, so those energies are always tested
    std::vector<double> privileged{static_cast<double>(label.i + params.photon_order)};
    privileged.insert(privileged.end(), d0.data(), d0.data() + d0.size());
    privileged.insert(privileged.end(), d1.data(), d1.data() + d1.size());
    for (double e : privileged) candidates.push_back({e - step, e + step, e});

    const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
    struct Accepted {
        double e;
        SigmaPair s;
        bool conclusive;
    };
    std::vector<Accepted> accepted;
    for (const Candidate& c : candidates) {
        // try the guess verbatim first: privileged energies are usually exact
        double best_e = c.guess;
        SigmaPair best = sigma(c.guess);
        if (!(best.smin < tol * best.smax)) {
            double lo = c.lo, hi = c.hi;
            double x1 = hi - golden * (hi - lo), x2 = lo + golden * (hi - lo);
            double f1 = sigma(x1).smin, f2 = sigma(x2).smin;
            for (int it = 0; it < 200 && (hi - lo) > 1e-12; ++it) {
                if (f1 <= f2) {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - golden * (hi - lo);
                    f1 = sigma(x1).smin;
                } else {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + golden * (hi - lo);
                    f2 = sigma(x2).smin;
                }
            }
            best_e = 0.5 * (lo + hi);
            best = sigma(best_e);
        }
        if (best.smin < 100.0 * tol * best.smax)
            accepted.push_back({best_e, best, best.smin < tol * best.smax});
    }

    std::sort(accepted.begin(), accepted.end(),
              [](const Accepted& a, const Accepted& b) { return a.e < b.e; });
    std::vector<Accepted> unique;
    for (const Accepted& a : accepted) {
        if (!unique.empty() && std::abs(a.e - unique.back().e) <= 1e-9) {
            if (a.s.smin / a.s.smax < unique.back().s.smin / unique.back().s.smax)
                unique.back() = a;
            continue;
        }
        unique.push_back(a);
    }

    const ParityChainBasis basis = parity_chain_basis(params.n_qubits);
    const std::vector<QubitConfig>& head = basis.sector(label.parity);
    const std::vector<QubitConfig>& second = basis.sector(-label.parity);
    for (const Accepted& a : unique) {
        result.diagnostics.push_back(
            {a.e, a.s.smin, a.s.smax, a.conclusive ? "accepted" : "inconclusive"});
        if (!a.conclusive) continue;

        Eigen::JacobiSVD<Eigen::MatrixXd> svd(build_a(a.e), Eigen::ComputeThinV);
        const Eigen::VectorXd& s = svd.singularValues();
        int null_dim = 0;
        for (Eigen::Index j = s.size() - 1; j >= 0 && s(j) < tol * s(0); --j) ++null_dim;
        for (int j = 0; j < null_dim; ++j) {
            const Eigen::VectorXd v = svd.matrixV().col(svd.matrixV().cols() - 1 - j);
            const Eigen::VectorXd c0 = v.head(nq);
            const Eigen::VectorXd c1 = z * v.tail(d);

            DarkLikeState st;
            st.label = label;
            st.family = "scan";
            st.normalized = true;
            for (int r = 0; r < nq; ++r)
                if (std::abs(c0(r)) > 1e-12)
                    st.amplitudes.push_back({label.i, head[std::size_t(r)], c0(r)});
            for (int r = 0; r < nq; ++r)
                if (std::abs(c1(r)) > 1e-12)
                    st.amplitudes.push_back(
                        {label.i + params.photon_order, second[std::size_t(r)], c1(r)});
            if (st.amplitudes.empty()) continue;
            if (st.amplitudes.front().value < 0.0)
                for (Amplitude& amp : st.amplitudes) amp.value = -amp.value;

            st.energy = a.e;
            const VerifyReport rep = verify_state(params, st, tol);
            st.energy = rep.energy;  // residual-verified energy
            result.states.push_back(std::move(st));
        }
    }
    return result;
}

}  // namespace darkrabi
