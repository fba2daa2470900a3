#include "germlab/germs.hpp"

#include <algorithm>

#include "germlab/characters.hpp"
#include "germlab/integrate.hpp"
#include "germlab/symbols.hpp"

namespace germlab {

GermParams::GermParams(int p_, int r_, int m_, LaurentSeries a_)
    : p(p_), r(r_), m(m_), a(std::move(a_)) {
    require_odd_prime(p);
    if (r < 1) throw PreconditionError("germ params: r must be >= 1");
    if (m < 1) throw PreconditionError("germ params: m must be >= 1");
    if (a.is_zero() || a.prime() != p) throw PreconditionError("germ params: bad scaling element");
    if (a.valuation() < 1) throw PreconditionError("germ params: v(a) must be >= 1");
    if (a.precision() < 2 * a.valuation() + 1)
        throw PreconditionError("germ params: a needs precision >= 2 v(a) + 1");
}

namespace {

// ---- dp evaluator ---------------------------------------------------------
//
// The sums J(a,r), I(a,r) run over tuples from G = (1+t^m O)/(1+t^M O),
// M = m + v(a), constrained by a product condition. In log coordinates G is
// (Z/p)^{v(a)} (valid when m*p >= M, which makes G elementary abelian and
// keeps all series denominators prime to p), the constraint becomes linear,
// and the whole constrained character sum is a Fourier sum over the dual
// group. Values are carried in the group ring Z[Z/p] (exponent vectors of
// zeta_p) and only mapped into Q(zeta_{4p}) at the very end, where the
// orthogonality defect of the group ring dies.

struct DpVariable {
    int constraint_coeff;    // coefficient of log x_i in the linear constraint
    LaurentSeries inv_scale; // weight is Psi(x * inv_scale)
    int count;               // number of identical variables of this kind
};

using Ring = std::vector<Int128>; // length p, exponent basis of Z[Z/p]

void ring_convolve(const Ring& u, const Ring& v, Ring& out, int p) {
    out.assign(static_cast<size_t>(p), 0);
    for (int i = 0; i < p; ++i) {
        if (u[static_cast<size_t>(i)] == 0) continue;
        for (int j = 0; j < p; ++j) {
            int k = i + j;
            if (k >= p) k -= p;
            out[static_cast<size_t>(k)] += u[static_cast<size_t>(i)] * v[static_cast<size_t>(j)];
        }
    }
}

struct DpTable {
    std::vector<Int128> data; // flat [p^va][p]
    int p;
    int va;

    Int128* at(long long g) { return data.data() + g * p; }
    const Int128* at(long long g) const { return data.data() + g * p; }
};

// forward DFT over each of the va group dimensions; character values are
// shifts in the exponent slot
void dp_dft(DpTable& t) {
    const int p = t.p;
    long long size = 1;
    for (int i = 0; i < t.va; ++i) size *= p;
    std::vector<Int128> fiber(static_cast<size_t>(p) * p);
    std::vector<Int128> out(static_cast<size_t>(p) * p);
    long long stride = 1;
    for (int d = 0; d < t.va; ++d) {
        for (long long base = 0; base < size; ++base) {
            if ((base / stride) % p != 0) continue;
            for (int j = 0; j < p; ++j)
                std::copy(t.at(base + j * stride), t.at(base + j * stride) + p,
                          fiber.begin() + static_cast<long>(j) * p);
            std::fill(out.begin(), out.end(), 0);
            for (int c = 0; c < p; ++c) {
                Int128* oc = out.data() + static_cast<long>(c) * p;
                for (int j = 0; j < p; ++j) {
                    const Int128* fj = fiber.data() + static_cast<long>(j) * p;
                    int rot = (c * j) % p;
                    for (int e = 0; e < p; ++e) {
                        int k = e + rot;
                        if (k >= p) k -= p;
                        oc[k] += fj[e];
                    }
                }
            }
            for (int c = 0; c < p; ++c)
                std::copy(out.begin() + static_cast<long>(c) * p,
                          out.begin() + static_cast<long>(c) * p + p, t.at(base + c * stride));
        }
        stride *= p;
    }
}

// log(1 + w) truncated mod t^M, for w with v(w) >= m
LaurentSeries truncated_log(const LaurentSeries& w, int M) {
    int p = w.prime();
    LaurentSeries acc = LaurentSeries::zero(p, M);
    if (w.is_zero()) return acc;
    LaurentSeries wk = LaurentSeries::from_int(p, 1, M - w.valuation());
    for (int k = 1; k * w.valuation() < M; ++k) {
        wk = (wk * w).truncate(M);
        if (wk.is_zero()) break;
        int sign = (k % 2 == 1) ? 1 : -1;
        LaurentSeries inv_k =
            LaurentSeries::from_int(p, sign, LaurentSeries::kExactPrecision) /
            LaurentSeries::from_int(p, k, LaurentSeries::kExactPrecision);
        acc = acc + inv_k * wk;
    }
    return acc;
}

ExactValue dp_group_sum(const GermParams& gp, const std::vector<DpVariable>& vars) {
    const int p = gp.p;
    const int m = gp.m;
    const int va = gp.va();
    const int M = gp.reduction_modulus();
    if (m * p < M)
        throw PreconditionError(
            "dp evaluator requires m*p >= m+v(a) (group not elementary abelian); use naive mode");

    long long gsize = 1;
    for (int i = 0; i < va; ++i) gsize *= p;

    // one table per distinct variable kind
    std::vector<DpTable> tables(vars.size());
    for (auto& t : tables) {
        t.p = p;
        t.va = va;
        t.data.assign(static_cast<size_t>(gsize) * p, 0);
    }

    // enumerate G once, fill the one-hot weight tables in log coordinates
    std::vector<int> digits(static_cast<size_t>(va), 0);
    while (true) {
        LaurentSeries w = LaurentSeries::from_coeffs(p, m, digits, M); // may be zero
        LaurentSeries x = LaurentSeries::from_int(p, 1, M) + w;
        LaurentSeries lg = truncated_log(w, M);
        long long g = 0;
        for (int i = va - 1; i >= 0; --i) g = g * p + lg.coeff(m + i).value;
        for (size_t k = 0; k < vars.size(); ++k) {
            int e = (x * vars[k].inv_scale).coeff(-1).value;
            tables[k].at(g)[e] += 1;
        }
        int i = 0;
        for (; i < va; ++i) {
            if (++digits[static_cast<size_t>(i)] < p) break;
            digits[static_cast<size_t>(i)] = 0;
        }
        if (i == va) break;
    }

    for (auto& t : tables) dp_dft(t);

    // character-index scaling by the constraint coefficients
    auto scaled_index = [&](long long c, int k) {
        long long out = 0, mult = 1, cc = c;
        for (int i = 0; i < va; ++i) {
            out += ((cc % p) * k % p) * mult;
            mult *= p;
            cc /= p;
        }
        return out;
    };

    Ring total(static_cast<size_t>(p), 0);
    Ring factor, next;
    for (long long c = 0; c < gsize; ++c) {
        bool first = true;
        for (size_t k = 0; k < vars.size(); ++k) {
            const Int128* f = tables[k].at(scaled_index(c, vars[k].constraint_coeff));
            Ring fv(f, f + p);
            for (int rep = 0; rep < vars[k].count; ++rep) {
                if (first) {
                    factor = fv;
                    first = false;
                } else {
                    ring_convolve(factor, fv, next, p);
                    factor.swap(next);
                }
            }
        }
        for (int e = 0; e < p; ++e) total[static_cast<size_t>(e)] += factor[static_cast<size_t>(e)];
    }

    // map Z[Z/p] -> Q(zeta_{4p}) and divide by |G|
    ExactValue s(p);
    for (int e = 0; e < p; ++e)
        if (total[static_cast<size_t>(e)] != 0)
            s += ExactValue::zeta_power(p, 4LL * e) * Rational(total[static_cast<size_t>(e)], 1);
    Rational inv_group(1);
    for (int i = 0; i < va; ++i) inv_group = inv_group * Rational(1, p);
    return s * inv_group;
}

// overall volume normalization shared by both modes:
// vol(t^m O)^{-1} * (per-variable cell volume q^{-M})^n applied to the raw
// constrained character sum
Rational j_sum_scale(const GermParams& gp, int nvars) {
    return Rational::int_pow(gp.p, gp.m - gp.reduction_modulus() * nvars);
}

LaurentSeries half_inverse_scale(const GermParams& gp) {
    // (2a)^{-1}
    int p = gp.p;
    return (LaurentSeries::from_int(p, 2, LaurentSeries::kExactPrecision) * gp.a).inverse();
}

ExactValue eval_J_naive(const GermParams& gp, long long budget) {
    const int p = gp.p;
    const int M = gp.reduction_modulus();
    DomainSpec d;
    d.reduction_modulus = M;
    LaurentSeries one = LaurentSeries::from_int(p, 1, LaurentSeries::kExactPrecision);
    for (int i = 0; i < gp.r; ++i) d.vars.push_back({one, gp.m});
    d.constraints.push_back({MultiPoly::monomial_minus_one(p, std::vector<int>(static_cast<size_t>(gp.r), 1)), M});
    LaurentSeries inv2a = half_inverse_scale(gp);
    ExactValue raw = integrate(p, d,
                               [&](const std::vector<LaurentSeries>& x) {
                                   LaurentSeries s = LaurentSeries::zero(p);
                                   for (const auto& xi : x) s = s + xi;
                                   return Psi_char(s * inv2a);
                               },
                               budget);
    // integrate() already carries q^{-M n}; restore vol(t^m O)^{-1}
    return raw * Rational::int_pow(p, gp.m);
}

ExactValue eval_J_dp(const GermParams& gp) {
    std::vector<DpVariable> vars = {{1, half_inverse_scale(gp), gp.r}};
    ExactValue s = dp_group_sum(gp, vars);
    return s * j_sum_scale(gp, gp.r);
}

ExactValue eval_I_naive(const GermParams& gp, long long budget) {
    const int p = gp.p;
    const int M = gp.reduction_modulus();
    const int ell = gp.r / 2;
    const bool odd = gp.r % 2 == 1;
    const int nvars = odd ? ell + 1 : ell;
    DomainSpec d;
    d.reduction_modulus = M;
    LaurentSeries one = LaurentSeries::from_int(p, 1, LaurentSeries::kExactPrecision);
    for (int i = 0; i < nvars; ++i) d.vars.push_back({one, gp.m});
    std::vector<int> exps(static_cast<size_t>(nvars), 2);
    if (odd) exps.back() = 1;
    d.constraints.push_back({MultiPoly::monomial_minus_one(p, exps), M});
    LaurentSeries inv2a = half_inverse_scale(gp);
    LaurentSeries two = LaurentSeries::from_int(p, 2, LaurentSeries::kExactPrecision);
    ExactValue raw = integrate(p, d,
                               [&](const std::vector<LaurentSeries>& x) {
                                   LaurentSeries s = LaurentSeries::zero(p);
                                   for (int i = 0; i < ell; ++i) s = s + two * x[static_cast<size_t>(i)];
                                   if (odd) s = s + x.back();
                                   return Psi_char(s * inv2a);
                               },
                               budget);
    return raw * Rational::int_pow(p, gp.m);
}

ExactValue eval_I_dp(const GermParams& gp) {
    const int ell = gp.r / 2;
    const bool odd = gp.r % 2 == 1;
    LaurentSeries inv2a = half_inverse_scale(gp);
    LaurentSeries inv_a = gp.a.inverse();
    std::vector<DpVariable> vars;
    if (ell > 0) vars.push_back({2, inv_a, ell}); // Psi(2 x / 2a) = Psi(x / a)
    if (odd) vars.push_back({1, inv2a, 1});
    ExactValue s = dp_group_sum(gp, vars);
    return s * j_sum_scale(gp, odd ? ell + 1 : ell);
}

} // namespace

ExactValue eval_J(const GermParams& gp, EvalMode mode, long long budget) {
    return mode == EvalMode::naive ? eval_J_naive(gp, budget) : eval_J_dp(gp);
}

ExactValue eval_I(const GermParams& gp, EvalMode mode, long long budget) {
    return mode == EvalMode::naive ? eval_I_naive(gp, budget) : eval_I_dp(gp);
}

ExactValue closed_J(const GermParams& gp) {
    const int p = gp.p;
    if (gp.r % p == 0) throw PreconditionError("closed_J: p divides r");
    ExactValue norm = q_half_power(p, -gp.va() * (gp.r + 1));
    ExactValue psi = Psi_char(LaurentSeries::from_int(p, gp.r) * half_inverse_scale(gp));
    ResidueElem sym_arg = ResidueElem(gp.r, p) / ResidueElem(2, p).pow(gp.r - 1);
    int sym = hilbert(LaurentSeries::from_int(p, sym_arg.value), gp.a.inverse());
    ExactValue gam = weil_gamma_power(gp.a.inverse(), gp.r - 1);
    return norm * psi * gam * Rational(sym);
}

ExactValue closed_I(const GermParams& gp) {
    const int p = gp.p;
    if (p <= 2 * gp.r + 1) throw PreconditionError("closed_I: requires p > 2r+1");
    const int half_count = (gp.r - 1) / 2;
    ExactValue norm = q_half_power(p, -gp.va() * (half_count + 2));
    ExactValue psi = Psi_char(LaurentSeries::from_int(p, gp.r) * half_inverse_scale(gp));
    LaurentSeries inv_a = gp.a.inverse();
    int sym = hilbert(LaurentSeries::from_int(p, gp.r), inv_a);
    int half_res = ResidueElem(2, p).inverse().value;
    if ((gp.r - 1) % 2 == 1) sym *= hilbert(LaurentSeries::from_int(p, half_res), inv_a);
    ExactValue gam = weil_gamma_power(inv_a, half_count);
    return norm * psi * gam * Rational(sym);
}

ExactValue ratio_prop(const GermParams& gp) {
    const int p = gp.p;
    if (p <= 2 * gp.r + 1) throw PreconditionError("ratio_prop: requires p > 2r+1");
    const int k = gp.r / 2;
    ExactValue norm = q_half_power(p, gp.va() * k); // |a|^{-k/2}
    ExactValue gam = weil_gamma_power(gp.a.inverse(), -k);
    return norm * gam * eval_J(gp, EvalMode::dp);
}

ExactValue germ_K(const GermParams& gp) {
    long long e = 1 + static_cast<long long>(gp.r) * (gp.r - 1) / 2;
    // |a|^{-e} = q^{e v(a)}; applied one factor of q at a time so the
    // coefficient reduction keeps pace with the growth
    ExactValue v = eval_J(gp, EvalMode::dp);
    for (long long i = 0; i < e * gp.va(); ++i) v = v * Rational(gp.p);
    return v;
}

ExactValue germ_L(const GermParams& gp) {
    const int p = gp.p;
    long long int_part = gp.r - 2 - count_c2(gp.r);
    int k = gp.r / 2;
    // |a|^{int_part + k/2}
    ExactValue norm = q_half_power(p, -gp.va() * static_cast<int>(2 * int_part + k));
    ExactValue gam = weil_gamma_power(gp.a.inverse(), -k);
    return norm * gam * eval_J(gp, EvalMode::dp);
}

ExactValue germ_L_via_K(const GermParams& gp) {
    const int p = gp.p;
    long long int_part = count_c1_exponent(gp.r);
    int k = gp.r / 2;
    ExactValue norm = q_half_power(p, -gp.va() * static_cast<int>(2 * int_part + k));
    ExactValue gam = weil_gamma_power(gp.a.inverse(), -k);
    return norm * gam * germ_K(gp);
}

long long count_c1_exponent(int r) { return static_cast<long long>(r) * r / 4; }

long long count_c2(int r) {
    return (static_cast<long long>(r) * r + 2LL * r - 3) / 4;
}

long long count_c2_direct(int r) {
    long long n = 0;
    for (int i = 1; i <= r; ++i)
        for (int j = i + 1; j <= r; ++j)
            if (i + j >= r + 1) ++n;
    for (int i = 1; i <= r; ++i)
        if (2 * i >= r + 1) ++n;
    return n - 1; // the entry Z = x_{r,r} is dependent
}

bool bracket_identities(int r) {
    long long c2 = count_c2(r);
    long long first = c2 - (r + 1) / 2 - count_c1_exponent(r);
    long long second = static_cast<long long>(r) * (r - 1) / 2 + 1 + (r - 2) - c2;
    return first == -1 && second == count_c1_exponent(r);
}

ResidueMatrix quadratic_form_matrix(int ell, int p) {
    ResidueMatrix a(static_cast<size_t>(ell),
                    std::vector<ResidueElem>(static_cast<size_t>(ell), ResidueElem(0, p)));
    for (int i = 0; i < ell; ++i)
        for (int j = 0; j < ell; ++j) a[static_cast<size_t>(i)][static_cast<size_t>(j)] = ResidueElem(i == j ? 3 : 2, p);
    return a;
}

std::pair<ResidueMatrix, std::vector<ResidueElem>> diagonalize_quadratic(int ell, int p) {
    if (p <= 2 * ell + 1) throw PreconditionError("diagonalize: requires p > 2*ell + 1");
    ResidueMatrix b = quadratic_form_matrix(ell, p);
    ResidueMatrix t(static_cast<size_t>(ell),
                    std::vector<ResidueElem>(static_cast<size_t>(ell), ResidueElem(0, p)));
    for (int i = 0; i < ell; ++i) t[static_cast<size_t>(i)][static_cast<size_t>(i)] = ResidueElem(1, p);
    for (int k = 0; k < ell; ++k) {
        ResidueElem pivot = b[static_cast<size_t>(k)][static_cast<size_t>(k)];
        if (pivot.is_zero()) throw PreconditionError("diagonalize: zero pivot");
        for (int j = k + 1; j < ell; ++j) {
            ResidueElem f = b[static_cast<size_t>(k)][static_cast<size_t>(j)] / pivot;
            if (f.is_zero()) continue;
            for (int i = 0; i < ell; ++i)
                b[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    b[static_cast<size_t>(i)][static_cast<size_t>(j)] - f * b[static_cast<size_t>(i)][static_cast<size_t>(k)];
            for (int i = 0; i < ell; ++i)
                b[static_cast<size_t>(j)][static_cast<size_t>(i)] =
                    b[static_cast<size_t>(j)][static_cast<size_t>(i)] - f * b[static_cast<size_t>(k)][static_cast<size_t>(i)];
            for (int i = 0; i < ell; ++i)
                t[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    t[static_cast<size_t>(i)][static_cast<size_t>(j)] - f * t[static_cast<size_t>(i)][static_cast<size_t>(k)];
        }
    }
    std::vector<ResidueElem> d;
    for (int i = 0; i < ell; ++i) d.push_back(b[static_cast<size_t>(i)][static_cast<size_t>(i)]);
    return {t, d};
}

namespace {

// truncated power series c0 + c1 s + c2 s^2 over F_p
struct Trunc3 {
    ResidueElem c0, c1, c2;

    Trunc3 operator*(const Trunc3& o) const {
        return {c0 * o.c0, c0 * o.c1 + c1 * o.c0, c0 * o.c2 + c1 * o.c1 + c2 * o.c0};
    }
    Trunc3 operator+(const Trunc3& o) const { return {c0 + o.c0, c1 + o.c1, c2 + o.c2}; }
    Trunc3 inv() const {
        ResidueElem d0 = c0.inverse();
        ResidueElem r1 = c1 * d0;
        return {d0, -(r1 * d0), (r1 * r1 - c2 * d0) * d0};
    }
};

Trunc3 delta_on_line(int ell, int p, const std::vector<int>& dir) {
    ResidueElem z(0, p);
    Trunc3 total{ResidueElem(2LL * ell, p), z, z};
    Trunc3 prod{ResidueElem(1, p), z, z};
    for (int i = 0; i < ell; ++i) {
        ResidueElem d(dir[static_cast<size_t>(i)], p);
        total = total + Trunc3{z, d * ResidueElem(2, p), z};
        prod = prod * Trunc3{ResidueElem(1, p), ResidueElem(2, p) * d, d * d}.inv();
    }
    return total + prod;
}

} // namespace

ResidueMatrix delta_quadratic_part(int ell, int p) {
    if (p <= 2 * ell + 1) throw PreconditionError("delta expansion: requires p > 2*ell + 1");
    ResidueMatrix a(static_cast<size_t>(ell),
                    std::vector<ResidueElem>(static_cast<size_t>(ell), ResidueElem(0, p)));
    ResidueElem inv2 = ResidueElem(2, p).inverse();
    std::vector<int> dir(static_cast<size_t>(ell), 0);
    std::vector<ResidueElem> qi(static_cast<size_t>(ell), ResidueElem(0, p));
    for (int i = 0; i < ell; ++i) {
        std::fill(dir.begin(), dir.end(), 0);
        dir[static_cast<size_t>(i)] = 1;
        qi[static_cast<size_t>(i)] = delta_on_line(ell, p, dir).c2;
        a[static_cast<size_t>(i)][static_cast<size_t>(i)] = qi[static_cast<size_t>(i)];
    }
    for (int i = 0; i < ell; ++i)
        for (int j = i + 1; j < ell; ++j) {
            std::fill(dir.begin(), dir.end(), 0);
            dir[static_cast<size_t>(i)] = 1;
            dir[static_cast<size_t>(j)] = 1;
            ResidueElem qij = delta_on_line(ell, p, dir).c2;
            ResidueElem off = (qij - qi[static_cast<size_t>(i)] - qi[static_cast<size_t>(j)]) * inv2;
            a[static_cast<size_t>(i)][static_cast<size_t>(j)] = off;
            a[static_cast<size_t>(j)][static_cast<size_t>(i)] = off;
        }
    return a;
}

ResidueElem delta_constant_term(int ell, int p) {
    std::vector<int> dir(static_cast<size_t>(ell), 0);
    if (ell > 0) dir[0] = 1;
    return delta_on_line(ell, p, dir).c0;
}

} // namespace germlab
