#pragma once

#include <optional>
#include <set>
#include <vector>

#include "qclocus/fp.hpp"
#include "qclocus/intops.hpp"
#include "qclocus/weierstrass.hpp"

namespace qclocus {

struct KodairaType {
    enum class Class { I0, Im, II, III, IV, I0Star, ImStar, IVStar, IIIStar, IIStar };
    Class cls = Class::I0;
    long m = 0; // index for Im / ImStar

    friend bool operator==(const KodairaType& a, const KodairaType& b) { return a.cls == b.cls && a.m == b.m; }

    std::string str() const {
        switch (cls) {
            case Class::I0: return "I0";
            case Class::Im: return "I" + std::to_string(m);
            case Class::II: return "II";
            case Class::III: return "III";
            case Class::IV: return "IV";
            case Class::I0Star: return "I0*";
            case Class::ImStar: return "I" + std::to_string(m) + "*";
            case Class::IVStar: return "IV*";
            case Class::IIIStar: return "III*";
            case Class::IIStar: return "II*";
        }
        return "?";
    }
};

struct ReductionProfile {
    Int prime;
    KodairaType type;
    long tamagawa = 1;
    std::optional<bool> split; // multiplicative reduction only
    long v_delta_min = 0;
    ModelTransform minimal_transform; // from the caller's model to the minimal one analysed
};

namespace tate_detail {

struct IntModel {
    Int a1, a2, a3, a4, a6;

    static IntModel from(const WeierstrassModel& e) {
        if (!e.is_integral()) throw ContractError("Tate: model must be integral");
        return {e.a1().num(), e.a2().num(), e.a3().num(), e.a4().num(), e.a6().num()};
    }

    WeierstrassModel to_model() const {
        return WeierstrassModel(Rational(a1), Rational(a2), Rational(a3), Rational(a4), Rational(a6));
    }

    Int b2() const { return a1 * a1 + 4 * a2; }
    Int b4() const { return 2 * a4 + a1 * a3; }
    Int b6() const { return a3 * a3 + 4 * a6; }
    Int b8() const { return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4; }
    Int delta() const {
        Int B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
        return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
    }

    /// Integral translation x -> x + r, y -> y + s x + t (u = 1).
    IntModel translated(const Int& r, const Int& s, const Int& t) const {
        IntModel n;
        n.a1 = a1 + 2 * s;
        n.a2 = a2 - s * a1 + 3 * r - s * s;
        n.a3 = a3 + r * a1 + 2 * t;
        n.a4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
        n.a6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
        return n;
    }

    /// Scale down by u = p (requires the divisibilities established by the
    /// non-minimality branch).
    IntModel scaled_down(const Int& p) const {
        IntModel n;
        Int p2 = p * p, p3 = p2 * p;
        n.a1 = a1 / p;
        n.a2 = a2 / p2;
        n.a3 = a3 / p3;
        n.a4 = a4 / (p2 * p2);
        n.a6 = a6 / (p3 * p3);
        return n;
    }
};

inline uint64_t fp_of(const Int& a, const FpCtx& F) {
    return mpz_fdiv_ui(a.get_mpz_t(), F.p);
}

inline long val(const Int& a, const Int& p) {
    if (a == 0) return 1L << 30; // effectively infinite
    return int_valuation(a, p);
}

/// Roots in F_p of a polynomial given by small integer coefficients (lowest
/// degree first), via gcd with x^p - x and splitting; p odd or p = 2.
inline std::vector<uint64_t> roots_mod_p(const std::vector<Int>& coeffs, const FpCtx& F) {
    FpPoly f(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) f[i] = fp_of(coeffs[i], F);
    fpops::trim(f);
    if (fpops::deg(f) < 1) return {};
    if (F.p <= 3) {
        std::vector<uint64_t> out;
        for (uint64_t x = 0; x < F.p; ++x) {
            uint64_t acc = 0;
            for (size_t i = f.size(); i-- > 0;) acc = F.add(F.mul(acc, x), f[i]);
            if (acc == 0) out.push_back(x);
        }
        return out;
    }
    // gcd(f, x^p - x) isolates the F_p-rational roots
    FpPoly xp = fpops::powmod(F, FpPoly{0, 1}, F.p, f);
    FpPoly lin = fpops::gcd(F, fpops::sub(F, xp, FpPoly{0, 1}), f);
    std::vector<uint64_t> out;
    // lin is squarefree and splits into linear factors; peel them off
    std::vector<FpPoly> work{lin};
    std::mt19937_64 rng(0xabcdef12);
    while (!work.empty()) {
        FpPoly g = work.back();
        work.pop_back();
        if (fpops::deg(g) < 1) continue;
        if (fpops::deg(g) == 1) {
            out.push_back(F.mul(F.neg(g[0]), F.inv(g[1])));
            continue;
        }
        for (;;) {
            uint64_t shift = rng() % F.p;
            // gcd((x + shift)^((p-1)/2) - 1, g)
            FpPoly base{shift, 1};
            FpPoly h = fpops::powmod(F, base, (F.p - 1) / 2, g);
            if (!h.empty()) h[0] = F.sub(h[0], 1);
            fpops::trim(h);
            FpPoly d = fpops::gcd(F, h, g);
            if (fpops::deg(d) > 0 && fpops::deg(d) < fpops::deg(g)) {
                work.push_back(d);
                work.push_back(fpops::divmod(F, g, d).first);
                break;
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Distinct-root test and F_p-root count for A Y^2 + B Y + C with A invertible.
struct QuadraticInfo {
    bool has_double_root;     // over the algebraic closure
    uint64_t double_root = 0; // set when has_double_root
    int fp_roots = 0;         // count of roots in F_p (distinct case)
};

inline QuadraticInfo quadratic_mod_p(const Int& A, const Int& B, const Int& C, const FpCtx& F) {
    QuadraticInfo out{};
    uint64_t a = fp_of(A, F), b = fp_of(B, F), c = fp_of(C, F);
    if (a == 0) throw Error("quadratic_mod_p: leading coefficient vanished (internal)");
    if (F.p == 2) {
        if (b == 0) {
            out.has_double_root = true;
            out.double_root = F.mul(c, F.inv(a)); // Frobenius fixes F_2
            return out;
        }
        for (uint64_t y = 0; y < 2; ++y)
            if (F.add(F.mul(a, F.mul(y, y)), F.add(F.mul(b, y), c)) == 0) ++out.fp_roots;
        return out;
    }
    uint64_t disc = F.sub(F.mul(b, b), F.mul(4 % F.p, F.mul(a, c)));
    if (disc == 0) {
        out.has_double_root = true;
        out.double_root = F.mul(F.neg(b), F.inv(F.mul(2, a)));
        return out;
    }
    out.fp_roots = F.pow(disc, (F.p - 1) / 2) == 1 ? 2 : 0;
    return out;
}

struct TateOutcome {
    bool minimal = true;
    ModelTransform change; // translations used; includes the u = p step when non-minimal
    KodairaType type;
    long c = 1;
    std::optional<bool> split;
    long vdelta = 0;
};

/// One pass of Tate's algorithm at p over an integral model.  When the model
/// is not minimal at p, outcome.minimal is false and outcome.change carries
/// the transform to apply before re-running.
inline TateOutcome tate_once(const IntModel& input, const Int& p) {
    if (!is_prime(p)) throw ContractError("Tate: modulus must be prime");
    if (mpz_sizeinbase(p.get_mpz_t(), 2) > 62) throw CapabilityError("Tate: prime too large");
    FpCtx F{p.get_ui()};
    IntModel m = input;
    TateOutcome out;
    auto translate = [&](const Int& r, const Int& s, const Int& t) {
        m = m.translated(r, s, t);
        out.change = out.change.then(ModelTransform{Rational(1), Rational(r), Rational(s), Rational(t)});
    };

    Int delta = m.delta();
    if (delta == 0) throw ContractError("Tate: singular model");
    long n = val(delta, p);
    out.vdelta = n;
    if (n == 0) {
        out.type = {KodairaType::Class::I0, 0};
        out.c = 1;
        return out;
    }

    // move the singular point of the reduction to the origin
    if (p == 2) {
        bool found = false;
        for (uint64_t x0 = 0; x0 < 2 && !found; ++x0)
            for (uint64_t y0 = 0; y0 < 2 && !found; ++y0) {
                Int X(static_cast<unsigned long>(x0)), Y(static_cast<unsigned long>(y0));
                Int f = Y * Y + m.a1 * X * Y + m.a3 * Y - X * X * X - m.a2 * X * X - m.a4 * X - m.a6;
                Int fx = m.a1 * Y - 3 * X * X - 2 * m.a2 * X - m.a4;
                Int fy = 2 * Y + m.a1 * X + m.a3;
                if (mpz_even_p(f.get_mpz_t()) && mpz_even_p(fx.get_mpz_t()) && mpz_even_p(fy.get_mpz_t())) {
                    translate(X, 0, Y);
                    found = true;
                }
            }
        if (!found) throw Error("Tate: singular point not found mod 2 (internal)");
    } else {
        // x0 is the multiple root of 4x^3 + b2 x^2 + 2 b4 x + b6 mod p
        std::vector<Int> phi{m.b6(), 2 * m.b4(), m.b2(), Int(4)};
        std::vector<Int> dphi{2 * m.b4(), 2 * m.b2(), Int(12)};
        FpPoly fphi(4), fdphi(3);
        for (int i = 0; i < 4; ++i) fphi[i] = fp_of(phi[i], F);
        for (int i = 0; i < 3; ++i) fdphi[i] = fp_of(dphi[i], F);
        fpops::trim(fphi);
        fpops::trim(fdphi);
        FpPoly g = fpops::gcd(F, fphi, fdphi);
        std::vector<Int> gc;
        for (auto c : g) gc.push_back(Int(static_cast<unsigned long>(c)));
        auto roots = roots_mod_p(gc, F);
        if (roots.empty()) throw Error("Tate: singular point not found (internal)");
        Int x0(static_cast<unsigned long>(roots.front()));
        Int inv2(static_cast<unsigned long>(F.inv(2)));
        Int y0 = ((-(m.a1 * x0 + m.a3) % p) * inv2) % p;
        if (y0 < 0) y0 += p;
        translate(x0, 0, y0);
    }

    // multiplicative reduction: tangent cone T^2 + a1 T - a2 at the node
    if (val(m.b2(), p) == 0) {
        bool split;
        if (p == 2) {
            split = mpz_even_p(m.a2.get_mpz_t());
        } else {
            uint64_t b2 = fp_of(m.b2(), F);
            split = F.pow(b2, (F.p - 1) / 2) == 1;
        }
        out.type = {KodairaType::Class::Im, n};
        out.split = split;
        out.c = split ? n : (n % 2 == 0 ? 2 : 1);
        return out;
    }

    if (val(m.a6, p) < 2) {
        out.type = {KodairaType::Class::II, 0};
        out.c = 1;
        return out;
    }
    if (val(m.b8(), p) < 3) {
        out.type = {KodairaType::Class::III, 0};
        out.c = 2;
        return out;
    }
    if (val(m.b6(), p) < 3) {
        auto q = quadratic_mod_p(Int(1), m.a3 / p, -(m.a6 / (p * p)), F);
        out.type = {KodairaType::Class::IV, 0};
        out.c = q.fp_roots == 2 ? 3 : 1;
        return out;
    }

    // arrange p | a1, a2; p^2 | a3, a4; p^3 | a6
    if (p == 2) {
        Int s = mpz_even_p(m.a2.get_mpz_t()) ? Int(0) : Int(1);
        translate(0, s, 0);
        Int half_a3 = m.a3 / 2;
        Int t = mpz_even_p(half_a3.get_mpz_t()) ? Int(0) : Int(1); // a3 + 2t = 0 mod 4
        translate(0, 0, t);
        // unlike odd p, v(b6) >= 3 leaves v(a6) >= 1 only; push a6 to v >= 3
        // with the residual freedom t -> t + 2 (which keeps v(a3') >= 2)
        if (val(m.a6, p) == 2) translate(0, 0, 2);
    } else {
        Int inv2(static_cast<unsigned long>(F.inv(2)));
        Int s = ((-m.a1 % p) * inv2) % p;
        translate(0, s, 0);
        Int p2 = p * p;
        // -a3/2 mod p^2
        Int inv2_p2;
        mpz_invert(inv2_p2.get_mpz_t(), Int(2).get_mpz_t(), p2.get_mpz_t());
        Int t = ((-m.a3 % p2) * inv2_p2) % p2;
        translate(0, 0, t);
    }
    if (val(m.a1, p) < 1 || val(m.a2, p) < 1 || val(m.a3, p) < 2 || val(m.a4, p) < 2 || val(m.a6, p) < 3)
        throw Error("Tate: normalisation divisibilities failed (internal)");

    // P(T) = T^3 + a_{2,1} T^2 + a_{4,2} T + a_{6,3} mod p
    Int A21 = m.a2 / p, A42 = m.a4 / (p * p), A63 = m.a6 / (p * p * p);
    auto proots = roots_mod_p({A63, A42, A21, Int(1)}, F);
    // multiplicity analysis via synthetic division at each root
    auto multiplicity = [&](uint64_t r) {
        FpPoly f{fp_of(A63, F), fp_of(A42, F), fp_of(A21, F), 1};
        int mult = 0;
        for (;;) {
            // synthetic division of f by (x - r); carry ends as the remainder
            FpPoly q(f.size() - 1);
            uint64_t carry = 0;
            for (size_t i = f.size(); i-- > 0;) {
                carry = F.add(F.mul(carry, r), f[i]);
                if (i > 0) q[i - 1] = carry;
            }
            if (carry != 0) break;
            ++mult;
            f = q;
            if (f.size() <= 1) break;
        }
        return mult;
    };

    int max_mult = 0;
    uint64_t mult_root = 0;
    for (auto r : proots) {
        int mu = multiplicity(r);
        if (mu > max_mult) {
            max_mult = mu;
            mult_root = r;
        }
    }
    // A multiple root over F_p-bar of a cubic with F_p coefficients is
    // F_p-rational (it is a root of the gcd with the derivative, which has
    // degree <= 1 unless the cubic is a p-th-power pattern handled below).
    if (max_mult <= 1) {
        // guard: the cubic may have a multiple root outside F_p only if it
        // has no F_p root at all with multiplicity; check discriminant
        Int disc = 18 * A21 * A42 * A63 - 4 * A21 * A21 * A21 * A63 + A21 * A21 * A42 * A42 -
                   4 * A42 * A42 * A42 - 27 * A63 * A63;
        if (val(disc, p) == 0) {
            out.type = {KodairaType::Class::I0Star, 0};
            out.c = 1 + static_cast<long>(proots.size());
            return out;
        }
        throw Error("Tate: multiple root of the cubic not rational (internal)");
    }

    if (max_mult == 2) {
        // I_m* chain
        translate(p * Int(static_cast<unsigned long>(mult_root)), 0, 0);
        Int pj1 = p * p; // p^(j+1) with j = 1
        long j = 1;
        for (;;) {
            Int p2j2 = pj1 * pj1; // p^(2j+2)
            auto qy = quadratic_mod_p(Int(1), m.a3 / pj1, -(m.a6 / p2j2), F);
            if (!qy.has_double_root) {
                out.type = {KodairaType::Class::ImStar, 2 * j - 1};
                out.c = 2 + qy.fp_roots;
                return out;
            }
            translate(0, 0, pj1 * Int(static_cast<unsigned long>(qy.double_root)));
            auto qx = quadratic_mod_p(m.a2 / p, m.a4 / (pj1 * p), m.a6 / (p2j2 * p), F);
            if (!qx.has_double_root) {
                out.type = {KodairaType::Class::ImStar, 2 * j};
                out.c = 2 + qx.fp_roots;
                return out;
            }
            translate(pj1 * Int(static_cast<unsigned long>(qx.double_root)), 0, 0);
            ++j;
            pj1 *= p;
        }
    }

    // triple root
    translate(p * Int(static_cast<unsigned long>(mult_root)), 0, 0);
    {
        Int p2 = p * p, p4 = p2 * p2;
        auto qy = quadratic_mod_p(Int(1), m.a3 / p2, -(m.a6 / p4), F);
        if (!qy.has_double_root) {
            out.type = {KodairaType::Class::IVStar, 0};
            out.c = qy.fp_roots == 2 ? 3 : 1;
            return out;
        }
        translate(0, 0, p2 * Int(static_cast<unsigned long>(qy.double_root)));
    }
    if (val(m.a4, p) < 4) {
        out.type = {KodairaType::Class::IIIStar, 0};
        out.c = 2;
        return out;
    }
    if (val(m.a6, p) < 6) {
        out.type = {KodairaType::Class::IIStar, 0};
        out.c = 1;
        return out;
    }

    // non-minimal at p: scale down by u = p after the accumulated translations
    out.minimal = false;
    out.change = out.change.then(ModelTransform{Rational(p), Rational(0), Rational(0), Rational(0)});
    return out;
}

} // namespace tate_detail

/// Kodaira type, Tamagawa number and split flag of a model minimal at l.
/// Raises ContractError when the model is not minimal at l.
inline ReductionProfile tate_local(const WeierstrassModel& e_min, const Int& ell) {
    auto m = tate_detail::IntModel::from(e_min);
    auto out = tate_detail::tate_once(m, ell);
    if (!out.minimal) throw ContractError("tate_local: model is not minimal at " + ell.get_str());
    ReductionProfile p;
    p.prime = ell;
    p.type = out.type;
    p.tamagawa = out.c;
    p.split = out.split;
    p.v_delta_min = out.vdelta;
    p.minimal_transform = ModelTransform::identity();
    return p;
}

/// Globally minimal model together with the transform from the input model.
/// The result is the canonical reduced form: a1, a3 in {0,1}, a2 in {-1,0,1}.
inline std::pair<WeierstrassModel, ModelTransform> minimal_model(const WeierstrassModel& e) {
    ModelTransform total = ModelTransform::identity();
    WeierstrassModel cur = e;

    // integralize
    if (!cur.is_integral()) {
        Int d = 1;
        for (const Rational& a : {cur.a1(), cur.a2(), cur.a3(), cur.a4(), cur.a6()})
            mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), a.den().get_mpz_t());
        ModelTransform T{Rational(Int(1), d), Rational(0), Rational(0), Rational(0)};
        cur = apply_transform(cur, T).image;
        total = total.then(T);
    }

    // per-prime minimisation
    for (auto& [p, v] : factor_integer(cur.invariants().delta.num())) {
        if (v < 12) continue;
        for (;;) {
            auto out = tate_detail::tate_once(tate_detail::IntModel::from(cur), p);
            if (out.minimal) break;
            cur = apply_transform(cur, out.change).image;
            total = total.then(out.change);
        }
    }

    // canonical reduced form
    auto fdiv = [](const Int& a, const Int& b) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return q;
    };
    {
        Int s = -fdiv(cur.a1().num(), Int(2));
        ModelTransform T{Rational(1), Rational(0), Rational(s), Rational(0)};
        cur = apply_transform(cur, T).image;
        total = total.then(T);
    }
    {
        Int a2 = cur.a2().num();
        Int mod3 = ((a2 % 3) + 3) % 3;
        Int target = mod3 == 2 ? Int(-1) : mod3;
        Int r = (target - a2) / 3;
        ModelTransform T{Rational(1), Rational(r), Rational(0), Rational(0)};
        cur = apply_transform(cur, T).image;
        total = total.then(T);
    }
    {
        Int t = -fdiv(cur.a3().num(), Int(2));
        ModelTransform T{Rational(1), Rational(0), Rational(0), Rational(t)};
        cur = apply_transform(cur, T).image;
        total = total.then(T);
    }
    return {cur, total};
}

/// Number of smooth affine F_l-points of the reduction, by enumeration.
inline long count_affine_smooth_points_mod_l(const WeierstrassModel& e_min, const Int& ell) {
    if (!is_prime(ell)) throw ContractError("count_affine_smooth_points_mod_l: modulus must be prime");
    if (ell > 65536) throw CapabilityError("count_affine_smooth_points_mod_l: prime too large for enumeration");
    auto m = tate_detail::IntModel::from(e_min);
    FpCtx F{ell.get_ui()};
    uint64_t a1 = tate_detail::fp_of(m.a1, F), a2 = tate_detail::fp_of(m.a2, F), a3 = tate_detail::fp_of(m.a3, F),
             a4 = tate_detail::fp_of(m.a4, F), a6 = tate_detail::fp_of(m.a6, F);
    long count = 0;
    for (uint64_t x = 0; x < F.p; ++x)
        for (uint64_t y = 0; y < F.p; ++y) {
            uint64_t x2 = F.mul(x, x), x3 = F.mul(x2, x);
            uint64_t f = F.sub(F.add(F.mul(y, y), F.add(F.mul(a1, F.mul(x, y)), F.mul(a3, y))),
                               F.add(F.add(x3, F.mul(a2, x2)), F.add(F.mul(a4, x), a6)));
            if (f != 0) continue;
            uint64_t fx = F.sub(F.mul(a1, y), F.add(F.add(F.mul(3 % F.p, x2), F.mul(F.mul(2 % F.p, a2), x)), a4));
            uint64_t fy = F.add(F.add(F.mul(2 % F.p, y), F.mul(a1, x)), a3);
            if (fx != 0 || fy != 0) ++count;
        }
    return count;
}

/// Finite set of rational values; the local height value sets.
using ValueSet = std::set<Rational>;

/// The table of W_l^min values by Kodaira type and Tamagawa number for a
/// model minimal at l.  good_point_count is consulted only for type I0.
inline ValueSet w_min(const ReductionProfile& profile, long good_point_count, const Int& ell) {
    using C = KodairaType::Class;
    const KodairaType& k = profile.type;
    long c = profile.tamagawa;
    ValueSet w;
    switch (k.cls) {
        case C::I0:
            if (c != 1) throw ContractError("w_min: type I0 requires c = 1");
            if (good_point_count > 0) w.insert(Rational(0));
            return w;
        case C::Im: {
            if (!profile.split.has_value()) throw ContractError("w_min: multiplicative type needs split flag");
            long m = k.m;
            if (*profile.split) {
                if (c != m) throw ContractError("w_min: split Im requires c = m");
                long start = ell == 2 ? 1 : 0;
                for (long i = start; i <= m / 2; ++i) w.insert(Rational(-i * (m - i), 2 * m));
                return w;
            }
            if (m % 2 == 1) {
                if (c != 1) throw ContractError("w_min: non-split Im (m odd) requires c = 1");
                w.insert(Rational(0));
                return w;
            }
            if (c != 2) throw ContractError("w_min: non-split Im (m even) requires c = 2");
            w.insert(Rational(0));
            w.insert(Rational(-m, 8));
            return w;
        }
        case C::II:
            if (c != 1) throw ContractError("w_min: type II requires c = 1");
            w.insert(Rational(0));
            return w;
        case C::III:
            if (c != 2) throw ContractError("w_min: type III requires c = 2");
            w.insert(Rational(0));
            w.insert(Rational(-1, 4));
            return w;
        case C::IV:
            if (c == 1) {
                w.insert(Rational(0));
                return w;
            }
            if (c == 3) {
                w.insert(Rational(0));
                w.insert(Rational(-1, 3));
                return w;
            }
            throw ContractError("w_min: type IV requires c in {1, 3}");
        case C::I0Star:
            if (c == 1) {
                w.insert(Rational(0));
                return w;
            }
            if (c == 2 || c == 4) {
                w.insert(Rational(0));
                w.insert(Rational(-1, 2));
                return w;
            }
            throw ContractError("w_min: type I0* requires c in {1, 2, 4}");
        case C::ImStar:
            if (c == 2) {
                w.insert(Rational(0));
                w.insert(Rational(-1, 2));
                return w;
            }
            if (c == 4) {
                w.insert(Rational(0));
                w.insert(Rational(-1, 2));
                w.insert(Rational(-(k.m + 4), 8));
                return w;
            }
            throw ContractError("w_min: type Im* requires c in {2, 4}");
        case C::IVStar:
            if (c == 1) {
                w.insert(Rational(0));
                return w;
            }
            if (c == 3) {
                w.insert(Rational(0));
                w.insert(Rational(-2, 3));
                return w;
            }
            throw ContractError("w_min: type IV* requires c in {1, 3}");
        case C::IIIStar:
            if (c != 2) throw ContractError("w_min: type III* requires c = 2");
            w.insert(Rational(0));
            w.insert(Rational(-3, 4));
            return w;
        case C::IIStar:
            if (c != 1) throw ContractError("w_min: type II* requires c = 1");
            w.insert(Rational(0));
            return w;
    }
    throw ContractError("w_min: unrecognised Kodaira type");
}

/// W_l^st = W_l^min + v_l(Delta_min)/12; computed through the minimal model.
inline ValueSet w_st(const WeierstrassModel& e, const Int& ell) {
    auto [emin, T] = minimal_model(e);
    ReductionProfile profile = tate_local(emin, ell);
    profile.minimal_transform = T;
    long good_count = 1;
    if (profile.type.cls == KodairaType::Class::I0 && ell < 5)
        good_count = count_affine_smooth_points_mod_l(emin, ell);
    ValueSet base = w_min(profile, good_count, ell);
    Rational shift(profile.v_delta_min, 12);
    ValueSet out;
    for (const auto& v : base) out.insert(v + shift);
    return out;
}

} // namespace qclocus
