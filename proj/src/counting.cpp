#include "stsrank/counting.hpp"

#include "stsrank/components.hpp"
#include "stsrank/error.hpp"

#include <string>
#include <vector>

namespace stsrank {

namespace {

BigCount q_power(int q, unsigned e)
{
    return pow_big(BigCount(q), e);
}

// M(M-1)/6 for the number of lines, avoiding overflow for large M.
std::uint64_t line_count(std::uint64_t m)
{
    const unsigned __int128 prod = static_cast<unsigned __int128>(m) * (m - 1);
    return static_cast<std::uint64_t>(prod / 6);
}

BigCount checked_divide(const BigCount& num, const BigCount& den, const char* what)
{
    if (den == 0 || num % den != 0)
        throw ConsistencyError(std::string(what) + " is not an exact integer quotient");
    return num / den;
}

} // namespace

BigCount group_order(GroupKind kind, unsigned dim, int q)
{
    if (dim < 1)
        throw ParameterError("group dimension must be at least 1");
    if (kind == GroupKind::PGL && q != 2)
        throw ParameterError("PGL is supported over GF(2) only");
    if (kind == GroupKind::AGL && q != 3)
        throw ParameterError("AGL is supported over GF(3) only");
    const BigCount qd = q_power(q, dim);
    BigCount order = 1;
    for (unsigned i = 0; i < dim; ++i)
        order *= qd - q_power(q, i);
    if (kind == GroupKind::AGL)
        order *= qd;
    return order;
}

BigCount aut_code_order(const CodeSpec& spec)
{
    const unsigned d = spec.n() - spec.t();
    const std::uint64_t T = spec.T();
    if (spec.binary())
        return factorial_big(T) * pow_big(factorial_big(T + 1), spec.M()) * group_order(GroupKind::PGL, d, 2);
    return pow_big(factorial_big(T), spec.M()) * group_order(GroupKind::AGL, d, 3);
}

BigCount aut_sts_upper(const CodeSpec& spec)
{
    const unsigned d = spec.n() - spec.t();
    const std::uint64_t T = spec.T();
    if (spec.binary())
        return factorial_big(T) * pow_big(factorial_big(T + 1), d + 1) * group_order(GroupKind::PGL, d, 2);
    return pow_big(factorial_big(T), d + 1) * group_order(GroupKind::AGL, d, 3);
}

BigCount formula_distinct(const CodeSpec& spec, const Limits& limits)
{
    const std::uint64_t T = spec.T();
    const std::uint64_t M = spec.M();
    const std::uint64_t lines = line_count(M);

    struct Need {
        CountKind kind;
        std::uint64_t order;
    };
    std::vector<Need> needs;
    needs.push_back({CountKind::N1, T});
    if (spec.binary())
        needs.push_back({CountKind::N2, T + 1});
    if (lines > 0)
        needs.push_back({CountKind::N3, spec.binary() ? T + 1 : T});

    std::vector<BigCount> values;
    std::string missing;
    for (const auto& need : needs) {
        try {
            values.push_back(catalog_count(need.kind, need.order, limits).value);
        } catch (const UnknownConstantError&) {
            if (!missing.empty())
                missing += ", ";
            missing += to_string(need.kind) + "(" + std::to_string(need.order) + ")";
            values.emplace_back(0);
        }
    }
    if (!missing.empty())
        throw UnknownConstantError("s for " + spec.label() + " needs unknown constants: " + missing);

    if (spec.binary()) {
        BigCount s = values[0] * pow_big(values[1] * factorial_big(T), M);
        if (lines > 0)
            s *= pow_big(values[2], lines);
        return s;
    }
    BigCount s = pow_big(values[0], M);
    if (lines > 0)
        s *= pow_big(values[1], lines);
    return s;
}

BigCount formula_classical(Field field, unsigned n)
{
    if (n < 2)
        throw ParameterError("classical count needs n >= 2");
    if (field == Field::Binary) {
        if (n > 40)
            throw ResourceError("classical count exponent too large");
        return pow_big(BigCount(2), (std::uint64_t{1} << (n - 1)) - n);
    }
    if (n > 20)
        throw ResourceError("classical count exponent too large");
    const BigCount num = pow_big(BigCount(6), static_cast<std::uint64_t>(q_power(3, n - 1)));
    return checked_divide(num, 2 * q_power(3, n), "6^(3^(n-1)) / (2*3^n)");
}

BigCount formula_exact_rank_t1(Field field, unsigned n, const Limits& limits)
{
    const CodeSpec spec = CodeSpec::make(static_cast<int>(field), n, 1);
    return formula_distinct(spec, limits) - formula_classical(field, n);
}

BigCount ternary_classical_stabilizer_order(unsigned n)
{
    if (n < 2)
        throw ParameterError("stabilizer order needs n >= 2");
    return checked_divide(2 * group_order(GroupKind::AGL, n, 3), q_power(3, n) - 1,
                          "2|AGL(n,3)| / (3^n - 1)");
}

BoundsReport iso_bounds(const CodeSpec& spec, const Limits& limits)
{
    BoundsReport r;
    r.distinct = formula_distinct(spec, limits);
    r.autCode = aut_code_order(spec);
    r.autLower = 1;
    r.autUpper = aut_sts_upper(spec);
    r.lowerRational = BigRational(r.distinct, r.autCode);

    // The cancelled right-hand side: s / (per-group factor)^(M - n + t - 1).
    const std::int64_t e = static_cast<std::int64_t>(spec.M()) - spec.n() + spec.t() - 1;
    const BigCount groupFactor = spec.binary() ? factorial_big(spec.T() + 1) : factorial_big(spec.T());
    if (e >= 0)
        r.upperRational = BigRational(r.distinct, pow_big(groupFactor, static_cast<std::uint64_t>(e)));
    else
        r.upperRational = BigRational(r.distinct * pow_big(groupFactor, static_cast<std::uint64_t>(-e)));

    if (r.upperRational != r.lowerRational * BigRational(r.autUpper))
        throw ConsistencyError("cancelled upper bound disagrees with U*s/|Aut C| for " + spec.label());

    r.lowerInt = ceil_of(r.lowerRational);
    r.upperInt = floor_of(r.upperRational);
    return r;
}

BigCount iso_bounds_exact_rank(const CodeSpec& spec, bool refined, const Limits& limits)
{
    if (refined && spec.t() != 1)
        throw ParameterError("the refined exact-rank bound applies at t = 1 only");

    const BoundsReport at = iso_bounds(spec, limits);
    BigRational diff;
    if (spec.t() >= 2) {
        const CodeSpec below = CodeSpec::make(spec.prime(), spec.n(), spec.t() - 1);
        diff = at.lowerRational - iso_bounds(below, limits).upperRational;
    } else if (!refined) {
        diff = at.lowerRational - 1;
    } else {
        // The classical copies form one orbit; their share of the mass is cl / |Aut C|.
        diff = at.lowerRational - BigRational(formula_classical(spec.field(), spec.n()), at.autCode);
    }
    const BigCount c = ceil_of(diff);
    return c < 0 ? BigCount(0) : c;
}

} // namespace stsrank
