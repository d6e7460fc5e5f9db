#pragma once

// Closed-form counts and isomorphism-class bounds, all in exact arithmetic.

#include "stsrank/bigint.hpp"
#include "stsrank/config.hpp"
#include "stsrank/field.hpp"

namespace stsrank {

enum class GroupKind { PGL, AGL };

/// |PGL(d,2)| = prod_{i<d} (2^d - 2^i);  |AGL(d,3)| = 3^d prod_{i<d} (3^d - 3^i).
/// Only PGL over GF(2) and AGL over GF(3) are supported.
BigCount group_order(GroupKind kind, unsigned dim, int q);

/// Order of the wreath-product group acting on C_{n,t}:
/// binary T! ((T+1)!)^M |PGL(n-t,2)|, ternary (T!)^M |AGL(n-t,3)|.
BigCount aut_code_order(const CodeSpec& spec);

/// Common upper bound U on |Aut S| for systems S in the weight-3 design:
/// binary T! ((T+1)!)^(n-t+1) |PGL(n-t,2)|, ternary (T!)^(n-t+1) |AGL(n-t,3)|.
BigCount aut_sts_upper(const CodeSpec& spec);

/// Number of distinct STS inside the weight-3 design of C_{n,t}:
/// binary N1(T) (N2(T+1) T!)^M N3(T+1)^(M(M-1)/6), ternary N1(T)^M N3(T)^(M(M-1)/6).
/// Throws UnknownConstantError naming every missing constant.
BigCount formula_distinct(const CodeSpec& spec, const Limits& limits = {});

/// Classical copies (minimal rank) inside the t = 1 code:
/// binary 2^(2^(n-1) - n), ternary 6^(3^(n-1)) / (2 * 3^n).
BigCount formula_classical(Field field, unsigned n);

/// formula_distinct at t = 1 minus formula_classical.
BigCount formula_exact_rank_t1(Field field, unsigned n, const Limits& limits = {});

/// Order of the stabilizer in Aut C_{n,1} (ternary) of one classical copy:
/// 2 |AGL(n,3)| / (3^n - 1).
BigCount ternary_classical_stabilizer_order(unsigned n);

struct BoundsReport {
    BigRational lowerRational; // s / |Aut C|
    BigRational upperRational; // U s / |Aut C|, in cancelled form
    BigCount lowerInt;         // ceiling
    BigCount upperInt;         // floor
    BigCount distinct;         // s
    BigCount autCode;          // |Aut C|
    BigCount autLower;         // u = 1
    BigCount autUpper;         // U
};

/// Mass-formula bounds on the number of isomorphism classes with rank at most
/// v - (n - t) - 1 (binary: 2^n - 1 - n + t; ternary: 3^n - 1 - n + t).
BoundsReport iso_bounds(const CodeSpec& spec, const Limits& limits = {});

/// Lower bound on isomorphism classes with rank exactly 2^n-1-n+t / 3^n-1-n+t.
/// t >= 2: ceil(lower(t) - upper(t-1)), floored at 0. t = 1: ceil(lower(1) - 1),
/// or with `refined` ceil(lower(1) - cl(n,1)/|Aut C|). `refined` requires t = 1.
BigCount iso_bounds_exact_rank(const CodeSpec& spec, bool refined, const Limits& limits = {});

} // namespace stsrank
