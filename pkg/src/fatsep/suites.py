"""Seeded verification suites: random fat point schemes and named fixtures.

Each suite returns a list of :class:`Check` records; a failing check carries
the scheme JSON so the case can be replayed with the CLI.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from itertools import combinations_with_replacement
from typing import Callable

from .cischeme import (
    CI37_POINT,
    CIType,
    GridSpec,
    cbp_check,
    cbp_fat_removed_check,
    ci_power_shifts,
    ci_rank,
    ci_separator_profile,
    grid_ci,
    load_fixture,
    power_scheme,
    verify_degCI,
)
from .exactlin import FieldSpec
from .scheme import FatPointScheme, delta_hf, hilbert_function, ideal_matrix, reduce_multiplicity
from .separator import (
    colon_check,
    is_separator,
    minimal_separators,
    nu,
    quotient_dim,
    saturation_check,
    separating_set,
    separator_degrees,
)
from .resolution import (
    artinian_reduction,
    is_o_sequence,
    last_betti_shifts,
    macaulay_bound,
    permissible_check,
    socle_dims,
    socle_vectors,
    verify_rank_bound,
    verify_socle_subset_permissible,
    verify_teofat,
)


@dataclass
class Check:
    name: str
    passed: bool
    details: str = ""
    scheme: dict | None = dc_field(default=None)

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "details": self.details}
        if self.scheme is not None:
            out["scheme"] = self.scheme
        return out


def _check(name: str, passed: bool, details: str = "", Z: FatPointScheme | None = None) -> Check:
    return Check(name, bool(passed), details, None if passed or Z is None else Z.to_json())


def _expect(name: str, got, want, Z: FatPointScheme | None = None) -> Check:
    ok = got == want
    return _check(name, ok, f"got {got}" if ok else f"expected {want}, got {got}", Z)


def random_scheme(rng: random.Random, field: FieldSpec, max_points: int = 5, max_mult: int = 3, coord: int = 4) -> FatPointScheme:
    """n in {2, 3}, 1..max_points distinct points with small integer coordinates."""
    n = rng.choice((2, 3))
    s = rng.randint(1, max_points)
    pts: list = []
    seen = set()
    while len(pts) < s:
        P = tuple(rng.randint(-coord, coord) for _ in range(n + 1))
        if not any(P):
            continue
        key = FatPointScheme(n, field, (P,), (1,)).points[0]
        if key in seen:
            continue
        seen.add(key)
        pts.append(P)
    return FatPointScheme(n, field, tuple(pts), tuple(rng.randint(1, max_mult) for _ in range(s)))


def random_corpus(seed: int, cases: int, field: FieldSpec, **kw) -> list[FatPointScheme]:
    rng = random.Random(seed)
    return [random_scheme(rng, field, **kw) for _ in range(cases)]


# ------------------------------------------------------------- per-case laws


def check_hilbert_drop(Z: FatPointScheme, i: int, tag: str) -> Check:
    """ΔH_{Z'}(t) = ΔH_Z(t) - #{j : d_j = t}, with d read off explicit separators."""
    seps = minimal_separators(Z, i)
    degs = [F.degree for F in seps.forms]
    HZ, HZp = hilbert_function(Z), hilbert_function(reduce_multiplicity(Z, i, 1))
    top = HZ.t_stab + 1
    bad = [t for t in range(top + 1) if HZp.delta(t) != HZ.delta(t) - degs.count(t)]
    ok = not bad and len(degs) == nu(Z, i) and all(is_separator(Z, i, F) for F in seps.forms)
    return _check(f"{tag} point {i + 1}", ok, f"separator degrees {tuple(degs)}" + (f"; drop fails at t={bad}" if bad else ""), Z)


def check_lemma_quotient(Z: FatPointScheme, i: int, tag: str) -> Check:
    """dim (I_{Z'})_t - dim (I_Z)_t = #{d_j <= t}, both sides computed separately."""
    degs = [F.degree for F in minimal_separators(Z, i).forms]
    Zp = reduce_multiplicity(Z, i, 1)
    bad = []
    for t in range(hilbert_function(Z).t_stab + 2):
        direct = ideal_matrix(Zp, t).rows - ideal_matrix(Z, t).rows
        if direct != sum(1 for d in degs if d <= t) or direct != quotient_dim(Z, i, t):
            bad.append(t)
    return _check(f"{tag} point {i + 1}", not bad, f"mismatch at t={bad}" if bad else "", Z)


def lex_segment_bound(a: int, t: int) -> int:
    """Brute force a^<t>: degree-(t+1) monomials all of whose degree-t divisors
    lie among the lex-last ``a`` degree-t monomials (the complement of a lex segment)."""
    if a == 0:
        return 0
    nv = 1
    while len(list(combinations_with_replacement(range(nv), t))) < a:
        nv += 1
    nv += 1
    # Monomials as sorted variable-index tuples; lex order with x_0 largest
    # corresponds to comparing exponent vectors.
    def expo(m):
        e = [0] * nv
        for v in m:
            e[v] += 1
        return tuple(e)

    deg_t = sorted((expo(m) for m in combinations_with_replacement(range(nv), t)), reverse=True)
    keep = set(deg_t[-a:])
    count = 0
    for m in combinations_with_replacement(range(nv), t + 1):
        e = expo(m)
        divisors = {tuple(x - (k == j) for k, x in enumerate(e)) for j in range(nv) if e[j]}
        if divisors <= keep:
            count += 1
    return count


# ------------------------------------------------------------------ suites


def _per_point(law: Callable, name: str) -> Callable:
    def run(seed: int, cases: int, field: FieldSpec) -> list[Check]:
        out = []
        for c, Z in enumerate(random_corpus(seed, cases, field)):
            for i in range(Z.s):
                out.append(law(Z, i, f"{name} case {c}"))
        return out

    return run


def suite_teofat(seed: int, cases: int, field: FieldSpec) -> list[Check]:
    out = []
    for c, Z in enumerate(random_corpus(seed, cases, field)):
        B = last_betti_shifts(Z, seed)
        for i in range(Z.s):
            out.append(_check(f"teofat case {c} point {i + 1}", verify_teofat(Z, i, seed), f"profile {separator_degrees(Z, i)} in B={B}", Z))
    return out


def suite_rank_bound(seed: int, cases: int, field: FieldSpec) -> list[Check]:
    out = []
    for c, Z in enumerate(random_corpus(seed, cases, field)):
        B = last_betti_shifts(Z, seed)
        out.append(_check(f"rank-bound case {c}", verify_rank_bound(Z, seed), f"|B|={len(B)}, max m={max(Z.mults)}", Z))
    return out


def suite_socle_permissible(seed: int, cases: int, field: FieldSpec) -> list[Check]:
    out = []
    for c, Z in enumerate(random_corpus(seed, cases, field)):
        H = hilbert_function(Z)
        for i in range(Z.s):
            d = separator_degrees(Z, i)
            out.append(_check(f"permissible case {c} point {i + 1}", permissible_check(H, d), f"profile {d}", Z))
            out.append(_check(f"socle-permissible case {c} point {i + 1}", verify_socle_subset_permissible(Z, i, seed), f"profile {d}", Z))
    return out


def _truncated(checker: Callable, name: str, first_j: int) -> Callable:
    def run(seed: int, cases: int, field: FieldSpec) -> list[Check]:
        rng = random.Random(seed + 1)
        out = []
        for c, Z in enumerate(random_corpus(seed, cases, field)):
            i = rng.randrange(Z.s)
            bad = [j for j in range(first_j, nu(Z, i) + 1) if not checker(Z, i, j)]
            out.append(_check(f"{name} case {c} point {i + 1}", not bad, f"fails for j={bad}" if bad else f"all j up to {nu(Z, i)}", Z))
        return out

    return run


def suite_osequence(seed: int, cases: int, field: FieldSpec) -> list[Check]:
    bad = [(a, t) for t in range(1, 5) for a in range(31) if macaulay_bound(a, t) != lex_segment_bound(a, t)]
    out = [_check("macaulay bound vs lex segment, a<=30, t<=4", not bad, f"mismatch at {bad}" if bad else "")]
    for c, Z in enumerate(random_corpus(seed, cases, field)):
        dh = delta_hf(hilbert_function(Z))
        out.append(_check(f"osequence case {c}", is_o_sequence(dh), f"ΔH={dh}", Z))
    return out


SMALL_CI_TYPES = ((1, 1), (1, 2), (2, 2), (2, 3), (3, 3), (2, 4), (1, 1, 1), (1, 1, 2), (1, 2, 2), (2, 2, 2))


def suite_ci_formula(seed: int, cases: int, field: FieldSpec) -> list[Check]:
    out = []
    for d in SMALL_CI_TYPES:
        ct = CIType(d)
        X, gens = grid_ci(GridSpec.default(ct), field)
        for m in (1, 2, 3):
            Z = power_scheme(X, m)
            B = last_betti_shifts(Z, seed)
            want = ci_power_shifts(ct, m)
            ok = B == want and len(want) == ci_rank(m, ct.n) and verify_degCI(Z)
            out.append(_check(f"ci-formula type {d} m={m}", ok, f"socle {B}, formula {want}", Z))
    return out


def suite_cbp(seed: int, cases: int, field: FieldSpec) -> list[Check]:
    out = []
    for d in ((2, 2), (2, 3), (3, 3), (2, 2, 2)):
        X, _ = grid_ci(GridSpec.default(CIType(d)), field)
        out.append(_check(f"cbp grid {d}", cbp_check(X), "", X))
        out.append(_check(f"cbp fat-removed grid {d} m=2", cbp_fat_removed_check(power_scheme(X, 2)), "", X))
    two = FatPointScheme(2, field, ((1, 0, 0), (0, 1, 0)), (1, 1))
    out.append(_check("cbp two points", cbp_check(two), f"degrees {[separator_degrees(two, i) for i in range(2)]}", two))
    skew = FatPointScheme(2, field, ((1, 0, 0), (1, 1, 0), (1, 2, 0), (1, 0, 1)), (1, 1, 1, 1))
    out.append(_check("no cbp: 3 collinear + 1", not cbp_check(skew), f"degrees {[separator_degrees(skew, i) for i in range(4)]}", skew))
    out.append(_check("no fat-removed cbp: 3 collinear + 1 doubled", not cbp_fat_removed_check(power_scheme(skew, 2)), "", skew))
    return out


def suite_worked_examples(seed: int, cases: int, field: FieldSpec) -> list[Check]:
    """Every fixture value with a known answer."""
    out = []
    Z = load_fixture("example2", field)
    Zp = reduce_multiplicity(Z, 0, 1)
    out.append(_expect("example2 H_Z", hilbert_function(Z).values, (1, 3, 6, 10, 14, 17, 18), Z))
    out.append(_expect("example2 H_Z'", hilbert_function(Zp).values, (1, 3, 6, 10, 14, 16), Z))
    out.append(_expect("example2 separator degrees, all points", {tuple(separator_degrees(Z, i)) for i in range(Z.s)}, {(5, 6)}, Z))
    out.append(_expect("example2 quotient dims t=4,5,6", tuple(quotient_dim(Z, 0, t) for t in (4, 5, 6)), (0, 1, 2), Z))
    out.append(_expect("example2 artinian dims", artinian_reduction(Z, seed).dims, (1, 2, 3, 4, 4, 3, 1, 0), Z))
    out.append(_expect("example2 last shifts", tuple(last_betti_shifts(Z, seed)), (7, 8), Z))
    for m in range(1, 6):
        P = FatPointScheme(2, field, ((1, 0, 0),), (m,))
        out.append(_expect(f"{m}P ΔH", tuple(delta_hf(hilbert_function(P))), tuple(range(1, m + 1)) + (0,), P))
    P3 = load_fixture("3P", field)
    out.append(_expect("3P separator degrees", tuple(separator_degrees(P3, 0)), (2, 2, 2), P3))
    out.append(_expect("2P separator degrees", tuple(separator_degrees(load_fixture("2P", field), 0)), (1, 1), P3))
    out.append(_expect("3P levels", tuple(tuple(p) for p in separating_set(P3, 0).levels), ((2, 2, 2), (1, 1), (0,)), P3))
    Z2 = load_fixture("ci37", field)
    i = CI37_POINT
    Z1 = reduce_multiplicity(Z2, i, 1)
    out.append(_expect("ci37 H_Z2", hilbert_function(Z2).values, CI37_HZ2, Z2))
    out.append(_expect("ci37 ΔH_Z2", tuple(delta_hf(hilbert_function(Z2))), CI37_DHZ2, Z2))
    out.append(_expect("ci37 ΔH_Z1", tuple(delta_hf(hilbert_function(Z1))), CI37_DHZ1, Z2))
    out.append(_expect("ci37 ΔH_Z0", tuple(delta_hf(hilbert_function(reduce_multiplicity(Z2, i, 2)))), CI37_DHZ0, Z2))
    out.append(_expect("ci37 last shifts Z2", tuple(last_betti_shifts(Z2, seed)), (12, 12, 15, 16), Z2))
    out.append(_expect("ci37 socle dims Z2", socle_dims(Z2, seed), {10: 2, 13: 1, 14: 1}, Z2))
    out.append(_expect("ci37 socle vectors", socle_vectors(last_betti_shifts(Z2, seed), 2, 2), {(10, 10), (10, 13), (10, 14), (13, 14)}, Z2))
    out.append(_expect("ci37 deg Z2 at P36", tuple(separator_degrees(Z2, i)), (10, 13), Z2))
    out.append(_expect("ci37 last shifts Z1", tuple(last_betti_shifts(Z1, seed)), (11, 12, 14, 16), Z2))
    out.append(_expect("ci37 deg Z1 at P36", tuple(separator_degrees(Z1, i)), (12,), Z2))
    out.append(_expect("ci37 DEG", str(separating_set(Z2, i)), "{(12),(10,13)}", Z2))
    out.append(_check("ci37 socle vectors permissible", verify_socle_subset_permissible(Z2, i, seed), "", Z2))
    ct = CIType((2, 3, 4))
    out.append(_expect("ci234 formula shifts", tuple(ci_power_shifts(ct, 3)), (13, 14, 15, 15, 16, 17)))
    out.append(_expect("ci234 formula profile", tuple(ci_separator_profile(ct, 3)), (10, 11, 12, 12, 13, 14)))
    Z = load_fixture("ci234", field)
    out.append(_expect("ci234 degree", Z.degree, 240, Z))
    out.append(_expect("ci234 socle shifts", tuple(last_betti_shifts(Z, seed)), (13, 14, 15, 15, 16, 17), Z))
    out.append(_expect("ci234 separator degrees at P1", tuple(separator_degrees(Z, 0)), (10, 11, 12, 12, 13, 14), Z))
    return out


CI37_HZ2 = (1, 3, 6, 10, 15, 21, 27, 33, 39, 45, 50, 53, 56, 59, 60)
CI37_DHZ2 = (1, 2, 3, 4, 5, 6, 6, 6, 6, 6, 5, 3, 3, 3, 1, 0)
CI37_DHZ1 = (1, 2, 3, 4, 5, 6, 6, 6, 6, 6, 4, 3, 3, 2, 1, 0)
CI37_DHZ0 = (1, 2, 3, 4, 5, 6, 6, 6, 6, 6, 4, 3, 2, 2, 1, 0)

SUITES: dict[str, Callable[[int, int, FieldSpec], list[Check]]] = {
    "hilbert-drop": _per_point(check_hilbert_drop, "hilbert-drop"),
    "lemma-quotient": _per_point(check_lemma_quotient, "lemma-quotient"),
    "teofat": suite_teofat,
    "rank-bound": suite_rank_bound,
    "socle-permissible": suite_socle_permissible,
    "colon": _truncated(colon_check, "colon", 1),
    "saturation": _truncated(saturation_check, "saturation", 0),
    "osequence": suite_osequence,
    "ci-formula": suite_ci_formula,
    "cbp": suite_cbp,
    "paper-examples": suite_worked_examples,
}


def run_suite(name: str, seed: int, cases: int, field: FieldSpec) -> list[Check]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name](seed, cases, field)
