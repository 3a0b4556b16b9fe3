"""
Self-test suites: the acceptance checks of every module, runnable from the
command line (``affine-schur selftest``) and from the test suite.

Each check returns a CheckResult; nothing here raises on a failed check.
Sampled checks draw from ``random.Random(seed)`` so reports are reproducible.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from sympy import symbols

from . import algebra as alg
from .algebra import basis_element, identity, idempotent, multiply, verify_classical_presentation
from .cells import b_lambda, chain, d_values_dp, d_values_oracle, increments, membership, rho, sn_orbit_ideal_equality, stratum_basis
from .combinatorics import compositions, is_partition, partitions
from .matrices import PeriodicMatrix, basis, diag
from .segments import OmegaPoint, SegmentMultiset, c_blocks, phi, phi_inverse, random_segments

DEFAULT_SEED = 20240611


@dataclass
class CheckResult:
    key: str
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} [{self.key}] {self.title}: {self.detail}"

    def record(self) -> dict:
        return {"check": self.key, "title": self.title, "passed": self.passed, "detail": self.detail}


@dataclass
class Check:
    key: str
    title: str
    run: Callable[[int], tuple[bool, str]]
    tags: set = field(default_factory=set)


def _grouped(mats):
    by_row: dict = {}
    for A in mats:
        by_row.setdefault(A.row(), []).append(A)
    return by_row


# ---------------------------------------------------------------------------
# algebra checks

IDEMPOTENT_SIZES = [(2, 1), (2, 2), (3, 2), (3, 3)]


def check_idempotent_relations(seed: int) -> tuple[bool, str]:
    bad, count = [], 0
    for n, r in IDEMPOTENT_SIZES:
        lams = compositions(n, r)
        for A in basis(n, r, 2):
            eA = basis_element(A)
            for lam in lams:
                count += 1
                left = multiply(idempotent(lam), eA) == eA
                right = multiply(eA, idempotent(lam)) == eA
                if left != (lam == A.row()) or right != (lam == A.col()):
                    bad.append((n, r, A, lam))
    return not bad, f"{count} (A, lambda) pairs, {len(bad)} violations"


def check_unity(seed: int) -> tuple[bool, str]:
    bad, count = 0, 0
    for n, r in IDEMPOTENT_SIZES:
        one = identity(n, r)
        lams = compositions(n, r)
        for a, b in itertools.product(lams, repeat=2):
            count += 1
            want = idempotent(a) if a == b else alg.AlgebraElement.zero(n, r)
            bad += multiply(idempotent(a), idempotent(b)) != want
        for A in basis(n, r, 2):
            eA = basis_element(A)
            count += 1
            bad += multiply(one, eA) != eA or multiply(eA, one) != eA
    return not bad, f"{count} identities, {bad} violations"


ASSOC_SIZES = [(n, r) for n in (1, 2, 3) for r in (1, 2)]


@lru_cache(maxsize=None)
def _associativity_run(seed: int):
    """Run the associativity sweep once, recording every basis product used."""
    table = alg.StructureConstantTable(alg.multiply_basis_oracle)
    saved = alg.TABLES["oracle"]
    alg.TABLES["oracle"] = table
    try:
        bad, exhaustive = [], 0
        for n, r in ASSOC_SIZES:
            mats = basis(n, r, 1)
            by_row = _grouped(mats)
            for A in mats:
                eA = basis_element(A)
                for B in by_row.get(A.col(), ()):
                    eB = basis_element(B)
                    AB = multiply(eA, eB)
                    for C in by_row.get(B.col(), ()):
                        eC = basis_element(C)
                        exhaustive += 1
                        if multiply(AB, eC) != multiply(eA, multiply(eB, eC)):
                            bad.append((A, B, C))
        rng = random.Random(seed)
        mats = basis(3, 3, 2)
        by_row = _grouped(mats)
        sampled = 0
        while sampled < 500:
            A = rng.choice(mats)
            B = rng.choice(by_row[A.col()])
            C = rng.choice(by_row[B.col()])
            eA, eB, eC = basis_element(A), basis_element(B), basis_element(C)
            sampled += 1
            if multiply(multiply(eA, eB), eC) != multiply(eA, multiply(eB, eC)):
                bad.append((A, B, C))
    finally:
        alg.TABLES["oracle"] = saved
    return bad, exhaustive, sampled, dict(table._memo)


def check_associativity(seed: int) -> tuple[bool, str]:
    bad, exhaustive, sampled, _ = _associativity_run(seed)
    return not bad, f"{exhaustive} exhaustive + {sampled} sampled triples, {len(bad)} failures"


def check_method_equivalence(seed: int) -> tuple[bool, str]:
    *_, memo = _associativity_run(seed)
    bad = [key for key, val in memo.items() if alg.multiply_basis_coset(*key) != val]
    return not bad, f"{len(memo)} basis products compared, {len(bad)} disagreements"


def check_rank_one(seed: int) -> tuple[bool, str]:
    band = {k: PeriodicMatrix(1, [((1, 1 + k), 1)]) for k in range(-10, 11)}
    bad = 0
    for k, m in itertools.product(range(-5, 6), repeat=2):
        for method in ("oracle", "coset"):
            got = alg.basis_product(band[k], band[m], method)
            bad += got != basis_element(band[k + m])
    return not bad, f"121 offset pairs under both rules, {bad} failures"


def check_presentation(seed: int) -> tuple[bool, str]:
    parts = []
    ok = True
    for n, r in [(2, 2), (3, 2)]:
        results = verify_classical_presentation(n, r)
        ok &= all(res.passed for res in results)
        parts.append(f"({n},{r}): " + " ".join(f"{res.relation}{'ok' if res.passed else 'X'}" for res in results))
    return ok, "; ".join(parts)


# ---------------------------------------------------------------------------
# cells and ideals


def check_rho(seed: int) -> tuple[bool, str]:
    fixtures = 0
    bad = []
    for n in range(1, 5):
        for r in range(1, 5):
            for lam in partitions(n, r):
                fixtures += 1
                if rho(diag(lam)).partition != lam:
                    bad.append(("fixture", lam))
    compared = 0
    for n in range(1, 4):
        for r in range(1, 4):
            for A in basis(n, r, 2):
                compared += 1
                d = d_values_dp(A)
                if d != d_values_oracle(A):
                    bad.append(("dp", A))
                if d[-1] != r or not is_partition(increments(d)):
                    bad.append(("codomain", A))
    return not bad, f"{fixtures} diagonal fixtures, {compared} matrices DP vs oracle, {len(bad)} failures"


def check_chain_membership(seed: int) -> tuple[bool, str]:
    J1 = chain(2, 1)[0]
    small = basis(2, 1, 2)
    misses = []
    unverified = 0
    for A in small:
        cert = membership(basis_element(A), J1, 2)
        if not cert.confirmed:
            misses.append(("(2,1)", A, 1))
        elif not cert.verify():
            unverified += 1
    ideals = chain(3, 2)
    mats = basis(3, 2, 1)
    for A in mats:
        i = rho(A).index
        cert = membership(basis_element(A), ideals[i - 1], 2)
        if not cert.confirmed:
            misses.append(("(3,2)", A, i))
        elif not cert.verify():
            unverified += 1
    detail = (
        f"(2,1): {len(small)} elements, (3,2): {len(mats)} elements; "
        f"{len(misses)} not confirmed, {unverified} certificates failed re-verification"
    )
    if misses:
        detail += "; first: " + ", ".join(f"{where} {A!r} in J_{i}" for where, A, i in misses[:3])
    return not misses and not unverified, detail


def check_orbit_ideals(seed: int) -> tuple[bool, str]:
    verdicts = []
    for lam, mu in [((1, 0), (0, 1)), ((2, 0), (0, 2))]:
        fwd, back = sn_orbit_ideal_equality(lam, mu, 2)
        verdicts.append((lam, mu, fwd.confirmed and fwd.verify(), back.confirmed and back.verify()))
    ok = all(f and b for *_, f, b in verdicts)
    return ok, "; ".join(f"{lam}<->{mu}: {'Confirmed' if f and b else 'not confirmed'}" for lam, mu, f, b in verdicts)


def check_strata(seed: int) -> tuple[bool, str]:
    pres = b_lambda((4, 2, 1))
    ok = pres.variables == 4 and pres.inverted == (2, 3, 4)
    parts = [f"B_(4,2,1) = {pres}"]
    for n, r in [(2, 2), (3, 2)]:
        for lam in partitions(n, r):
            rep = stratum_basis(lam, 2)
            ok &= rep.commutative and rep.pairs_tested > 0
            parts.append(f"{lam}: {rep.pairs_tested} pairs, {len(rep.noncommuting)} noncommuting")
    return ok, "; ".join(parts)


# ---------------------------------------------------------------------------
# simple-module parameters


def check_phi(seed: int) -> tuple[bool, str]:
    a1, a2, a3 = symbols("a1 a2 a3")
    first = phi(SegmentMultiset([(a1, 3), (a2, 2), (a3, 1)]), 3)
    second = phi(SegmentMultiset([(a1, 3), (a2, 3), (a3, 1)]), 3)
    fixtures = first == OmegaPoint((3, 2, 1), (a1, a2, a3))
    fixtures &= second == OmegaPoint((3, 2, 2), (a1 + a2, a1 * a2, a3))
    empty = ((4, 2, 1), True) in c_blocks(3, 7)
    rng = random.Random(seed)
    bad = 0
    for _ in range(200):
        r = rng.randint(1, 8)
        n = rng.randint(1, r)
        s = random_segments(rng, n, r)
        bad += phi_inverse(phi(s, n), n) != s
    detail = (
        f"worked conversions {'match' if fixtures else 'differ'}, "
        f"C_(4,2,1) at n=3 {'empty' if empty else 'not flagged empty'}, "
        f"200 round trips with {bad} failures"
    )
    return fixtures and empty and not bad, detail


CHECKS: list[Check] = [
    Check("1", "idempotent relations", check_idempotent_relations, {"algebra"}),
    Check("2", "unity decomposition", check_unity, {"algebra"}),
    Check("3", "associativity", check_associativity, {"algebra", "slow"}),
    Check("4", "method equivalence", check_method_equivalence, {"algebra", "slow"}),
    Check("5", "rank-1 Laurent model", check_rank_one, {"algebra"}),
    Check("6", "rho fixtures and codomain", check_rho, {"cells"}),
    Check("7", "classical presentation", check_presentation, {"algebra"}),
    Check("8", "chain membership", check_chain_membership, {"cells"}),
    Check("9", "orbit-ideal equality", check_orbit_ideals, {"cells"}),
    Check("10", "B_lambda fixture and stratum commutativity", check_strata, {"cells"}),
    Check("11", "phi fixtures and round trip", check_phi, {"segments"}),
]


def run_check(check: Check, seed: int = DEFAULT_SEED) -> CheckResult:
    start = time.perf_counter()
    try:
        passed, detail = check.run(seed)
    except Exception as exc:  # a crashing check is a failed check
        passed, detail = False, f"raised {type(exc).__name__}: {exc}"
    return CheckResult(check.key, check.title, passed, detail, time.perf_counter() - start)


def run_all(seed: int = DEFAULT_SEED, only: set | None = None, skip_tags: set | None = None) -> list[CheckResult]:
    results = []
    for check in CHECKS:
        if only and check.key not in only:
            continue
        if skip_tags and check.tags & skip_tags:
            continue
        results.append(run_check(check, seed))
    return results
