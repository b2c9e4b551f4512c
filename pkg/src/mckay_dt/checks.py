"""Named identity checks, shared by ``mckay-dt verify``.

Every check compares two independently computed sides exactly and reports
a short detail string.  Checks run in a fixed order so reports are
reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .coeff_ring import ONE, L, MotiveScalar, evaluate_at_prime_power, gl_motive, pochhammer
from .dtinv import (
    EulerSeries,
    OmegaTable,
    affine_kac_table,
    euler_limit,
    framed_series,
    gv_extract,
    hilbert_series_ZY,
    is_positive,
    jordan_kac_table,
    macmahon,
    macmahon_coefficients,
    mckay_box_grading,
    mckay_grading,
    mckay_series,
    omega_extract,
    pt_euler_symbolic,
    universal_series,
    universal_series_via_pow,
)
from .quiver import Quiver, euler_form, jordan, kronecker, loop_double
from .repcount import (
    aut_motive,
    count_automorphisms,
    count_preprojective,
    interpolate_kac,
    kac_bruteforce,
    potential_fiber_distribution,
)
from .roots import from_type, positive_roots_up_to, stability_vector
from .series import Grading, MSeries, exp_lambda, log_lambda, sign_flip

__all__ = ["Check", "CheckResult", "all_checks", "select_checks", "run_checks"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    description: str
    passed: bool
    detail: str

    def to_json(self) -> dict:
        return {"name": self.name, "description": self.description, "passed": self.passed, "detail": self.detail}


@dataclass(frozen=True)
class Check:
    name: str
    description: str
    run: Callable[["Options"], tuple[bool, str]]


@dataclass(frozen=True)
class Options:
    qs: tuple[int, ...] = (2, 3)
    order: int | None = None
    seed: int = 0


def _order(opts: Options, default: int) -> int:
    return default if opts.order is None else opts.order


# ------------------------------------------------------------- lambda ring
def random_series(rng: random.Random, nvars: int, order: int, nterms: int) -> MSeries:
    G = Grading.total_degree(tuple(f"x{i}" for i in range(nvars)), order)
    pts = [e for e in G.points() if any(e)]
    terms = {}
    for e in rng.sample(pts, min(nterms, len(pts))):
        lowest = rng.randint(-3, 3)
        terms[e] = MotiveScalar.laurent(lowest, [rng.randint(-3, 3) for _ in range(rng.randint(1, 3))])
    return MSeries(G, terms)


def _lambda_roundtrip(opts: Options) -> tuple[bool, str]:
    rng = random.Random(opts.seed)
    n = 20
    for i in range(n):
        f = random_series(rng, rng.randint(1, 3), _order(opts, 6), rng.randint(1, 4))
        if log_lambda(exp_lambda(f)) != f:
            return False, f"Log(Exp f) != f for sample {i}"
        if exp_lambda(log_lambda(f + 1)) != f + 1:
            return False, f"Exp(Log(1+f)) != 1+f for sample {i}"
    return True, f"{n} random series"


def heine_sides(order: int) -> tuple[MSeries, MSeries]:
    G = Grading(("y",), (1,), order)
    lhs = exp_lambda(MSeries(G, {(1,): (ONE - L.inverse()).inverse()}))
    rhs = MSeries(G, {(m,): pochhammer(L.inverse(), m).inverse() for m in range(order + 1)})
    return lhs, rhs


def _heine(opts: Options) -> tuple[bool, str]:
    N = _order(opts, 8)
    lhs, rhs = heine_sides(N)
    return lhs == rhs, f"order {N}"


def _structural(opts: Options) -> tuple[bool, str]:
    for n in range(9):
        direct = ONE
        for k in range(n):
            direct = direct * (L**n - L**k)
        if gl_motive(n) != direct or gl_motive(n) != L ** (n * n) * pochhammer(L.inverse(), n):
            return False, f"gl_motive({n})"
    return True, "n <= 8"


def aut_cases() -> list[tuple[str, Quiver, tuple[int, ...], list[int], list[int], int]]:
    """``(label, quiver, dim, rep, multiplicities, end_dim)`` for the automorphism comparison."""
    point, two_points = Quiver(1, ()), Quiver(2, ())
    return [
        ("S^2", point, (2,), [], [2], 4),
        ("S+T", two_points, (1, 1), [], [1, 1], 2),
    ]


def _aut(opts: Options) -> tuple[bool, str]:
    out = []
    for label, Q, dim, rep, mults, e in aut_cases():
        direct = count_automorphisms(Q, dim, rep, 2)
        motive = evaluate_at_prime_power(aut_motive(mults, e), 2)
        if direct != motive:
            return False, f"{label}: {direct} != {motive}"
        out.append(f"{label}={direct}")
    return True, ", ".join(out)


# ------------------------------------------------------------------ oracles
def u_motive_sides(Q: Quiver, alpha: Sequence[int], A: MSeries, q: int) -> tuple[Fraction, int]:
    """``q^{-chi} * A_U[alpha](q) * |GL_alpha(q)|`` and ``#R(Pi_Q, alpha)(F_q)``."""
    chi = euler_form(Q, alpha, alpha)
    gl = Fraction(1)
    for n in alpha:
        gl *= evaluate_at_prime_power(gl_motive(n), q)
    lhs = evaluate_at_prime_power(A.coefficient(alpha), q) * gl / Fraction(q) ** chi
    return lhs, count_preprojective(Q, alpha, q).count


def _u_motive_jordan(opts: Options) -> tuple[bool, str]:
    A = universal_series(jordan_kac_table(), Grading(("y",), (1,), 3))
    n_checked = 0
    for q in opts.qs:
        for n in (1, 2, 3):
            if n == 3 and q > 3:
                continue
            lhs, rhs = u_motive_sides(jordan(), (n,), A, q)
            if lhs != rhs:
                return False, f"n={n}, q={q}: {lhs} != {rhs}"
            n_checked += 1
    return True, f"{n_checked} (n, q) pairs"


def _u_motive_kronecker(opts: Options) -> tuple[bool, str]:
    R = from_type("A1~")
    A = universal_series(affine_kac_table(R), mckay_box_grading(R, 1))
    for q in opts.qs:
        lhs, rhs = u_motive_sides(kronecker(), (1, 1), A, q)
        if lhs != rhs:
            return False, f"q={q}: {lhs} != {rhs}"
    return True, f"q in {list(opts.qs)}"


def reduction_cases() -> list[tuple[str, Quiver, tuple[int, ...]]]:
    return [("jordan(1)", jordan(), (1,)), ("jordan(2)", jordan(), (2,)), ("kronecker(1,1)", kronecker(), (1, 1))]


def _reduction(opts: Options) -> tuple[bool, str]:
    for q in opts.qs:
        for label, Q, alpha in reduction_cases():
            dist = potential_fiber_distribution(loop_double(Q), alpha, q)
            d = sum(a * a for a in alpha)
            rhs = q**d * count_preprojective(Q, alpha, q).count
            if dist[0] - dist[1] != rhs:
                return False, f"{label}, q={q}: {dist[0] - dist[1]} != {rhs}"
    return True, f"q in {list(opts.qs)}"


def _fiber_uniformity(opts: Options) -> tuple[bool, str]:
    for label, Q, alpha in reduction_cases():
        dist = potential_fiber_distribution(loop_double(Q), alpha, 3)
        if len(set(dist[1:])) != 1:
            return False, f"{label}: nonzero fibers {dist[1:]}"
    return True, "q=3, c in {1, 2}"


def _kac_kronecker(opts: Options) -> tuple[bool, str]:
    qs = sorted(set(opts.qs) | {2, 3})
    samples = [(q, kac_bruteforce(kronecker(), (1, 1), q)) for q in qs]
    poly = interpolate_kac(samples, 1)
    ok = poly.coeffs == (1, 1) and all(c == q + 1 for q, c in samples)
    return ok, f"{samples} -> {poly}"


def _kac_jordan(opts: Options) -> tuple[bool, str]:
    for n in (1, 2):
        samples = [(q, kac_bruteforce(jordan(), (n,), q)) for q in sorted(set(opts.qs) | {2, 3})]
        poly = interpolate_kac(samples, 1)
        if poly.coeffs != (0, 1):
            return False, f"n={n}: {samples} -> {poly}"
    return True, "a_n(q) = q for n in {1, 2}"


# ---------------------------------------------------------------- McKay
def omega_mismatches(tag: str, N: int) -> tuple[list, list]:
    """Entries where the extracted invariant differs from the closed form, and non-positive ones."""
    R = from_type(tag)
    G = mckay_box_grading(R, N)
    K = affine_kac_table(R)
    om = omega_extract(universal_series(K, G))
    bad = [a for a in G.points() if any(a) and om.get(a) != K.motive(a)]
    nonpos = [a for a, c in om.items() if not is_positive(c)]
    return bad, nonpos


def _omega(tag: str):
    def run(opts: Options) -> tuple[bool, str]:
        N = _order(opts, 3)
        bad, nonpos = omega_mismatches(tag, N)
        if bad:
            return False, f"mismatch at {bad[0]}"
        if nonpos:
            return False, f"positivity fails at {nonpos[0]}"
        return True, f"s-order {N}"

    return run


def _factorization(tag: str):
    def run(opts: Options) -> tuple[bool, str]:
        R = from_type(tag)
        N = _order(opts, 3)
        G = mckay_grading(R, N)
        K = affine_kac_table(R)
        omega = OmegaTable.from_kac(K, [r.vector for r in positive_roots_up_to(R, N)])
        w = (1,) + (0,) * R.rank
        for mode in ("pt", "dt", "ncdt"):
            zeta = stability_vector(R, mode, Fraction(1, N + 1))
            if sign_flip(framed_series(omega, zeta, w, G), 0) != mckay_series(R, mode, N).series:
                return False, f"mode {mode}"
        return True, f"pt, dt, ncdt to s-order {N}"

    return run


def _dtpt(tag: str):
    def run(opts: Options) -> tuple[bool, str]:
        R = from_type(tag)
        N = _order(opts, 5)
        ok = mckay_series(R, "dt", N) == mckay_series(R, "pt", N) * hilbert_series_ZY(R.rank, N, R)
        return ok, f"s-order {N}"

    return run


def macmahon_product(R, betas, N: int, extra_m: int = 0) -> EulerSeries:
    out = EulerSeries.one(R.rank, N)
    for _ in range(extra_m):
        out = out * macmahon(None, N, R.rank)
    for b in betas:
        out = out * macmahon(b[1:], N)
    return out


def _limits(tag: str):
    def run(opts: Options) -> tuple[bool, str]:
        R = from_type(tag)
        N = _order(opts, 5)
        if euler_limit(mckay_series(R, "pt", N)) != macmahon_product(R, R.finite_positive_roots, N):
            return False, "PT limit"
        ncdt = macmahon_product(R, R.finite_roots, N, R.rank + 1)
        if euler_limit(mckay_series(R, "ncdt", N)) != ncdt:
            return False, "NCDT limit"
        return True, f"PT and NCDT to s-order {N}"

    return run


def _macmahon(opts: Options) -> tuple[bool, str]:
    coeffs = macmahon_coefficients(5)
    return coeffs == [1, 1, 3, 6, 13, 24], f"M(q) = {coeffs}"


def _gv(tag: str):
    def run(opts: Options) -> tuple[bool, str]:
        R = from_type(tag)
        gv = gv_extract(pt_euler_symbolic(R))
        expected = {(0, b[1:]): -1 for b in R.finite_positive_roots}
        return gv == expected, f"{len(gv)} nonzero invariants"

    return run


def all_checks() -> list[Check]:
    checks = [
        Check("lambda:roundtrip", "Log and Exp are mutually inverse", _lambda_roundtrip),
        Check("heine", "Exp(y/(1-L^-1)) = sum y^m/(L^-1)_m", _heine),
        Check("structural:gl", "[GL_n] = L^{n^2} (L^-1)_n = prod (L^n - L^k)", _structural),
        Check("aut", "automorphism motive matches direct counts", _aut),
        Check("u-motive:jordan", "A_U coefficients match preprojective counts", _u_motive_jordan),
        Check("u-motive:kronecker", "A_U coefficients match preprojective counts", _u_motive_kronecker),
        Check("reduction", "First dimensional reduction", _reduction),
        Check("fiber-uniformity", "nonzero potential fibers have equal size", _fiber_uniformity),
        Check("kac:kronecker", "brute-force Kac polynomial is q + 1", _kac_kronecker),
        Check("kac:jordan", "brute-force Kac polynomial is q", _kac_jordan),
    ]
    for tag in ("A1~", "A2~", "D4~"):
        checks.append(Check(f"omega:{tag}", "extracted invariants are 1 / L + l and positive", _omega(tag)))
    for tag in ("A1~", "A2~"):
        checks.append(Check(f"factorization:{tag}", "framed series equals product of local factors", _factorization(tag)))
    for tag in ("A1~", "A2~", "D4~"):
        checks.append(Check(f"dtpt:{tag}", "Z_DT = Z_PT * Z_Y", _dtpt(tag)))
    checks.append(Check("macmahon", "plane partition counts", _macmahon))
    for tag in ("A1~", "A2~"):
        checks.append(Check(f"limits:{tag}", "Euler limits are MacMahon products", _limits(tag)))
    for tag in ("A2~", "D4~"):
        checks.append(Check(f"gv:{tag}", "genus 0 invariants -1 on finite positive roots", _gv(tag)))
    return checks


def select_checks(suite: str | None) -> list[Check]:
    checks = all_checks()
    if suite in (None, "", "all"):
        return checks
    chosen = [c for c in checks if c.name == suite or c.name.split(":")[0] == suite]
    if not chosen:
        raise KeyError(suite)
    return chosen


def run_checks(checks: Sequence[Check], opts: Options) -> list[CheckResult]:
    out = []
    for c in checks:
        passed, detail = c.run(opts)
        out.append(CheckResult(c.name, c.description, bool(passed), detail))
    return out
