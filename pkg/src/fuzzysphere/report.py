"""Report rows and checks for each CLI command, plus CSV/JSON serialization."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import __version__
from .algebra import clock_shift, fuzzy_sphere
from .forms import UniversalForm, exterior_derivative, junk_quotient_rank, represent
from .linalg import hermitian_eigenvalues, max_abs, scale
from .exceptions import DegenerateSpectrumError
from .scalar import laplacian_spectrum, random_field, scalar_action
from .triple import (
    boundedness_probe,
    chirality_index,
    chirality_left,
    chirality_opposite,
    cross_factor,
    dirac_operator,
    dirac_operator_adjoint_form,
    dirac_operator_left,
    dirac_spectrum,
    hilbert_trace,
    hilbert_trace_direct,
    lift_left,
    spinor,
    zeromode_projector,
)

COMMANDS = ("verify", "spectrum", "index", "action", "laplacian", "forms", "sweep", "torus")
SWEEP_JS = (Fraction(1, 2), Fraction(3, 2), Fraction(5, 2))


@dataclass
class Check:
    name: str
    value: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.value <= self.tolerance)


@dataclass
class Result:
    rows: list = field(default_factory=list)
    checks: list = field(default_factory=list)

    def first_failure(self):
        return next((c for c in self.checks if not c.passed), None)


def _random_matrix(rng, n):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def verify_checks(N: int, ell: float = 1.0, seed: int = 0, n_random: int = 20) -> list[Check]:
    """Every algebraic identity of the triple at one cutoff, as residual checks."""
    rng = np.random.default_rng(seed)
    s = fuzzy_sphere(N, ell)
    n = s.dim
    eye = np.eye(2 * n * n)
    checks = []

    comm = max(
        max_abs(s.x[i] @ s.x[j] - s.x[j] @ s.x[i] - 1j * s.alpha * s.x[k])
        for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1))
    )
    checks.append(Check("algebra_commutator", comm, 1e-12 * ell))
    constraint = max_abs(sum(x @ x for x in s.x) - ell**2 * np.eye(n))
    checks.append(Check("algebra_constraint", constraint, 1e-12 * ell**2))

    g_opp, g_left = chirality_opposite(s), chirality_left(s)
    checks.append(Check("chirality_opposite_square", max_abs(g_opp @ g_opp - eye), 1e-12))
    checks.append(Check("chirality_left_square", max_abs(g_left @ g_left - eye), 1e-12))
    worst = 0.0
    for _ in range(n_random):
        a = spinor(lift_left(_random_matrix(rng, n)))
        worst = max(worst, max_abs(g_opp @ a - a @ g_opp) / scale(a))
    checks.append(Check("chirality_opposite_commutes_with_algebra", worst, 1e-12))

    D = dirac_operator(s)
    dscale = scale(D)
    checks.append(Check("dirac_selfadjoint", max_abs(D - D.conj().T) / dscale, 1e-12))
    checks.append(Check("dirac_anticommutes_opposite", max_abs(D @ g_opp + g_opp @ D) / dscale, 1e-12))
    E = cross_factor(s)
    escale = scale(E)
    checks.append(Check("cross_factor_anticommutes_opposite", max_abs(E @ g_opp + g_opp @ E) / escale, 1e-12))
    checks.append(Check("cross_factor_anticommutes_left", max_abs(E @ g_left + g_left @ E) / escale, 1e-12))
    checks.append(
        Check("dirac_adjoint_form", max_abs(D - dirac_operator_adjoint_form(s)) / dscale, 1e-12)
    )
    D_left = dirac_operator_left(s)
    checks.append(
        Check("left_dirac_anticommutes_left", max_abs(D_left @ g_left + g_left @ D_left) / scale(D_left), 1e-12)
    )
    ev = hermitian_eigenvalues(D @ D)
    ev_left = hermitian_eigenvalues(D_left @ D_left)
    checks.append(Check("left_dirac_spectrum_equivalence", float(np.max(np.abs(ev - ev_left))), 1e-10))

    report = dirac_spectrum(s, D)
    checks.append(Check("spectrum_closed_form", report.max_residual, 1e-10))

    checks.append(Check("index_left", abs(chirality_index(g_left) - 2 * (N + 1)), 1e-10))
    checks.append(Check("index_opposite", abs(chirality_index(g_opp) + 2 * (N + 1)), 1e-10))
    P = zeromode_projector(s)
    checks.append(Check("zeromode_rank", abs(np.trace(P).real - (2 * N + 2)), 1e-10))
    checks.append(Check("zeromode_idempotent", max_abs(P @ P - P), 1e-12))
    checks.append(Check("zeromode_annihilated_by_dirac", max_abs(D @ P) / dscale, 1e-10))

    worst = 0.0
    for _ in range(n_random):
        a, b = _random_matrix(rng, n), _random_matrix(rng, n)
        formula = hilbert_trace(a, b)
        worst = max(worst, abs(formula - hilbert_trace_direct(a, b)) / max(1.0, abs(formula)))
    checks.append(Check("hilbert_trace_formula", worst, 1e-12))

    worst = 0.0
    for _ in range(n_random):
        rep = scalar_action(s, random_field(N, rng), D)
        worst = max(worst, rep.discrepancy / max(1.0, abs(rep.s_closed)))
    checks.append(Check("action_dual_route", worst, 1e-12))
    rep = scalar_action(s, s.x[2], D)
    checks.append(Check("action_x3_reference", abs(rep.s_spectral - 4 * ell**2 / 9), 1e-12))

    try:
        laplacian_spectrum(s)
        lap = 0.0
    except DegenerateSpectrumError:
        lap = np.inf
    checks.append(Check("laplacian_truncation", lap, 1e-9))

    leib = star = grading = 0.0
    for _ in range(n_random):
        a, b = _random_matrix(rng, n), _random_matrix(rng, n)
        da = exterior_derivative(s, a, D).matrix
        db = exterior_derivative(s, b, D).matrix
        dab = exterior_derivative(s, a @ b, D).matrix
        pa, pb = spinor(lift_left(a)), spinor(lift_left(b))
        leib = max(leib, max_abs(dab - da @ pb - pa @ db) / scale(dab))
        das = exterior_derivative(s, a.conj().T, D).matrix
        star = max(star, max_abs(da.conj().T + das) / scale(da))
        for p in range(3):
            w = UniversalForm.word(*[_random_matrix(rng, n) for _ in range(p + 1)])
            m = represent(s, w, D).matrix
            grading = max(grading, max_abs(g_opp @ m @ g_opp - (-1) ** p * m) / scale(m))
    checks.append(Check("leibniz", leib, 1e-12))
    checks.append(Check("star_relation", star, 1e-12))
    checks.append(Check("grading", grading, 1e-12))
    return checks


def run_verify(N, ell, seed, **_):
    checks = verify_checks(N, ell, seed)
    rows = [
        {"check": c.name, "residual": c.value, "tolerance": c.tolerance, "passed": c.passed}
        for c in checks
    ]
    return Result(rows, checks)


def spectrum_rows(report) -> list[dict]:
    return [
        {
            "j": g.j,
            "lambda_sq_measured": g.lambda_sq_measured,
            "lambda_sq_formula": g.lambda_sq_formula,
            "degeneracy": g.degeneracy,
            "residual": g.residual,
        }
        for g in report.groups
    ]


def run_spectrum(N, ell, **_):
    report = dirac_spectrum(fuzzy_sphere(N, ell))
    return Result(spectrum_rows(report), [Check("spectrum_closed_form", report.max_residual, 1e-10)])


def run_index(N, ell, **_):
    s = fuzzy_sphere(N, ell)
    g_left, g_opp = chirality_left(s), chirality_opposite(s)
    P = zeromode_projector(s)
    rank = int(round(np.trace(P).real))
    row = {
        "n": N,
        "index_left": chirality_index(g_left),
        "index_opposite": chirality_index(g_opp),
        "zeromode_rank": rank,
        "zeromode_chirality_opposite": chirality_index(g_opp @ P) / rank,
    }
    checks = [
        Check("index_left", abs(row["index_left"] - 2 * (N + 1)), 1e-10),
        Check("index_opposite", abs(row["index_opposite"] + 2 * (N + 1)), 1e-10),
        Check("zeromode_rank", abs(rank - abs(row["index_opposite"])), 1e-10),
    ]
    return Result([row], checks)


def run_action(N, ell, seed, **_):
    s = fuzzy_sphere(N, ell)
    D = dirac_operator(s)
    rng = np.random.default_rng(seed)
    rows, checks = [], []
    for name, phi in (("random", random_field(N, rng)), ("x3", s.x[2])):
        rep = scalar_action(s, phi, D)
        rows.append(
            {
                "field": name,
                "s_spectral": rep.s_spectral,
                "s_closed": rep.s_closed,
                "discrepancy": rep.discrepancy,
                "mode_sum": rep.mode_sum,
            }
        )
        rel = max(1.0, abs(rep.s_closed))
        checks.append(Check(f"action_dual_route[{name}]", rep.discrepancy / rel, 1e-12))
        checks.append(Check(f"action_mode_sum[{name}]", abs(rep.mode_sum - rep.s_closed) / rel, 1e-10))
    checks.append(Check("action_x3_reference", abs(rows[1]["s_closed"] - 4 * ell**2 / 9), 1e-12))
    return Result(rows, checks)


def run_laplacian(N, ell, **_):
    spectrum = laplacian_spectrum(fuzzy_sphere(N, ell))
    rows = [{"l": l, "eigenvalue": v, "multiplicity": k} for l, (v, k) in enumerate(spectrum)]
    worst = max(abs(v - l * (l + 1)) for l, (v, _) in enumerate(spectrum))
    return Result(rows, [Check("laplacian_integer_match", worst, 1e-9)])


def run_forms(N, ell, seed, samples=None, **_):
    s = fuzzy_sphere(N, ell)
    rows = []
    for p in range(3):
        ranks = junk_quotient_rank(s, p, samples=samples, seed=seed)
        rows.append({"p": p, **ranks._asdict()})
    return Result(rows, [])


def run_sweep(N, ell, **_):
    lo, hi = N
    rows, checks = [], []
    deviations = {j: [] for j in SWEEP_JS}
    bounds = {}
    for n in range(lo, hi + 1):
        s = fuzzy_sphere(n, ell)
        D = dirac_operator(s)
        report = dirac_spectrum(s, D)
        bounds[n] = boundedness_probe(s, D)
        checks.append(Check(f"spectrum_closed_form[N={n}]", report.max_residual, 1e-10))
        for g in report.groups:
            k = float(g.j) + 0.5
            deviation = abs(g.lambda_sq_measured - k * k)
            rows.append(
                {
                    "n": n,
                    "j": g.j,
                    "lambda_sq_measured": g.lambda_sq_measured,
                    "lambda_sq_formula": g.lambda_sq_formula,
                    "degeneracy": g.degeneracy,
                    "deviation": deviation,
                    "residual": g.residual,
                    "boundedness": bounds[n],
                }
            )
            if g.j in deviations and g.j < n + Fraction(1, 2):
                predicted = k * k * (k * k - 1) / (n * (n + 2))
                checks.append(Check(f"limit_deviation[N={n},j={g.j}]", abs(deviation - predicted), 1e-10))
                deviations[g.j].append(deviation)
    for j, devs in deviations.items():
        rises = [b - a for a, b in zip(devs, devs[1:])]
        checks.append(Check(f"limit_monotone[j={j}]", max(rises, default=0.0), 1e-10))
    ref_n = 8 if lo <= 8 <= hi else lo
    growth = max(bounds.values()) / bounds[ref_n] - 1.0
    checks.append(Check(f"boundedness_vs_N={ref_n}", growth, 0.10))
    return Result(rows, checks)


def run_torus(N, **_):
    S, T, q = clock_shift(N)
    n = N + 1
    eye = np.eye(n)
    row = {
        "n": N,
        "q_real": q.real,
        "q_imag": q.imag,
        "relation_residual": max_abs(S @ T - q * T @ S),
        "s_period_residual": max_abs(np.linalg.matrix_power(S, n) - eye),
        "t_period_residual": max_abs(np.linalg.matrix_power(T, n) - eye),
        "unitarity_residual": max(max_abs(S @ S.conj().T - eye), max_abs(T @ T.conj().T - eye)),
    }
    checks = [
        Check("torus_relation", row["relation_residual"], 1e-13),
        Check("torus_unitary", row["unitarity_residual"], 1e-13),
        Check("torus_periodic", max(row["s_period_residual"], row["t_period_residual"]), 1e-12),
    ]
    return Result([row], checks)


RUNNERS = {
    "verify": run_verify,
    "spectrum": run_spectrum,
    "index": run_index,
    "action": run_action,
    "laplacian": run_laplacian,
    "forms": run_forms,
    "sweep": run_sweep,
    "torus": run_torus,
}


# serialization -------------------------------------------------------------


def format_float(x: float) -> str:
    return f"{float(x):.16e}"


def _csv_cell(v) -> str:
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}" if v.denominator != 1 else str(v.numerator)
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format_float(v)
    return str(v)


def _json_value(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        return f"[{v.numerator}, {v.denominator}]"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if not np.isfinite(v):
            return '"inf"' if v > 0 else ('"-inf"' if v < 0 else '"nan"')
        return format_float(v)
    if isinstance(v, str):
        return json.dumps(v)
    if isinstance(v, dict):
        items = [f"{_json_value(str(k))}: {_json_value(v[k])}" for k in sorted(v)]
        return "{" + ", ".join(items) + "}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_json_value(x) for x in v) + "]"
    raise TypeError(f"cannot serialize {type(v).__name__}")


def to_json(meta: dict, rows: list[dict]) -> str:
    """Deterministic JSON: sorted keys, floats with 17 significant digits."""
    body = ",\n".join("    " + _json_value(r) for r in rows)
    rows_text = "[\n" + body + "\n  ]" if rows else "[]"
    return "{\n" + f'  "meta": {_json_value(meta)},\n  "rows": {rows_text}\n' + "}\n"


def to_csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    header = list(rows[0])
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for r in rows:
        writer.writerow([_csv_cell(r[k]) for k in header])
    return buf.getvalue()


def make_meta(command: str, n, ell: float, seed: int) -> dict:
    return {
        "command": command,
        "n": list(n) if isinstance(n, tuple) else n,
        "ell": ell,
        "seed": seed,
        "version": __version__,
    }
