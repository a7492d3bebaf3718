"""Exact two-phase simplex over rational arithmetic.

Feasibility verdicts in this package must be exact: a Dutch book either
exists or it does not, and a strict inequality satisfied by margin 10**-30
is still satisfied.  Floating-point LP solvers cannot promise that, so this
module implements the textbook two-phase simplex with ``fractions.Fraction``
entries and Bland's anti-cycling rule.  Problem sizes here are tiny (tens of
variables and rows), where exact pivoting is effortless.

``LinearProgram`` is a small builder with named variables, optional bounds,
and free variables; ``maximize``/``minimize`` return an :class:`LPResult`
with status ``optimal``, ``infeasible``, or ``unbounded``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

ZERO = Fraction(0)
ONE = Fraction(1)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class LPResult:
    status: str
    objective: Optional[Fraction] = None
    values: dict[str, Fraction] = field(default_factory=dict)

    @property
    def is_optimal(self) -> bool:
        return self.status == OPTIMAL

    def __getitem__(self, name: str) -> Fraction:
        return self.values[name]


class LinearProgram:
    """Incrementally built LP with named rational variables."""

    def __init__(self):
        self._vars: list[tuple[str, Optional[Fraction], bool]] = []  # (name, lower, free)
        self._names: set[str] = set()
        self._uppers: list[tuple[str, Fraction]] = []
        self._rows: list[tuple[dict[str, Fraction], str, Fraction]] = []

    def variable(
        self,
        name: str,
        lower: Optional[Fraction] = ZERO,
        upper: Optional[Fraction] = None,
        free: bool = False,
    ) -> str:
        if name in self._names:
            raise ValueError(f"duplicate variable {name!r}")
        self._names.add(name)
        if free:
            lower = None
        self._vars.append((name, None if free else Fraction(lower), free))
        if upper is not None:
            self._uppers.append((name, Fraction(upper)))
        return name

    def constrain(self, coeffs: Mapping[str, Fraction], sense: str, rhs) -> None:
        if sense not in ("<=", ">=", "="):
            raise ValueError(f"unknown sense {sense!r}")
        for name in coeffs:
            if name not in self._names:
                raise ValueError(f"unknown variable {name!r}")
        self._rows.append(({k: Fraction(v) for k, v in coeffs.items()}, sense, Fraction(rhs)))

    def maximize(self, coeffs: Mapping[str, Fraction]) -> LPResult:
        return self._solve(coeffs, maximize=True)

    def minimize(self, coeffs: Mapping[str, Fraction]) -> LPResult:
        return self._solve(coeffs, maximize=False)

    # -- translation to standard form (all columns >= 0) --------------------

    def _solve(self, coeffs: Mapping[str, Fraction], maximize: bool) -> LPResult:
        for name in coeffs:
            if name not in self._names:
                raise ValueError(f"unknown variable {name!r}")
        columns: list[tuple[str, Fraction]] = []  # (var name, sign)
        offsets: dict[str, Fraction] = {}
        col_of: dict[str, list[int]] = {}
        for name, lower, free in self._vars:
            if free:
                col_of[name] = [len(columns), len(columns) + 1]
                columns.append((name, ONE))
                columns.append((name, -ONE))
                offsets[name] = ZERO
            else:
                col_of[name] = [len(columns)]
                columns.append((name, ONE))
                offsets[name] = lower

        def expand(row: Mapping[str, Fraction]) -> tuple[list[Fraction], Fraction]:
            out = [ZERO] * len(columns)
            shift = ZERO
            for name, coef in row.items():
                coef = Fraction(coef)
                for idx in col_of[name]:
                    _, sign = columns[idx]
                    out[idx] += coef * sign
                shift += coef * offsets[name]
            return out, shift

        rows: list[tuple[list[Fraction], str, Fraction]] = []
        for row, sense, rhs in self._rows:
            body, shift = expand(row)
            rows.append((body, sense, rhs - shift))
        for name, upper in self._uppers:
            body, shift = expand({name: ONE})
            rows.append((body, "<=", upper - shift))

        cost, cost_shift = expand(coeffs)
        if maximize:
            cost = [-c for c in cost]

        status, solution, objective = _simplex_min(cost, rows)
        if status != OPTIMAL:
            return LPResult(status)
        values = {}
        for name, lower, free in self._vars:
            idx = col_of[name]
            if free:
                values[name] = solution[idx[0]] - solution[idx[1]]
            else:
                values[name] = solution[idx[0]] + offsets[name]
        if maximize:
            objective = -objective
        return LPResult(OPTIMAL, objective + cost_shift, values)


def _simplex_min(
    cost: list[Fraction],
    rows: list[tuple[list[Fraction], str, Fraction]],
) -> tuple[str, Optional[list[Fraction]], Optional[Fraction]]:
    """Minimize cost over the rows; standard two-phase tableau simplex."""
    n = len(cost)
    body: list[list[Fraction]] = []
    senses: list[str] = []
    rhs: list[Fraction] = []
    for coeffs, sense, b in rows:
        coeffs = list(coeffs)
        if b < 0:
            coeffs = [-c for c in coeffs]
            b = -b
            sense = {"<=": ">=", ">=": "<=", "=": "="}[sense]
        body.append(coeffs)
        senses.append(sense)
        rhs.append(b)
    m = len(body)

    # Column layout: originals | slacks/surpluses | artificials.
    slack_cols = 0
    for sense in senses:
        if sense in ("<=", ">="):
            slack_cols += 1
    art_rows = [i for i, sense in enumerate(senses) if sense in (">=", "=")]
    total = n + slack_cols + len(art_rows)

    tableau: list[list[Fraction]] = []
    basis: list[int] = [0] * m
    slack_at = n
    art_at = n + slack_cols
    art_index: dict[int, int] = {}
    for i in art_rows:
        art_index[i] = art_at
        art_at += 1
    art_at = n + slack_cols
    for i in range(m):
        row = body[i] + [ZERO] * (total - n) + [rhs[i]]
        if senses[i] == "<=":
            row[slack_at] = ONE
            basis[i] = slack_at
            slack_at += 1
        elif senses[i] == ">=":
            row[slack_at] = -ONE
            slack_at += 1
            row[art_index[i]] = ONE
            basis[i] = art_index[i]
        else:
            row[art_index[i]] = ONE
            basis[i] = art_index[i]
        tableau.append(row)

    artificial = set(art_index.values())

    def objective_row(costs: list[Fraction]) -> list[Fraction]:
        row = list(costs) + [ZERO] * (total - len(costs)) + [ZERO]
        for r, var in enumerate(basis):
            coef = row[var]
            if coef != 0:
                trow = tableau[r]
                for k in range(total + 1):
                    row[k] -= coef * trow[k]
        return row

    def pivot(z: list[Fraction], row: int, col: int) -> None:
        trow = tableau[row]
        inv = ONE / trow[col]
        for k in range(total + 1):
            trow[k] *= inv
        for other in tableau:
            if other is trow:
                continue
            factor = other[col]
            if factor != 0:
                for k in range(total + 1):
                    other[k] -= factor * trow[k]
        factor = z[col]
        if factor != 0:
            for k in range(total + 1):
                z[k] -= factor * trow[k]
        basis[row] = col

    def run(z: list[Fraction], allowed) -> str:
        while True:
            col = -1
            for j in range(total):
                if j in allowed and z[j] < 0:
                    col = j
                    break
            if col < 0:
                return OPTIMAL
            best_row = -1
            best_ratio = None
            for i in range(m):
                a = tableau[i][col]
                if a > 0:
                    ratio = tableau[i][-1] / a
                    if (
                        best_ratio is None
                        or ratio < best_ratio
                        or (ratio == best_ratio and basis[i] < basis[best_row])
                    ):
                        best_ratio = ratio
                        best_row = i
            if best_row < 0:
                return UNBOUNDED
            pivot(z, best_row, col)

    # Phase 1: drive artificials to zero.
    if artificial:
        phase1_cost = [ZERO] * total
        for j in artificial:
            phase1_cost[j] = ONE
        z1 = objective_row(phase1_cost)
        status = run(z1, allowed=set(range(total)))
        if status != OPTIMAL or z1[-1] != 0:
            # Phase 1 is always bounded below by 0, so non-optimal cannot
            # happen; a positive optimum certifies infeasibility.
            return INFEASIBLE, None, None
        # Pivot remaining artificials out of the basis where possible.
        for i in range(m):
            if basis[i] in artificial:
                for j in range(total):
                    if j not in artificial and tableau[i][j] != 0:
                        pivot(z1, i, j)
                        break

    allowed = set(range(total)) - artificial
    z2 = objective_row(cost)
    status = run(z2, allowed)
    if status != OPTIMAL:
        return status, None, None
    values = [ZERO] * total
    for i, var in enumerate(basis):
        values[var] = tableau[i][-1]
    return OPTIMAL, values[:n], -z2[-1]
