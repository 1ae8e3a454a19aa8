"""Exact rational LP: bounded-variable simplex with Bland's rule and row generation.

The tableau works on ``gmpy2.mpq`` for speed; everything that crosses the
module boundary is a ``fractions.Fraction``. A :class:`RowGenerationLP`
keeps its tableau between calls, so callers can add cuts, fix variables or
drop rows and re-optimise from the previous basis (dual simplex after a
cut, primal simplex after a relaxation).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Optional

from gmpy2 import mpq

ZERO = mpq(0)
ONE = mpq(1)

MAX_ROUNDS = 10_000


class LPError(RuntimeError):
    pass


class Infeasible(LPError):
    pass


class Unbounded(LPError):
    pass


class IterationLimit(LPError):
    pass


def _q(v) -> mpq:
    return v if isinstance(v, type(ZERO)) else mpq(v)


def _f(v) -> Fraction:
    return Fraction(int(v.numerator), int(v.denominator))


@dataclass
class Row:
    coefs: dict
    sense: str  # "<=", "==" or ">="
    rhs: Fraction
    kind: str = "explicit"  # "rank", "cut", "bound" or "explicit"
    tag: object = None

    def __post_init__(self):
        if self.sense not in ("<=", "==", ">="):
            raise ValueError(f"bad sense {self.sense!r}")
        self.coefs = {k: Fraction(v) for k, v in self.coefs.items() if v != 0}
        self.rhs = Fraction(self.rhs)

    def key(self):
        return (tuple(sorted(self.coefs.items())), self.sense, self.rhs)

    def activity(self, x: dict) -> Fraction:
        return sum((c * x.get(k, 0) for k, c in self.coefs.items()), Fraction(0))

    def violation(self, x: dict) -> Fraction:
        a = self.activity(x)
        if self.sense == "<=":
            return max(a - self.rhs, Fraction(0))
        if self.sense == ">=":
            return max(self.rhs - a, Fraction(0))
        return abs(a - self.rhs)

    def is_tight(self, x: dict) -> bool:
        return self.activity(x) == self.rhs

    def __str__(self):
        lhs = " + ".join(f"{c}*x{k}" for k, c in sorted(self.coefs.items())) or "0"
        return f"{lhs} {self.sense} {self.rhs}"


Oracle = Callable[[dict], list]


@dataclass
class LinearProgram:
    """``min objective . x`` over ``rows``, ``0 <= x_j <= upper[j]`` and oracle rows.

    ``upper[j]`` is ``None`` for an unbounded variable. Each oracle takes the
    current point and returns a (possibly empty) list of violated rows.
    """

    variables: list
    objective: dict = field(default_factory=dict)
    rows: list = field(default_factory=list)
    upper: dict = field(default_factory=dict)
    oracles: list = field(default_factory=list)
    max_rounds: int = MAX_ROUNDS


@dataclass
class BasicSolution:
    x: dict
    value: Fraction
    program: LinearProgram  # includes every generated row
    rounds: int = 0

    @cached_property
    def tight(self) -> list:
        """A defining system: ``len(variables)`` independent tight rows."""
        return defining_rows(self.program, self.x)


# ------------------------------------------------------------------ tableau

class _Tableau:
    """Rows ``T x = rhs`` with ``T[i][basis[i]] = 1``; nonbasic values in ``xn``."""

    def __init__(self, costs, lower, upper):
        self.cost = [_q(c) for c in costs]
        self.lo = [None if v is None else _q(v) for v in lower]
        self.up = [None if v is None else _q(v) for v in upper]
        self.ncols = len(costs)
        self.T = []
        self.rhs = []
        self.basis = []
        self.is_basic = [False] * self.ncols
        self.xn = [lo if lo is not None else ZERO for lo in self.lo]
        self.d = list(self.cost)
        self.pivots = 0

    # -- structure
    def add_row(self, coefs: dict, sense: str, rhs) -> int:
        s = self.ncols
        self.ncols += 1
        for r in self.T:
            r.append(ZERO)
        self.cost.append(ZERO)
        self.d.append(ZERO)
        self.lo.append(ZERO if sense in ("<=", "==") else None)
        self.up.append(ZERO if sense in (">=", "==") else None)
        self.xn.append(ZERO)
        self.is_basic.append(True)
        row = [ZERO] * self.ncols
        for j, a in coefs.items():
            row[j] = _q(a)
        row[s] = ONE
        b = _q(rhs)
        for i, bv in enumerate(self.basis):
            f = row[bv]
            if f:
                Ti = self.T[i]
                for j, v in enumerate(Ti):
                    if v:
                        row[j] -= f * v
                b -= f * self.rhs[i]
        self.T.append(row)
        self.rhs.append(b)
        self.basis.append(s)
        return s

    def remove_basic_column(self, s: int) -> None:
        r = self.basis.index(s)
        del self.T[r], self.rhs[r], self.basis[r]
        for row in self.T:
            del row[s]
        for arr in (self.cost, self.d, self.lo, self.up, self.xn, self.is_basic):
            del arr[s]
        self.ncols -= 1
        self.basis = [b - 1 if b > s else b for b in self.basis]

    # -- values
    def basic_values(self) -> list:
        nz = [(j, v) for j, v in enumerate(self.xn) if v and not self.is_basic[j]]
        out = []
        for i in range(len(self.basis)):
            Ti = self.T[i]
            val = self.rhs[i]
            for j, v in nz:
                a = Ti[j]
                if a:
                    val -= a * v
            out.append(val)
        return out

    def values(self) -> list:
        x = list(self.xn)
        for b, val in zip(self.basis, self.basic_values()):
            x[b] = val
        return x

    def recompute_reduced_costs(self) -> None:
        d = list(self.cost)
        for i, b in enumerate(self.basis):
            cb = self.cost[b]
            if cb:
                for j, v in enumerate(self.T[i]):
                    if v:
                        d[j] -= cb * v
        for b in self.basis:
            d[b] = ZERO
        self.d = d

    def pivot(self, r: int, q: int) -> None:
        self.pivots += 1
        Tr = self.T[r]
        piv = Tr[q]
        if piv != ONE:
            inv = ONE / piv
            for j, v in enumerate(Tr):
                if v:
                    Tr[j] = v * inv
            self.rhs[r] *= inv
        nz = [(j, v) for j, v in enumerate(Tr) if v]
        br = self.rhs[r]
        for i, Ti in enumerate(self.T):
            if i == r:
                continue
            f = Ti[q]
            if f:
                for j, v in nz:
                    Ti[j] -= f * v
                self.rhs[i] -= f * br
        dq = self.d[q]
        if dq:
            d = self.d
            for j, v in nz:
                d[j] -= dq * v
        old = self.basis[r]
        self.is_basic[old] = False
        self.is_basic[q] = True
        self.basis[r] = q

    # -- algorithms
    def _movable(self, j):
        """Directions (+1/-1) in which nonbasic ``j`` may move."""
        lo, up, v = self.lo[j], self.up[j], self.xn[j]
        dirs = []
        if up is None or v < up:
            dirs.append(1)
        if lo is None or v > lo:
            dirs.append(-1)
        return dirs

    def primal(self, limit: int = 1_000_000) -> str:
        """Bland's-rule primal simplex from a primal feasible basis."""
        for _ in range(limit):
            q = direction = None
            for j in range(self.ncols):
                if self.is_basic[j]:
                    continue
                dj = self.d[j]
                if not dj:
                    continue
                want = 1 if dj < 0 else -1
                if want in self._movable(j):
                    q, direction = j, want
                    break
            if q is None:
                return "optimal"
            beta = self.basic_values()
            best = None  # (t, var index, row or None)
            lo, up = self.lo[q], self.up[q]
            if lo is not None and up is not None:
                best = (up - lo, q, None)
            for i, b in enumerate(self.basis):
                alpha = self.T[i][q] * direction
                if not alpha:
                    continue
                if alpha > 0:
                    if self.lo[b] is None:
                        continue
                    t = (beta[i] - self.lo[b]) / alpha
                else:
                    if self.up[b] is None:
                        continue
                    t = (self.up[b] - beta[i]) / (-alpha)
                if best is None or t < best[0] or (t == best[0] and b < best[1]):
                    best = (t, b, i)
            if best is None:
                return "unbounded"
            t, b, r = best
            if r is None:
                self.xn[q] = up if direction > 0 else lo
                continue
            alpha = self.T[r][q] * direction
            self.xn[q] = self.xn[q] + direction * t
            self.xn[b] = self.lo[b] if alpha > 0 else self.up[b]
            self.pivot(r, q)
        raise IterationLimit("primal simplex iteration limit")

    def dual(self, limit: int = 1_000_000) -> str:
        """Bland's-rule dual simplex from a dual feasible basis."""
        for _ in range(limit):
            beta = self.basic_values()
            r = None
            for i, b in enumerate(self.basis):
                lo, up = self.lo[b], self.up[b]
                if (lo is not None and beta[i] < lo) or (up is not None and beta[i] > up):
                    if r is None or b < self.basis[r]:
                        r = i
            if r is None:
                return "optimal"
            b = self.basis[r]
            below = self.lo[b] is not None and beta[r] < self.lo[b]
            Tr = self.T[r]
            best = None
            for j in range(self.ncols):
                if self.is_basic[j]:
                    continue
                a = Tr[j]
                if not a or self.lo[j] is not None and self.lo[j] == self.up[j]:
                    continue
                # moving x_j by +1 changes x_b by -a
                need = 1 if (a < 0) == below else -1
                if need not in self._movable(j):
                    continue
                ratio = abs(self.d[j] / a)
                if best is None or ratio < best[0]:
                    best = (ratio, j)
            if best is None:
                return "infeasible"
            q = best[1]
            self.xn[b] = self.lo[b] if below else self.up[b]
            self.pivot(r, q)
        raise IterationLimit("dual simplex iteration limit")

    def primal_feasible(self) -> bool:
        for b, val in zip(self.basis, self.basic_values()):
            if (self.lo[b] is not None and val < self.lo[b]) or (self.up[b] is not None and val > self.up[b]):
                return False
        return True

    def make_dual_feasible(self) -> bool:
        """Move nonbasic variables to the bound their reduced cost prefers."""
        for j in range(self.ncols):
            if self.is_basic[j]:
                continue
            dj, lo, up = self.d[j], self.lo[j], self.up[j]
            if lo is not None and lo == up:
                continue
            if dj > 0:
                if lo is None:
                    return False
                self.xn[j] = lo
            elif dj < 0:
                if up is None:
                    return False
                self.xn[j] = up
        return True

    def optimize(self) -> str:
        if self.primal_feasible():
            return self.primal()
        saved = list(self.xn)
        if self.make_dual_feasible():
            return self.dual()
        self.xn = saved
        self.d = [ZERO] * self.ncols
        status = self.dual()
        self.recompute_reduced_costs()
        if status == "infeasible":
            return status
        return self.primal()

    def push_into_basis(self, q: int) -> None:
        """Bring a free nonbasic column into the basis without changing the objective."""
        beta = self.basic_values()
        for direction in (1, -1):
            best = None
            for i, b in enumerate(self.basis):
                alpha = self.T[i][q] * direction
                if not alpha:
                    continue
                if alpha > 0 and self.lo[b] is not None:
                    t = (beta[i] - self.lo[b]) / alpha
                elif alpha < 0 and self.up[b] is not None:
                    t = (self.up[b] - beta[i]) / (-alpha)
                else:
                    continue
                if best is None or t < best[0] or (t == best[0] and b < best[1]):
                    best = (t, b, i)
            if best is not None:
                t, b, r = best
                alpha = self.T[r][q] * direction
                self.xn[q] = self.xn[q] + direction * t
                self.xn[b] = self.lo[b] if alpha > 0 else self.up[b]
                self.pivot(r, q)
                return
        raise LPError("free column cannot enter the basis (unbounded face)")


# ------------------------------------------------------------ row generation

class RowGenerationLP:
    """A persistent exact LP that is re-optimised after every modification."""

    def __init__(self, lp: LinearProgram):
        self.variables = list(lp.variables)
        self.col = {v: j for j, v in enumerate(self.variables)}
        costs = [lp.objective.get(v, 0) for v in self.variables]
        upper = [lp.upper.get(v) for v in self.variables]
        self.tab = _Tableau(costs, [0] * len(costs), upper)
        self.objective = dict(lp.objective)
        self.upper = dict(lp.upper)
        self.oracles = list(lp.oracles)
        self.max_rounds = lp.max_rounds
        self.rows = []  # active rows, parallel to self.slack
        self.slack = []
        self.keys = set()
        self.fixed = {}
        self.rounds = 0
        for row in lp.rows:
            self.add_row(row)

    def add_row(self, row: Row) -> bool:
        key = row.key()
        if key in self.keys:
            return False
        unknown = set(row.coefs) - set(self.col)
        if unknown:
            raise ValueError(f"row mentions unknown variables {sorted(unknown)}")
        self.keys.add(key)
        s = self.tab.add_row({self.col[k]: c for k, c in row.coefs.items()}, row.sense, row.rhs)
        self.rows.append(row)
        self.slack.append(s)
        return True

    def fix(self, var, value) -> None:
        """Pin a variable at its current value (``x_e = 0`` deletion or ``x_e = 1`` contraction)."""
        j = self.col[var]
        v = _q(value)
        x = self.tab.values()
        if x[j] != v:
            raise LPError(f"cannot fix x[{var}] = {value}: current value {_f(x[j])}")
        self.tab.lo[j] = self.tab.up[j] = v
        if not self.tab.is_basic[j]:
            self.tab.xn[j] = v
        self.fixed[var] = Fraction(value)

    def drop_row(self, row: Row) -> None:
        """Remove an active row; the previous optimum stays feasible."""
        k = next(i for i, r in enumerate(self.rows) if r is row)
        s = self.slack[k]
        tab = self.tab
        tab.lo[s] = tab.up[s] = None
        if not tab.is_basic[s]:
            if tab.d[s]:
                if tab.primal() != "optimal":
                    raise Unbounded("objective unbounded after dropping a row")
            if not tab.is_basic[s]:
                tab.push_into_basis(s)
        tab.remove_basic_column(s)
        del self.rows[k], self.slack[k]
        self.slack = [c - 1 if c > s else c for c in self.slack]
        self.keys.discard(row.key())

    def point(self) -> dict:
        x = self.tab.values()
        return {v: _f(x[j]) for v, j in self.col.items()}

    def solve(self) -> BasicSolution:
        status = self.tab.optimize()
        while True:
            if status == "infeasible":
                raise Infeasible("LP is infeasible")
            if status == "unbounded":
                raise Unbounded("LP is unbounded")
            x = self.point()
            added = 0
            fresh = set()
            for oracle in self.oracles:
                for row in oracle(x):
                    if row.violation(x) <= 0 or row.key() in fresh:
                        continue
                    if not self.add_row(row):
                        raise LPError(f"oracle returned a row already in the LP: {row}")
                    fresh.add(row.key())
                    added += 1
            if not added:
                break
            self.rounds += 1
            if self.rounds > self.max_rounds:
                raise IterationLimit(f"more than {self.max_rounds} separation rounds")
            status = self.tab.dual()
        value = sum((c * x[v] for v, c in self.objective.items()), Fraction(0))
        program = LinearProgram(self.variables, self.objective, list(self.rows),
                                self._bounds(), self.oracles, self.max_rounds)
        return BasicSolution(x, value, program, self.rounds)

    def _bounds(self) -> dict:
        return dict(self.upper)


def solve_basic(lp: LinearProgram) -> BasicSolution:
    """Basic optimal solution of ``lp`` by row generation over its oracles.

    Raises :class:`Infeasible` or :class:`Unbounded`.
    """
    return RowGenerationLP(lp).solve()


# ---------------------------------------------------------- vertex checking

def _bound_rows(lp: LinearProgram, x: dict) -> list:
    out = []
    for v in lp.variables:
        if x[v] == 0:
            out.append(Row({v: 1}, ">=", 0, kind="bound", tag=v))
        up = lp.upper.get(v)
        if up is not None and x[v] == up:
            out.append(Row({v: 1}, "<=", up, kind="bound", tag=v))
    return out


_PREFERENCE = {"bound": 0, "rank": 1, "explicit": 2, "cut": 3}


def defining_rows(lp: LinearProgram, x: dict) -> list:
    """Greedy maximal independent set of tight rows.

    Bounds come first, then rank/polytope rows, then laminar cut rows.
    """
    tight = _bound_rows(lp, x) + [r for r in lp.rows if r.is_tight(x)]
    tight.sort(key=lambda r: _PREFERENCE.get(r.kind, 2))
    echelon = []  # (pivot var, reduced row dict)
    chosen = []
    for row in tight:
        vec = dict(row.coefs)
        for p, prow in echelon:
            f = vec.get(p)
            if f:
                for k, c in prow.items():
                    nv = vec.get(k, 0) - f * c
                    if nv:
                        vec[k] = nv
                    else:
                        vec.pop(k, None)
        if vec:
            p = min(vec)
            inv = 1 / vec[p]
            vec = {k: c * inv for k, c in vec.items()}
            for i, (q, qrow) in enumerate(echelon):
                f = qrow.get(p)
                if f:
                    for k, c in vec.items():
                        nv = qrow.get(k, 0) - f * c
                        if nv:
                            qrow[k] = nv
                        else:
                            qrow.pop(k, None)
            echelon.append((p, vec))
            chosen.append(row)
    return chosen


def check_vertex(lp: LinearProgram, x: dict) -> Optional[str]:
    """``None`` if ``x`` is feasible for the listed rows and a vertex, else a defect message."""
    for v in lp.variables:
        if x[v] < 0 or (lp.upper.get(v) is not None and x[v] > lp.upper[v]):
            return f"x[{v}] = {x[v]} violates its bounds"
    for r in lp.rows:
        if r.violation(x):
            return f"row violated: {r}"
    rank = len(defining_rows(lp, x))
    if rank != len(lp.variables):
        return f"tight rows have rank {rank} < {len(lp.variables)} variables"
    return None


def dump_lp(lp: LinearProgram) -> str:
    """Plain-text listing with exact rationals, one constraint per line."""
    lines = ["minimize " + (" + ".join(f"{c}*x{v}" for v, c in sorted(lp.objective.items()) if c) or "0"),
             "subject to"]
    lines += [f"  {r}    [{r.kind}]" for r in lp.rows]
    lines.append("bounds")
    for v in lp.variables:
        up = lp.upper.get(v)
        lines.append(f"  0 <= x{v}" + ("" if up is None else f" <= {up}"))
    if lp.oracles:
        lines.append(f"# plus {len(lp.oracles)} separation oracle(s)")
    return "\n".join(lines)
