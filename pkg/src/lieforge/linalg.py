"""Exact sparse linear algebra over the rationals.

Matrices are dictionaries {(row, col): nonzero rational}.  Elimination works
on integer rows (denominators cleared once, gcd content divided out after
every update) so intermediate entries stay small without ever leaving exact
arithmetic.  Pivots follow a deterministic Markowitz-style rule with all
ties broken on indices, so every derived object (rank, reduced rows,
nullspace basis, particular solution) is reproducible across runs and
thread counts.

A word-sized modular rank is available as an opt-in fast path; it is a
certified lower bound on the exact rank, tagged with "modular" provenance,
and never silently replaces an exact count.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover - gmpy2 is the declared dependency
    from fractions import Fraction as QQ


class LinalgError(Exception):
    pass


class PrimeExhaustion(LinalgError):
    """Raised when every candidate prime divides some denominator."""


def rat(x) -> QQ:
    """Coerce ints, strings like "3/4", or rationals to the scalar type."""
    return QQ(x)


def rat_str(x) -> str:
    """Render with an explicit denominator, e.g. 3 -> "3/1"."""
    q = QQ(x)
    return f"{q.numerator}/{q.denominator}"


def parse_rat(s: str) -> QQ:
    """Parse "p", "-p" or "p/q" (q != 0).  Rejects anything else."""
    t = s.strip()
    body = t[1:] if t[:1] in "+-" else t
    num, slash, den = body.partition("/")
    if not num.isdigit() or (slash and not den.isdigit()):
        raise ValueError(f"not a rational literal: {s!r}")
    if slash and int(den) == 0:
        raise ValueError(f"zero denominator: {s!r}")
    return QQ(t)


# ---------------------------------------------------------------------------
# deterministic word-sized primes for the modular path

def _is_prime(n: int) -> bool:
    # deterministic Miller-Rabin for word-sized integers
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def word_primes() -> Iterator[int]:
    """Primes descending from 2**31, a fixed sequence shared by all runs."""
    n = 2**31 - 1
    while n > 2**30:
        if _is_prime(n):
            yield n
        n -= 2


_MAX_PRIME_SKIPS = 256


# ---------------------------------------------------------------------------
# integer-row sparse elimination

def _content_reduce(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = math.gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def _clear_denominators(row: Mapping[int, QQ]) -> dict[int, int]:
    if not row:
        return {}
    lcm = 1
    for v in row.values():
        lcm = math.lcm(lcm, int(v.denominator))
    out = {c: int(v.numerator) * (lcm // int(v.denominator)) for c, v in row.items()}
    return _content_reduce(out)


def _forward_eliminate(
    rows: list[dict[int, int]], forbidden_col: int | None = None
) -> tuple[list[tuple[int, dict[int, int]]], int]:
    """Markowitz-style sparse elimination on integer rows.

    Returns ([(pivot_col, row)], blocked) with pairwise distinct pivot
    columns; input rows are consumed.  `forbidden_col` is never chosen as a
    pivot; `blocked` counts rows whose support shrank to it alone (each one
    witnesses an inconsistent augmented system).  Deterministic: ties break
    on indices.
    """
    active: dict[int, dict[int, int]] = {i: r for i, r in enumerate(rows) if r}
    col_rows: dict[int, set[int]] = {}
    for i, r in active.items():
        for c in r:
            col_rows.setdefault(c, set()).add(i)
    heap: list[tuple[int, int]] = [(len(r), i) for i, r in active.items()]
    heapq.heapify(heap)
    pivots: list[tuple[int, dict[int, int]]] = []
    blocked = 0

    def pop_pivot_row() -> int | None:
        nonlocal blocked
        while heap:
            nnz, i = heapq.heappop(heap)
            row = active.get(i)
            if row is None or len(row) != nnz:
                continue
            if forbidden_col is not None and set(row) == {forbidden_col}:
                del active[i]  # contradiction row, cannot pivot
                blocked += 1
                continue
            return i
        return None

    while True:
        pi = pop_pivot_row()
        if pi is None:
            break
        prow = active.pop(pi)
        pc = min(
            (c for c in prow if c != forbidden_col),
            key=lambda c: (len(col_rows[c]), c),
        )
        pval = prow[pc]
        for c in prow:
            s = col_rows[c]
            s.discard(pi)
            if not s:
                del col_rows[c]
        targets = sorted(col_rows.get(pc, ()))
        for j in targets:
            row = active[j]
            a = row[pc]
            g = math.gcd(pval, a)
            mr, mp = pval // g, a // g
            new_row: dict[int, int] = {}
            if mr == 1:
                new_row.update(row)
            else:
                for c, v in row.items():
                    new_row[c] = v * mr
            for c, v in prow.items():
                w = new_row.get(c, 0) - v * mp
                if w:
                    new_row[c] = w
                elif c in new_row:
                    del new_row[c]
            new_row = _content_reduce(new_row)
            for c in row:
                if c not in new_row:
                    s = col_rows[c]
                    s.discard(j)
                    if not s:
                        del col_rows[c]
            for c in new_row:
                if c not in row:
                    col_rows.setdefault(c, set()).add(j)
            if new_row:
                active[j] = new_row
                heapq.heappush(heap, (len(new_row), j))
            else:
                del active[j]
        pivots.append((pc, prow))
    return pivots, blocked


def _reduced_rows(pivots: list[tuple[int, dict[int, int]]]) -> dict[int, dict[int, QQ]]:
    """Full Jordan pass: each pivot column survives only in its own row.

    Keyed by pivot column, rows normalized to pivot coefficient 1.  Given the
    deterministic pivot choice this is a canonical reduced form of the row
    space.
    """
    out: list[tuple[int, dict[int, QQ]]] = []
    for pc, irow in sorted(pivots):
        row = {c: QQ(v) for c, v in irow.items()}
        for qc, qrow in out:
            a = row.get(qc)
            if a:
                del row[qc]
                for c, v in qrow.items():
                    if c == qc:
                        continue
                    w = row.get(c, QQ(0)) - a * v
                    if w:
                        row[c] = w
                    elif c in row:
                        del row[c]
        pv = row[pc]
        if pv != 1:
            row = {c: v / pv for c, v in row.items()}
        for _, qrow in out:
            a = qrow.get(pc)
            if a:
                del qrow[pc]
                for c, v in row.items():
                    if c == pc:
                        continue
                    w = qrow.get(c, QQ(0)) - a * v
                    if w:
                        qrow[c] = w
                    elif c in qrow:
                        del qrow[c]
        out.append((pc, row))
    return dict(out)


@dataclass(frozen=True)
class NullspaceBasis:
    """Sparse kernel vectors derived from the reduced echelon rows."""

    ambient: int
    vectors: tuple[Mapping[int, QQ], ...]

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)


@dataclass(frozen=True)
class SolveResult:
    particular: Mapping[int, QQ]
    nullspace: NullspaceBasis


@dataclass(frozen=True)
class ModularRank:
    rank: int
    primes: tuple[int, ...]
    method: str = "modular"


class SparseRationalMatrix:
    """Sparse exact matrix; elimination results are cached per instance."""

    def __init__(self, rows: int, cols: int, entries: Mapping[tuple[int, int], object]):
        self.rows = rows
        self.cols = cols
        ent: dict[tuple[int, int], QQ] = {}
        for (r, c), v in entries.items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise LinalgError(f"entry ({r},{c}) outside {rows}x{cols}")
            q = QQ(v)
            if q:
                ent[(r, c)] = q
        self.entries = ent
        self._pivots: list[tuple[int, dict[int, int]]] | None = None
        self._reduced: dict[int, dict[int, QQ]] | None = None

    @classmethod
    def from_dense(cls, data: Iterable[Iterable[object]]) -> "SparseRationalMatrix":
        rows = [list(r) for r in data]
        cols = len(rows[0]) if rows else 0
        ent = {}
        for i, r in enumerate(rows):
            if len(r) != cols:
                raise LinalgError("ragged rows")
            for j, v in enumerate(r):
                if QQ(v):
                    ent[(i, j)] = QQ(v)
        return cls(len(rows), cols, ent)

    @classmethod
    def from_row_dicts(
        cls, row_dicts: Iterable[Mapping[int, object]], cols: int
    ) -> "SparseRationalMatrix":
        ent = {}
        n = 0
        for i, r in enumerate(row_dicts):
            n = i + 1
            for c, v in r.items():
                if QQ(v):
                    ent[(i, c)] = QQ(v)
        return cls(n, cols, ent)

    def nnz(self) -> int:
        return len(self.entries)

    def row_dicts(self) -> list[dict[int, QQ]]:
        rows: list[dict[int, QQ]] = [dict() for _ in range(self.rows)]
        for (r, c), v in sorted(self.entries.items()):
            rows[r][c] = v
        return rows

    def transpose(self) -> "SparseRationalMatrix":
        return SparseRationalMatrix(
            self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()}
        )

    def apply(self, x: Mapping[int, object]) -> dict[int, QQ]:
        """Matrix-vector product with a sparse vector."""
        out: dict[int, QQ] = {}
        xs = {c: QQ(v) for c, v in x.items() if QQ(v)}
        for (r, c), v in self.entries.items():
            a = xs.get(c)
            if a:
                w = out.get(r, QQ(0)) + v * a
                if w:
                    out[r] = w
                elif r in out:
                    del out[r]
        return out

    def _pivot_data(self) -> list[tuple[int, dict[int, int]]]:
        if self._pivots is None:
            int_rows = [_clear_denominators(r) for r in self.row_dicts()]
            self._pivots, _ = _forward_eliminate(int_rows)
        return self._pivots

    def reduced_rows(self) -> dict[int, dict[int, QQ]]:
        if self._reduced is None:
            self._reduced = _reduced_rows(self._pivot_data())
        return self._reduced

    def rank(self) -> int:
        return len(self._pivot_data())

    def nullspace(self) -> NullspaceBasis:
        red = self.reduced_rows()
        free = [c for c in range(self.cols) if c not in red]
        vecs = []
        for f in free:
            v: dict[int, QQ] = {f: QQ(1)}
            for pc, row in red.items():
                a = row.get(f)
                if a:
                    v[pc] = -a
            vecs.append(v)
        return NullspaceBasis(self.cols, tuple(vecs))

    def solve(self, b: Mapping[int, object] | Iterable[object]) -> SolveResult | None:
        """Particular solution of M x = b with free variables at zero, or None."""
        if isinstance(b, Mapping):
            bd = {int(r): QQ(v) for r, v in b.items() if QQ(v)}
            if any(not 0 <= r < self.rows for r in bd):
                raise LinalgError("rhs index out of range")
        else:
            bl = list(b)
            if len(bl) != self.rows:
                raise LinalgError("rhs length mismatch")
            bd = {i: QQ(v) for i, v in enumerate(bl) if QQ(v)}
        aug_col = self.cols
        int_rows = []
        for i, r in enumerate(self.row_dicts()):
            if i in bd:
                r = dict(r)
                r[aug_col] = bd[i]
            int_rows.append(_clear_denominators(r))
        pivots, blocked = _forward_eliminate(int_rows, forbidden_col=aug_col)
        if blocked:
            return None
        red = _reduced_rows(pivots)
        x: dict[int, QQ] = {}
        for pc, row in red.items():
            v = row.get(aug_col)
            if v:
                x[pc] = v
        return SolveResult(x, self.nullspace())

    def rank_modular(self, confidence: int = 1) -> ModularRank:
        """Rank mod `confidence` distinct primes: a certified lower bound."""
        if confidence < 1:
            raise LinalgError("confidence must be >= 1")
        rows = self.row_dicts()
        best = 0
        used: list[int] = []
        skipped = 0
        gen = word_primes()
        while len(used) < confidence:
            p = next(gen)
            try:
                int_rows = [_row_mod_p(r, p) for r in rows]
            except ZeroDivisionError:
                skipped += 1
                if skipped > _MAX_PRIME_SKIPS:
                    raise PrimeExhaustion(
                        f"no usable prime after {skipped} candidates"
                    ) from None
                continue
            best = max(best, _rank_mod_p(int_rows, p))
            used.append(p)
        return ModularRank(best, tuple(used))


def _row_mod_p(row: Mapping[int, QQ], p: int) -> dict[int, int]:
    out = {}
    for c, v in row.items():
        den = int(v.denominator) % p
        if den == 0:
            raise ZeroDivisionError
        w = int(v.numerator) % p * pow(den, -1, p) % p
        if w:
            out[c] = w
    return out


def _rank_mod_p(rows: list[dict[int, int]], p: int) -> int:
    active: dict[int, dict[int, int]] = {i: r for i, r in enumerate(rows) if r}
    col_rows: dict[int, set[int]] = {}
    for i, r in active.items():
        for c in r:
            col_rows.setdefault(c, set()).add(i)
    heap: list[tuple[int, int]] = [(len(r), i) for i, r in active.items()]
    heapq.heapify(heap)
    rank = 0
    while True:
        pi = None
        while heap:
            nnz, i = heapq.heappop(heap)
            row = active.get(i)
            if row is not None and len(row) == nnz:
                pi = i
                break
        if pi is None:
            break
        prow = active.pop(pi)
        pc = min(prow, key=lambda c: (len(col_rows[c]), c))
        inv = pow(prow[pc], -1, p)
        for c in prow:
            s = col_rows[c]
            s.discard(pi)
            if not s:
                del col_rows[c]
        for j in sorted(col_rows.get(pc, ())):
            row = active[j]
            m = row[pc] * inv % p
            new_row = dict(row)
            for c, v in prow.items():
                w = (new_row.get(c, 0) - m * v) % p
                if w:
                    new_row[c] = w
                elif c in new_row:
                    del new_row[c]
            for c in row:
                if c not in new_row:
                    s = col_rows[c]
                    s.discard(j)
                    if not s:
                        del col_rows[c]
            for c in new_row:
                if c not in row:
                    col_rows.setdefault(c, set()).add(j)
            if new_row:
                active[j] = new_row
                heapq.heappush(heap, (len(new_row), j))
            else:
                del active[j]
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# span utilities shared by the structure modules

def echelon_span(
    vectors: Iterable[Mapping[int, object]], ambient: int
) -> list[tuple[int, dict[int, QQ]]]:
    """Reduced-row basis of the span of sparse vectors.

    Returns (pivot_col, row) pairs sorted by pivot column; each row has
    coefficient 1 at its pivot and that column appears in no other row.
    """
    mat = SparseRationalMatrix.from_row_dicts(list(vectors), ambient)
    red = mat.reduced_rows()
    return [(pc, dict(sorted(red[pc].items()))) for pc in sorted(red)]


def reduce_mod_span(
    vector: Mapping[int, object],
    span_reduced: list[tuple[int, dict[int, QQ]]],
) -> dict[int, QQ]:
    """Residue of a vector after eliminating the pivots of an echelon_span."""
    v = {c: QQ(x) for c, x in vector.items() if QQ(x)}
    for pc, row in span_reduced:
        a = v.get(pc)
        if a:
            for c, w in row.items():
                r = v.get(c, QQ(0)) - a * w
                if r:
                    v[c] = r
                elif c in v:
                    del v[c]
    return v
