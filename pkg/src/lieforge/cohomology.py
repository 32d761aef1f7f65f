"""Derivation algebras and Chevalley-Eilenberg cohomology.

Derivations are found as the nullspace of the Leibniz system, split into
independent blocks by the weight grading whenever Cartan labels are present.
Adjoint cohomology comes in two flavours: the full complex on the whole
algebra, and the invariant complex on the nilradical (cochains killed by the
sl2 raising and lowering operators), which computes the same H^k whenever a
semisimple summand is present.  Everything is exact; the one modular shortcut
(derivation dimensions) is certified against the exact inner lower bound.
"""

from __future__ import annotations

import os
from bisect import bisect_left
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Mapping, Sequence

from .core import LieAlgebra, LieError, center, verify_jacobi, weight_vectors
from .families import JacobiFailure
from .linalg import (
    QQ,
    SparseRationalMatrix,
    echelon_span,
    rat,
    rat_str,
    reduce_mod_span,
)
from .sl2 import clebsch_gordan, wedge_multiplicities

MAX_FULL_COCHAIN_ENV = "LIEFORGE_MAX_FULL_COCHAIN"
_DEFAULT_MAX_FULL = 25000


class SizeExceeded(LieError):
    """A full-complex computation would exceed the configured cochain bound."""


class NotACocycle(LieError):
    """The distinguished 2-cochain failed a check it is supposed to pass."""


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class DerivationReport:
    dim_der: int
    dim_inner: int
    dim_outer: int
    outer_basis: tuple[Mapping[tuple[int, int], QQ], ...]
    is_complete: bool

    def to_json_dict(self) -> dict:
        return {
            "dim_der": self.dim_der,
            "dim_inner": self.dim_inner,
            "dim_outer": self.dim_outer,
            "is_complete": self.is_complete,
            "outer_basis": [
                [[i, j, rat_str(v)] for (i, j), v in sorted(m.items())]
                for m in self.outer_basis
            ],
        }


@dataclass(frozen=True)
class CohomologyReport:
    degree: int
    dim_cochain: int
    dim_cocycles: int
    dim_coboundaries: int
    dim_cohomology: int
    method: str
    invariant_layers: Mapping[int, int] = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "degree": self.degree,
            "method": self.method,
            "dim_cochain": self.dim_cochain,
            "dim_cocycles": self.dim_cocycles,
            "dim_coboundaries": self.dim_coboundaries,
            "dim_cohomology": self.dim_cohomology,
            "invariant_layers": {
                str(k): v for k, v in sorted(self.invariant_layers.items())
            },
        }


@dataclass(frozen=True)
class Cochain:
    """Alternating k-form on a chosen source with values in the algebra.

    Entries are keyed by strictly increasing tuples of basis indices; values
    on other argument orders follow by alternation.
    """

    degree: int
    source: tuple[int, ...]
    entries: Mapping[tuple[int, ...], Mapping[int, QQ]]

    @property
    def source_dim(self) -> int:
        return len(self.source)

    def value(self, args: Sequence[int]) -> dict[int, QQ]:
        key = tuple(args)
        if len(key) != self.degree:
            raise LieError(f"expected {self.degree} arguments, got {len(key)}")
        if len(set(key)) != len(key):
            return {}
        order = tuple(sorted(key))
        sign = _permutation_sign(key, order)
        vec = self.entries.get(order)
        if not vec:
            return {}
        return {m: sign * v for m, v in vec.items()}


def _permutation_sign(seq: Sequence[int], target: Sequence[int]) -> QQ:
    work = list(seq)
    sign = 1
    for pos in range(len(work)):
        want = target[pos]
        at = work.index(want, pos)
        if at != pos:
            work[pos], work[at] = work[at], work[pos]
            sign = -sign
    return QQ(sign)


# ---------------------------------------------------------------------------
# gradings and chain bookkeeping


def _weights(alg: LieAlgebra) -> list[tuple[QQ, ...]]:
    return weight_vectors(alg)


def _wadd(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def _wsub(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def _chain_groups(alg: LieAlgebra) -> list[tuple[int, int]]:
    """Maximal runs of labels sharing (namespace, level, copy): (start, size)."""
    groups: list[tuple[int, int]] = []
    prev = None
    for i, l in enumerate(alg.labels):
        key = (l.namespace, l.level, l.copy)
        if key != prev:
            groups.append((i, 1))
            prev = key
        else:
            start, size = groups[-1]
            groups[-1] = (start, size + 1)
    return groups


def _sl2_triple(alg: LieAlgebra) -> tuple[int, int, int]:
    """Indices (h, e, f) of the unique rank-one semisimple part."""
    named = {}
    for i, l in enumerate(alg.labels):
        if l.namespace.startswith("sl"):
            if l.namespace != "sl2":
                raise LieError("invariant complex needs a rank-one semisimple part")
            named[l.index] = i
    if sorted(named) != ["e12", "f12", "h1"]:
        raise LieError("no sl2 triple among the labels")
    return named["h1"], named["e12"], named["f12"]


def _nilradical_indices(alg: LieAlgebra) -> tuple[int, ...]:
    return tuple(
        i for i, l in enumerate(alg.labels) if not l.namespace.startswith("sl")
    )


# ---------------------------------------------------------------------------
# the Leibniz system

# Derivations are matrices M with D(e_j) = sum_s M[s, j] e_s; the unknown
# vector index of M[s, j] is s * dim + j.


def _bracket_adjacency(alg: LieAlgebra):
    """by_right[j] lists (s, columns of [e_s, e_j]) over nonzero brackets."""
    by_right: dict[int, list[tuple[int, dict[int, QQ]]]] = {}
    for (p, q), cols in alg.table.items():
        by_right.setdefault(q, []).append((p, dict(cols)))
        by_right.setdefault(p, []).append((q, {t: -v for t, v in cols.items()}))
    return by_right


def _leibniz_rows(alg: LieAlgebra):
    """Yield sparse rows of the Leibniz system, keyed by unknown index."""
    d = alg.dim
    by_right = _bracket_adjacency(alg)
    for i in range(d):
        for j in range(i + 1, d):
            rows: dict[int, dict[int, QQ]] = {}
            cij = alg.bracket_basis(i, j)
            if cij:
                for t in range(d):
                    row = rows.setdefault(t, {})
                    for k, v in cij.items():
                        row[t * d + k] = row.get(t * d + k, QQ(0)) + v
            for s, cols in by_right.get(j, ()):
                for t, v in cols.items():
                    row = rows.setdefault(t, {})
                    var = s * d + i
                    row[var] = row.get(var, QQ(0)) - v
            for s, cols in by_right.get(i, ()):
                # [e_i, D e_j] contributes +[e_s, e_i] components per unknown
                for t, v in cols.items():
                    row = rows.setdefault(t, {})
                    var = s * d + j
                    row[var] = row.get(var, QQ(0)) + v
            for t in sorted(rows):
                row = {c: v for c, v in rows[t].items() if v}
                if row:
                    yield row


def _derivation_blocks(alg: LieAlgebra):
    """Partition unknowns and Leibniz rows by weight degree.

    Returns (block order, vars per block, rows per block).  Without Cartan
    labels there is a single block holding the whole system.
    """
    d = alg.dim
    wts = _weights(alg)
    deg_of_var = {}
    block_vars: dict[tuple, list[int]] = {}
    for s in range(d):
        for j in range(d):
            deg = _wsub(wts[s], wts[j])
            var = s * d + j
            deg_of_var[var] = deg
            block_vars.setdefault(deg, []).append(var)
    block_rows: dict[tuple, list[dict[int, QQ]]] = {deg: [] for deg in block_vars}
    for row in _leibniz_rows(alg):
        degs = {deg_of_var[c] for c in row}
        if len(degs) != 1:
            raise LieError("Leibniz row mixes weight degrees")
        block_rows[degs.pop()].append(row)
    order = sorted(block_vars)
    return order, block_vars, block_rows


def _inner_vectors(alg: LieAlgebra) -> list[dict[int, QQ]]:
    d = alg.dim
    out = []
    for m in range(d):
        vec: dict[int, QQ] = {}
        for j, cols in alg.ad_matrix(m).items():
            for t, v in cols.items():
                vec[t * d + j] = v
        out.append(vec)
    return out


def derivation_algebra(alg: LieAlgebra, *, modular: bool = False) -> DerivationReport:
    """Dimensions and outer representatives of the derivation algebra.

    With modular=True the per-block nullities are bounded above with modular
    ranks; the bound is accepted only when it meets the exact inner dimension
    (every ad matrix is a derivation, so dim Der >= dim - dim center always),
    otherwise the exact path runs.  Outer representatives come back in echelon
    form modulo the inner subspace.
    """
    d = alg.dim
    dim_inner = d - center(alg).dim
    order, block_vars, block_rows = _derivation_blocks(alg)

    if modular:
        bound = 0
        for deg in order:
            nvars = block_vars[deg]
            rows = block_rows[deg]
            if not rows:
                bound += len(nvars)
                continue
            local = {c: k for k, c in enumerate(nvars)}
            mat = SparseRationalMatrix.from_row_dicts(
                [{local[c]: v for c, v in r.items()} for r in rows], len(nvars)
            )
            bound += len(nvars) - mat.rank_modular().rank
        if bound == dim_inner:
            return DerivationReport(dim_inner, dim_inner, 0, (), center(alg).dim == 0)
        # the bound left room above the inner space: fall through to exact

    basis: list[dict[int, QQ]] = []
    for deg in order:
        nvars = block_vars[deg]
        rows = block_rows[deg]
        local = {c: k for k, c in enumerate(nvars)}
        if rows:
            mat = SparseRationalMatrix.from_row_dicts(
                [{local[c]: v for c, v in r.items()} for r in rows], len(nvars)
            )
            for vec in mat.nullspace():
                basis.append({nvars[c]: v for c, v in vec.items()})
        else:
            basis.extend({c: QQ(1)} for c in nvars)

    dim_der = len(basis)
    if dim_der < dim_inner:
        raise LieError("derivation count fell below the inner dimension")
    inner_span = echelon_span(_inner_vectors(alg), d * d)
    if len(inner_span) != dim_inner:
        raise LieError("inner derivations do not span dim - dim center")
    outer_rows: list[dict[int, QQ]] = []
    outer_span = list(inner_span)
    for vec in basis:
        res = reduce_mod_span(vec, outer_span)
        if res:
            piv = min(res)
            unit = {c: v / res[piv] for c, v in res.items()}
            outer_span.append((piv, unit))
            outer_span.sort(key=lambda pr: pr[0])
            outer_rows.append(unit)
    outer = tuple(
        {(var // d, var % d): v for var, v in sorted(row.items())}
        for _, row in echelon_span(outer_rows, d * d)
    )
    dim_outer = dim_der - dim_inner
    if len(outer) != dim_outer:
        raise LieError("outer representatives disagree with the dimension count")
    return DerivationReport(
        dim_der, dim_inner, dim_outer, outer, dim_outer == 0 and center(alg).dim == 0
    )


def _matrix_is_derivation(alg: LieAlgebra, cols: Mapping[int, Mapping[int, QQ]]) -> bool:
    def image(j):
        return dict(cols.get(j, ()))

    # zero brackets still constrain: [Dx, y] + [x, Dy] must vanish there
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            lhs: dict[int, QQ] = {}
            for k, v in alg.bracket_basis(i, j).items():
                for t, w in image(k).items():
                    lhs[t] = lhs.get(t, QQ(0)) + v * w
            rhs = alg.bracket(image(i), {j: QQ(1)})
            for t, w in alg.bracket({i: QQ(1)}, image(j)).items():
                rhs[t] = rhs.get(t, QQ(0)) + w
            for t in set(lhs) | set(rhs):
                if lhs.get(t, QQ(0)) != rhs.get(t, QQ(0)):
                    return False
    return True


def commutant_derivations(nil: LieAlgebra, action) -> tuple[Mapping[tuple[int, int], QQ], ...]:
    """Derivations of a nilpotent algebra commuting with an sl2 action.

    The action is a ModuleAction whose e/h/f columns must each be a derivation
    of the algebra; the result is the canonical echelon basis of the joint
    nullspace of the Leibniz and commutation systems.
    """
    d = nil.dim
    if action.dim != d:
        raise LieError("action dimension does not match the algebra")
    gens = [("e", action.e), ("h", action.h), ("f", action.f)]
    for name, cols in gens:
        if not _matrix_is_derivation(nil, cols):
            raise LieError(f"action matrix {name} is not a derivation")
    rows = list(_leibniz_rows(nil))
    for _, cols in gens:
        # (D G - G D)(e_j) = 0, one row per output coordinate t
        dense: dict[tuple[int, int], QQ] = {}
        for j, col in cols.items():
            for u, g in col.items():
                dense[(u, j)] = g
        for j in range(d):
            per_t: dict[int, dict[int, QQ]] = {}
            for u, g in cols.get(j, {}).items():
                for t in range(d):
                    row = per_t.setdefault(t, {})
                    var = t * d + u
                    row[var] = row.get(var, QQ(0)) + g
            for s in range(d):
                col_s = cols.get(s)
                if not col_s:
                    continue
                for t, g in col_s.items():
                    row = per_t.setdefault(t, {})
                    var = s * d + j
                    row[var] = row.get(var, QQ(0)) - g
            for t in sorted(per_t):
                row = {c: v for c, v in per_t[t].items() if v}
                if row:
                    rows.append(row)
    mat = SparseRationalMatrix.from_row_dicts(rows, d * d)
    span = echelon_span(list(mat.nullspace()), d * d)
    return tuple(
        {(var // d, var % d): v for var, v in sorted(row.items())} for _, row in span
    )


def completeness_check(alg: LieAlgebra) -> bool:
    """True when the center vanishes and every derivation is inner."""
    if center(alg).dim != 0:
        return False
    return derivation_algebra(alg).dim_outer == 0


# ---------------------------------------------------------------------------
# the Chevalley-Eilenberg complex
#
# Cochain vectors are dicts keyed by (T, m): T a strictly increasing tuple of
# source indices, m a basis index of the coefficient algebra.


class _SourceData:
    def __init__(self, alg: LieAlgebra, source: Sequence[int]):
        self.alg = alg
        self.source = tuple(source)
        self.sset = frozenset(source)
        by_target: dict[int, list[tuple[tuple[int, int], QQ]]] = {}
        for (u, v), cols in alg.table.items():
            if u in self.sset and v in self.sset:
                for w, g in cols.items():
                    if w not in self.sset:
                        raise LieError("source is not closed under the bracket")
                    by_target.setdefault(w, []).append(((u, v), g))
        self.by_target = by_target
        self._gen_rev: dict[int, dict[int, list[tuple[int, QQ]]]] = {}

    def gen_preimages(self, gen: int) -> dict[int, list[tuple[int, QQ]]]:
        """For w, the source elements x with [e_gen, e_x] having a w component."""
        cached = self._gen_rev.get(gen)
        if cached is None:
            cached = {}
            for x in self.source:
                for w, g in self.alg.bracket_basis(gen, x).items():
                    cached.setdefault(w, []).append((x, g))
            self._gen_rev[gen] = cached
        return cached


def _vadd(out: dict, key, val: QQ) -> None:
    cur = out.get(key, QQ(0)) + val
    if cur:
        out[key] = cur
    elif key in out:
        del out[key]


def _apply_d(sd: _SourceData, vec: Mapping) -> dict:
    """Coboundary of a cochain vector; degree inferred from the keys."""
    alg = sd.alg
    out: dict = {}
    for (T, m), a in vec.items():
        for u in sd.source:
            if u in T:
                continue
            p = bisect_left(T, u)
            S = T[:p] + (u,) + T[p:]
            sign = QQ(-1) ** p
            for t, v in alg.bracket_basis(u, m).items():
                _vadd(out, (S, t), a * sign * v)
        for q, w in enumerate(T):
            rest = T[:q] + T[q + 1 :]
            for (u, v), g in sd.by_target.get(w, ()):
                if u in rest or v in rest:
                    continue
                S = tuple(sorted(rest + (u, v)))
                i = S.index(u)
                j = S.index(v)
                _vadd(out, (S, m), a * g * QQ(-1) ** (i + j + q))
    return out


def _apply_gen(sd: _SourceData, gen: int, vec: Mapping) -> dict:
    """Action of one algebra element on a cochain: rotate value, contract args.

    The contraction runs over preimages: the basis cochain at (T, m) picks up
    argument tuples U that bracket into a slot of T, transposed to the
    evaluation formula (g.F)(U) = [g, F(U)] - sum_q F(.., [g, U_q], ..).
    """
    rev = sd.gen_preimages(gen)
    out: dict = {}
    for (T, m), a in vec.items():
        for t, v in sd.alg.bracket_basis(gen, m).items():
            _vadd(out, (T, t), a * v)
        for r, w in enumerate(T):
            rest = T[:r] + T[r + 1 :]
            for x, g in rev.get(w, ()):
                if x == w:
                    _vadd(out, (T, m), -a * g)
                    continue
                if x in rest:
                    continue
                q = bisect_left(rest, x)
                U = rest[:q] + (x,) + rest[q:]
                _vadd(out, (U, m), -a * g * QQ(-1) ** (q - r))
    return out


def _cochain_weight(wts, T, m) -> tuple:
    w = wts[m]
    for x in T:
        w = _wsub(w, wts[x])
    return w


def _max_full_cochain() -> int:
    raw = os.environ.get(MAX_FULL_COCHAIN_ENV)
    if raw is None:
        return _DEFAULT_MAX_FULL
    try:
        return int(raw)
    except ValueError:
        raise LieError(f"{MAX_FULL_COCHAIN_ENV} must be an integer, got {raw!r}")


def ce_differential(alg: LieAlgebra, module: str, k: int) -> SparseRationalMatrix:
    """Matrix of d_k in the increasing-tuple basis, C^k -> C^{k+1}.

    module selects the source: "adjoint" uses the whole algebra, "nilradical"
    the non-semisimple labels; coefficients are the adjoint module either way.
    The complex identity d∘d = 0 is exercised by the test suite.
    """
    if k < 0:
        raise LieError("degree must be nonnegative")
    if module == "adjoint":
        source = tuple(range(alg.dim))
    elif module == "nilradical":
        source = _nilradical_indices(alg)
    else:
        raise LieError(f"unknown coefficient module spec {module!r}")
    sd = _SourceData(alg, source)
    d = alg.dim
    cols_tuples = list(combinations(source, k))
    rows_tuples = list(combinations(source, k + 1))
    row_pos = {T: i for i, T in enumerate(rows_tuples)}
    entries: dict[tuple[int, int], QQ] = {}
    for ct, T in enumerate(cols_tuples):
        for m in range(d):
            img = _apply_d(sd, {(T, m): QQ(1)})
            col = ct * d + m
            for (S, t), v in img.items():
                entries[(row_pos[S] * d + t, col)] = v
    return SparseRationalMatrix(len(rows_tuples) * d, len(cols_tuples) * d, entries)


def _blocked_rank_of_d(alg: LieAlgebra, sd: _SourceData, k: int) -> int:
    """Exact rank of d_k, split over the weight grading of the cochain basis."""
    d = alg.dim
    wts = _weights(alg)
    blocks: dict[tuple, list[dict]] = {}
    for T in combinations(sd.source, k):
        for m in range(d):
            img = _apply_d(sd, {(T, m): QQ(1)})
            blocks.setdefault(_cochain_weight(wts, T, m), []).append(img)
    total = 0
    for deg in sorted(blocks):
        cols = blocks[deg]
        rowmap: dict = {}
        entries: dict[tuple[int, int], QQ] = {}
        for c, img in enumerate(cols):
            for key, v in img.items():
                r = rowmap.setdefault(key, len(rowmap))
                entries[(r, c)] = v
        if entries:
            total += SparseRationalMatrix(len(rowmap), len(cols), entries).rank()
    return total


def cohomology_full(alg: LieAlgebra, k: int) -> CohomologyReport:
    """Adjoint cohomology from the full complex; guarded by the cochain bound."""
    if not 0 <= k <= 2:
        raise LieError("full cohomology is provided for degrees 0..2")
    d = alg.dim
    dim_ck = comb(d, k) * d
    limit = _max_full_cochain()
    if dim_ck > limit:
        raise SizeExceeded(
            f"C^{k} has dimension {dim_ck} > {limit}; raise {MAX_FULL_COCHAIN_ENV}"
        )
    sd = _SourceData(alg, range(d))
    rank_k = _blocked_rank_of_d(alg, sd, k)
    rank_km1 = _blocked_rank_of_d(alg, sd, k - 1) if k else 0
    z = dim_ck - rank_k
    h = z - rank_km1
    if h < 0:
        raise LieError("negative cohomology dimension: rank bookkeeping is broken")
    return CohomologyReport(k, dim_ck, z, rank_km1, h, "full")


# ---------------------------------------------------------------------------
# the invariant complex


def _invariant_layer(alg: LieAlgebra, k: int):
    """Raw invariant basis: vectors over (T, m) keys plus the source data."""
    if k < 0:
        raise LieError("degree must be nonnegative")
    h, e, f = _sl2_triple(alg)
    source = _nilradical_indices(alg)
    sd = _SourceData(alg, source)
    wts = _weights(alg)
    zero = tuple(QQ(0) for _ in wts[0])
    groups = _chain_groups(alg)
    chain_of = {}
    for gi, (start, size) in enumerate(groups):
        for i in range(start, start + size):
            chain_of[i] = gi

    blocks: dict[tuple, list] = {}
    for T in combinations(source, k):
        for m in range(alg.dim):
            if _cochain_weight(wts, T, m) != zero:
                continue
            key = (tuple(sorted(chain_of[x] for x in T)), chain_of[m])
            blocks.setdefault(key, []).append((T, m))

    basis: list[dict] = []
    for key in sorted(blocks):
        cols = blocks[key]
        rowmap: dict = {}
        entries: dict[tuple[int, int], QQ] = {}
        for c, (T, m) in enumerate(cols):
            for tag, gen in (("e", e), ("f", f)):
                for out_key, v in _apply_gen(sd, gen, {(T, m): QQ(1)}).items():
                    r = rowmap.setdefault((tag, out_key), len(rowmap))
                    entries[(r, c)] = v
        mat = SparseRationalMatrix(len(rowmap), len(cols), entries)
        for vec in mat.nullspace():
            basis.append({cols[c]: v for c, v in vec.items()})

    for vec in basis:
        if _apply_gen(sd, h, vec):
            raise LieError("invariant cochain is not annihilated by the Cartan")
    expected = _schur_count(alg, k)
    if len(basis) != expected:
        raise LieError(
            f"invariant basis has {len(basis)} elements, Schur count gives {expected}"
        )
    return basis, sd


def _schur_count(alg: LieAlgebra, k: int) -> int:
    """Dimension of Hom_sl2(wedge^k N, L) from highest-weight bookkeeping."""
    groups = _chain_groups(alg)
    nil_lams = []
    all_lams = []
    for start, size in groups:
        lam = size - 1
        all_lams.append(lam)
        if not alg.labels[start].namespace.startswith("sl"):
            nil_lams.append(lam)
    mult_l = Counter(all_lams)
    if k == 0:
        return mult_l[0]
    if k == 1:
        mult_n = Counter(nil_lams)
        return sum(mult_n[lam] * mult_l[lam] for lam in mult_n)
    if k == 2:
        wedge: Counter = Counter()
        for a in range(len(nil_lams)):
            for lam in wedge_multiplicities(nil_lams[a]):
                wedge[lam] += wedge_multiplicities(nil_lams[a])[lam]
            for b in range(a + 1, len(nil_lams)):
                for lam in clebsch_gordan(nil_lams[a], nil_lams[b]):
                    wedge[lam] += 1
        return sum(wedge[lam] * mult_l[lam] for lam in wedge)
    raise LieError("Schur counts are provided for degrees 0..2")


def invariant_cochain_basis(alg: LieAlgebra, k: int) -> list[Cochain]:
    """Basis of the sl2-invariant k-cochains on the nilradical.

    Computed blockwise as the joint kernel of the raising and lowering
    operators on the weight-zero slice; the Cartan annihilation and the Schur
    pairing count are both asserted.
    """
    basis, sd = _invariant_layer(alg, k)
    out = []
    for vec in basis:
        nested: dict[tuple[int, ...], dict[int, QQ]] = {}
        for (T, m), v in sorted(vec.items()):
            nested.setdefault(T, {})[m] = v
        out.append(Cochain(k, sd.source, nested))
    return out


def _rank_of_images(images: Sequence[Mapping]) -> int:
    rowmap: dict = {}
    entries: dict[tuple[int, int], QQ] = {}
    for c, img in enumerate(images):
        for key, v in img.items():
            r = rowmap.setdefault(key, len(rowmap))
            entries[(r, c)] = v
    if not entries:
        return 0
    return SparseRationalMatrix(len(rowmap), len(images), entries).rank()


def cohomology_invariant(alg: LieAlgebra, k: int) -> CohomologyReport:
    """Adjoint cohomology through the invariant complex on the nilradical.

    Valid whenever the algebra splits off the sl2 acting on its nilradical;
    coboundaries in degree k come from the invariant (k-1)-layer, and images
    are checked to stay invariant before ranks are taken.
    """
    if not 0 <= k <= 2:
        raise LieError("invariant cohomology is provided for degrees 0..2")
    _, e, f = _sl2_triple(alg)
    basis_k, sd = _invariant_layer(alg, k)
    images = [_apply_d(sd, vec) for vec in basis_k]
    for img in images:
        if _apply_gen(sd, e, img) or _apply_gen(sd, f, img):
            raise LieError("coboundary left the invariant complex")
    rank_k = _rank_of_images(images)
    z = len(basis_k) - rank_k
    layers = {k: len(basis_k)}
    if k == 0:
        b = 0
    else:
        basis_km1, _ = _invariant_layer(alg, k - 1)
        layers[k - 1] = len(basis_km1)
        b = _rank_of_images([_apply_d(sd, vec) for vec in basis_km1])
    h = z - b
    if h < 0:
        raise LieError("negative cohomology dimension: rank bookkeeping is broken")
    return CohomologyReport(k, len(basis_k), z, b, h, "invariant", layers)


# ---------------------------------------------------------------------------
# the distinguished 2-cocycle and deformations


def _psi_entries(alg: LieAlgebra):
    from .core import BasisLabel

    copy = 1 if any(l.copy == 1 for l in alg.labels) else None
    try:
        x1 = alg.index_of(BasisLabel("x", 1, level=1, copy=copy))
        x2 = alg.index_of(BasisLabel("x", 2, level=1, copy=copy))
        y1 = alg.index_of(BasisLabel("y", 1, level=1, copy=copy))
        y2 = alg.index_of(BasisLabel("y", 2, level=1, copy=copy))
        c = alg.index_of(BasisLabel("c", 1, level=2, copy=copy))
    except KeyError:
        raise LieError("algebra has no labelled weight-one probe chains") from None
    entries: dict[tuple[int, ...], dict[int, QQ]] = {}
    for u, v, sgn in ((x1, y2, QQ(1)), (x2, y1, QQ(-1))):
        if u > v:
            u, v, sgn = v, u, -sgn
        entries[(u, v)] = {c: sgn}
    return entries


def build_psi_cocycle(alg: LieAlgebra) -> Cochain:
    """The pairing of the two weight-one chains into the scalar line.

    Verified on construction: sl2 invariance, closedness, and non-membership
    in the coboundaries (the defining properties of the deformation class).
    """
    entries = _psi_entries(alg)
    source = _nilradical_indices(alg)
    sd = _SourceData(alg, source)
    _, e, f = _sl2_triple(alg)
    vec = {(T, m): v for T, col in entries.items() for m, v in col.items()}
    if _apply_gen(sd, e, vec) or _apply_gen(sd, f, vec):
        raise NotACocycle("the distinguished 2-cochain is not invariant")
    if _apply_d(sd, vec):
        raise NotACocycle("the distinguished 2-cochain is not closed")
    if _is_exact_2cochain(alg, sd, vec):
        raise NotACocycle("the distinguished 2-cochain is a coboundary")
    return Cochain(2, source, entries)


def _is_exact_2cochain(alg: LieAlgebra, sd: _SourceData, vec: Mapping) -> bool:
    """Solve d g = vec over the weight slice of the 1-cochains matching vec."""
    wts = _weights(alg)
    degs = {_cochain_weight(wts, T, m) for (T, m) in vec}
    cols = []
    for u in sd.source:
        for m in range(alg.dim):
            if _cochain_weight(wts, (u,), m) in degs:
                cols.append(_apply_d(sd, {((u,), m): QQ(1)}))
    rowmap: dict = {}
    entries: dict[tuple[int, int], QQ] = {}
    for c, img in enumerate(cols):
        for key, v in img.items():
            r = rowmap.setdefault(key, len(rowmap))
            entries[(r, c)] = v
    rhs = {}
    for key, v in vec.items():
        r = rowmap.setdefault(key, len(rowmap))
        rhs[r] = v
    mat = SparseRationalMatrix(len(rowmap), len(cols), entries)
    return mat.solve(rhs) is not None


def maurer_cartan_check(psi: Cochain, alg: LieAlgebra) -> bool:
    """Exact vanishing of the cyclic sum psi(psi(x,y),z) on basis triples."""
    if psi.degree != 2:
        raise LieError("the Maurer-Cartan check needs a 2-cochain")

    def pair(i: int, j: int) -> dict[int, QQ]:
        if i == j:
            return {}
        if i < j:
            return dict(psi.entries.get((i, j), ()))
        return {m: -v for m, v in psi.entries.get((j, i), {}).items()}

    candidates = set()
    for (i, j) in psi.entries:
        for r in range(alg.dim):
            if r != i and r != j:
                candidates.add(tuple(sorted((i, j, r))))
    for (i, j, r) in sorted(candidates):
        acc: dict[int, QQ] = {}
        for a, b, cth in ((i, j, r), (j, r, i), (r, i, j)):
            inner = pair(a, b)
            for m, v in inner.items():
                for t, w in pair(m, cth).items():
                    _vadd(acc, t, v * w)
        if acc:
            return False
    return True


def deform_bracket(alg: LieAlgebra, psi: Cochain, t) -> LieAlgebra:
    """Bracket shifted by t times the 2-cochain; the result is Jacobi-gated."""
    tq = rat(t)
    table: dict[tuple[int, int], dict[int, QQ]] = {}
    pairs = set(alg.table) | set(psi.entries)
    for (i, j) in pairs:
        cols = dict(alg.bracket_basis(i, j))
        for m, v in psi.entries.get((i, j), {}).items():
            _vadd(cols, m, tq * v)
        cols = {m: v for m, v in cols.items() if v}
        if cols:
            table[(i, j)] = cols
    out = LieAlgebra(list(alg.labels), table)
    rep = verify_jacobi(out)
    if not rep.ok:
        raise JacobiFailure(
            f"deformation at t={rat_str(tq)} breaks Jacobi on "
            f"{len(rep.failures)} triples",
            failures=rep.failures,
        )
    return out
