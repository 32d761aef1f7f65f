"""Structure-constant Lie algebras over the rationals.

An algebra is a tuple of basis labels plus a sparse bracket table holding
[e_i, e_j] for i < j only.  Everything else (grading layers, Levi split,
weights) is derived from the labels, so a serialized algebra reconstructs
bit-for-bit from its label strings and table.

Label string form: "namespace:level:index:copy" with empty fields for None.
Namespaces beginning with "sl" mark the semisimple part; the level field is
the grading layer of the nilpotent part (0 for the semisimple part).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .linalg import QQ, SparseRationalMatrix, echelon_span, parse_rat, rat_str

Vec = dict[int, QQ]


class LieError(Exception):
    pass


class LabelError(LieError):
    pass


class ActionNotDerivation(LieError):
    """An intended module action fails the derivation or homomorphism law."""


@dataclass(frozen=True)
class BasisLabel:
    namespace: str
    index: int | str
    level: int | None = None
    copy: int | None = None

    def __post_init__(self):
        if ":" in self.namespace or not self.namespace:
            raise LabelError(f"bad namespace {self.namespace!r}")
        if isinstance(self.index, str):
            if not self.index or ":" in self.index or self.index.isdigit():
                raise LabelError(f"bad index {self.index!r}")

    def as_str(self) -> str:
        lv = "" if self.level is None else str(self.level)
        cp = "" if self.copy is None else str(self.copy)
        return f"{self.namespace}:{lv}:{self.index}:{cp}"

    @classmethod
    def parse(cls, s: str) -> "BasisLabel":
        parts = s.split(":")
        if len(parts) != 4:
            raise LabelError(f"bad label string {s!r}")
        ns, lv, ix, cp = parts
        index: int | str = int(ix) if ix.isdigit() else ix
        return cls(
            ns,
            index,
            int(lv) if lv else None,
            int(cp) if cp else None,
        )

    def with_copy(self, copy: int | None) -> "BasisLabel":
        return BasisLabel(self.namespace, self.index, self.level, copy)


Table = dict[tuple[int, int], dict[int, QQ]]


def _normalize_table(dim: int, table: Mapping[tuple[int, int], Mapping[int, object]]) -> Table:
    out: Table = {}
    for (i, j), col in table.items():
        if not (0 <= i < j < dim):
            raise LieError(f"bad bracket key ({i},{j}) for dim {dim}")
        cc = {}
        for k, v in col.items():
            if not 0 <= k < dim:
                raise LieError(f"bracket target {k} outside dim {dim}")
            q = QQ(v)
            if q:
                cc[k] = q
        if cc:
            out[(i, j)] = dict(sorted(cc.items()))
    return out


class LieAlgebra:
    """Immutable structure-constant algebra; helper views are cached."""

    __slots__ = ("labels", "table", "levi", "grading", "_label_pos")

    def __init__(
        self,
        labels: Sequence[BasisLabel],
        table: Mapping[tuple[int, int], Mapping[int, object]],
    ):
        self.labels = tuple(labels)
        seen = set()
        for l in self.labels:
            s = l.as_str()
            if s in seen:
                raise LabelError(f"duplicate label {s}")
            seen.add(s)
        self.table = _normalize_table(len(self.labels), table)
        sl = tuple(i for i, l in enumerate(self.labels) if l.namespace.startswith("sl"))
        rest = tuple(i for i in range(len(self.labels)) if i not in set(sl))
        self.levi = (sl, rest) if sl else None
        if self.labels and all(l.level is not None for l in self.labels):
            levels = sorted({l.level for l in self.labels})
            self.grading = tuple(
                tuple(i for i, l in enumerate(self.labels) if l.level == lv)
                for lv in levels
            )
        else:
            self.grading = None
        self._label_pos = {l.as_str(): i for i, l in enumerate(self.labels)}

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index_of(self, label: BasisLabel) -> int:
        return self._label_pos[label.as_str()]

    def bracket_basis(self, i: int, j: int) -> Vec:
        if i == j:
            return {}
        if i < j:
            return dict(self.table.get((i, j), ()))
        return {k: -v for k, v in self.table.get((j, i), {}).items()}

    def bracket(self, x: Mapping[int, object], y: Mapping[int, object]) -> Vec:
        out: Vec = {}
        xs = [(i, QQ(v)) for i, v in x.items() if QQ(v)]
        ys = [(j, QQ(v)) for j, v in y.items() if QQ(v)]
        for i, a in xs:
            for j, b in ys:
                if i == j:
                    continue
                col = self.table.get((i, j)) if i < j else self.table.get((j, i))
                if not col:
                    continue
                coef = a * b if i < j else -a * b
                for k, c in col.items():
                    w = out.get(k, QQ(0)) + coef * c
                    if w:
                        out[k] = w
                    elif k in out:
                        del out[k]
        return out

    def ad_matrix(self, i: int) -> dict[int, Vec]:
        """Columns of ad(e_i): maps basis index j to the vector [e_i, e_j]."""
        cols: dict[int, Vec] = {}
        for j in range(self.dim):
            v = self.bracket_basis(i, j)
            if v:
                cols[j] = v
        return cols


@dataclass(frozen=True)
class Subspace:
    ambient: int
    vectors: tuple[Mapping[int, QQ], ...]

    @property
    def dim(self) -> int:
        return len(self.vectors)


@dataclass(frozen=True)
class JacobiReport:
    ok: bool
    checked: int
    failures: tuple[tuple[int, int, int, Mapping[int, QQ]], ...]


def jacobiator(alg: LieAlgebra, x: Vec, y: Vec, z: Vec) -> Vec:
    out: Vec = {}
    for term in (
        alg.bracket(x, alg.bracket(y, z)),
        alg.bracket(y, alg.bracket(z, x)),
        alg.bracket(z, alg.bracket(x, y)),
    ):
        for k, v in term.items():
            w = out.get(k, QQ(0)) + v
            if w:
                out[k] = w
            elif k in out:
                del out[k]
    return out


def verify_jacobi(alg: LieAlgebra, limit_failures: int = 10) -> JacobiReport:
    """Check the Jacobi identity on every triple that can fail.

    A triple contributes only if at least one of its three pairs brackets
    nonzero, so candidates are (support pair, any third element).
    """
    triples = set()
    for (j, k) in alg.table:
        for i in range(alg.dim):
            if i == j or i == k:
                continue
            triples.add(tuple(sorted((i, j, k))))
    failures = []
    checked = 0
    for (i, j, k) in sorted(triples):
        r = _basis_jacobiator(alg, i, j, k)
        checked += 1
        if r:
            if len(failures) < limit_failures:
                failures.append((i, j, k, r))
    return JacobiReport(not failures, checked, tuple(failures))


def _basis_jacobiator(alg: LieAlgebra, i: int, j: int, k: int) -> Vec:
    out: Vec = {}
    for a, (b, c) in ((i, (j, k)), (j, (k, i)), (k, (i, j))):
        inner = alg.bracket_basis(b, c)
        for m, v in inner.items():
            col = alg.bracket_basis(a, m)
            for t, w in col.items():
                s = out.get(t, QQ(0)) + v * w
                if s:
                    out[t] = s
                elif t in out:
                    del out[t]
    return out


def center(alg: LieAlgebra) -> Subspace:
    rows: dict[tuple[int, int], dict[int, QQ]] = {}
    for (i, j), col in alg.table.items():
        for k, v in col.items():
            rows.setdefault((i, k), {})[j] = v
            rows.setdefault((j, k), {})[i] = -v
    mat = SparseRationalMatrix.from_row_dicts(
        [rows[key] for key in sorted(rows)], alg.dim
    )
    return Subspace(alg.dim, tuple(dict(v) for v in mat.nullspace()))


def subspace_bracket(alg: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    vecs = []
    for x in a.vectors:
        for y in b.vectors:
            v = alg.bracket(x, y)
            if v:
                vecs.append(v)
    span = echelon_span(vecs, alg.dim)
    return Subspace(alg.dim, tuple(row for _, row in span))


def full_space(alg: LieAlgebra) -> Subspace:
    return Subspace(alg.dim, tuple({i: QQ(1)} for i in range(alg.dim)))


def derived_series(alg: LieAlgebra) -> list[Subspace]:
    out = [full_space(alg)]
    while True:
        nxt = subspace_bracket(alg, out[-1], out[-1])
        if nxt.dim == out[-1].dim:
            break
        out.append(nxt)
        if nxt.dim == 0:
            break
    return out

def lower_central_series(alg: LieAlgebra) -> list[Subspace]:
    out = [full_space(alg)]
    while True:
        nxt = subspace_bracket(alg, out[0], out[-1])
        if nxt.dim == out[-1].dim:
            break
        out.append(nxt)
        if nxt.dim == 0:
            break
    return out


def is_perfect(alg: LieAlgebra) -> bool:
    return subspace_bracket(alg, full_space(alg), full_space(alg)).dim == alg.dim


def is_nilpotent(alg: LieAlgebra) -> bool:
    return lower_central_series(alg)[-1].dim == 0


def is_centerless(alg: LieAlgebra) -> bool:
    return center(alg).dim == 0


def quasi_cyclic_check(alg: LieAlgebra) -> int | None:
    """Each layer past the first must equal [previous layer, first layer].

    Returns None when the grading is generating in this sense, otherwise the
    1-based ordinal of the first failing layer.  Requires a graded algebra.
    """
    if alg.grading is None:
        raise LieError("algebra has no grading")
    layers = [
        Subspace(alg.dim, tuple({i: QQ(1)} for i in idxs)) for idxs in alg.grading
    ]
    first = layers[0]
    for pos in range(1, len(layers)):
        got = subspace_bracket(alg, layers[pos - 1], first)
        want = layers[pos]
        if got.dim != want.dim:
            return pos + 1
        joint = echelon_span(list(got.vectors) + list(want.vectors), alg.dim)
        if len(joint) != want.dim:
            return pos + 1
    return None


def weight_vectors(alg: LieAlgebra) -> list[tuple[QQ, ...]]:
    """Simultaneous ad-eigenvalues under the Cartan labels (sl*, index h*).

    Every Cartan ad must be diagonal on the basis; raises otherwise.  With no
    Cartan labels all weights are the empty tuple.
    """
    cartans = [
        i
        for i, l in enumerate(alg.labels)
        if l.namespace.startswith("sl") and str(l.index).startswith("h")
    ]
    weights = [[QQ(0)] * len(cartans) for _ in range(alg.dim)]
    for pos, h in enumerate(cartans):
        for j in range(alg.dim):
            col = alg.bracket_basis(h, j)
            for k, v in col.items():
                if k != j:
                    raise LieError(
                        f"ad of Cartan label {alg.labels[h].as_str()} not diagonal"
                    )
            if col:
                weights[j][pos] = col[j]
    return [tuple(w) for w in weights]


# ---------------------------------------------------------------------------
# constructions

def _merge_labels(
    a: Sequence[BasisLabel], b: Sequence[BasisLabel]
) -> tuple[list[BasisLabel], list[BasisLabel]]:
    sa = {l.as_str() for l in a}
    if not sa & {l.as_str() for l in b}:
        return list(a), list(b)
    used = [l.copy for l in (*a, *b) if l.copy is not None]
    nxt = max(used, default=0) + 1
    nb = [l.with_copy(nxt) for l in b]
    if sa & {l.as_str() for l in nb}:
        raise LabelError("copy retagging failed to separate labels")
    return list(a), nb


def direct_sum(a: LieAlgebra, b: LieAlgebra) -> LieAlgebra:
    if b.dim == 0:
        return a
    if a.dim == 0:
        return b
    la, lb = _merge_labels(a.labels, b.labels)
    off = a.dim
    table: dict[tuple[int, int], dict[int, QQ]] = {
        key: dict(col) for key, col in a.table.items()
    }
    for (i, j), col in b.table.items():
        table[(i + off, j + off)] = {k + off: v for k, v in col.items()}
    return LieAlgebra(la + lb, table)


Action = Mapping[int, Mapping[int, Mapping[int, object]]]


def _action_col(action: Action, i: int, j: int) -> Vec:
    m = action.get(i)
    if not m:
        return {}
    col = m.get(j)
    if not col:
        return {}
    return {k: QQ(v) for k, v in col.items() if QQ(v)}


def _apply_action(action: Action, i: int, x: Mapping[int, QQ]) -> Vec:
    out: Vec = {}
    for j, a in x.items():
        if not a:
            continue
        for k, v in _action_col(action, i, j).items():
            w = out.get(k, QQ(0)) + a * v
            if w:
                out[k] = w
            elif k in out:
                del out[k]
    return out


def semidirect_product(
    acting: LieAlgebra, acted: LieAlgebra, action: Action
) -> LieAlgebra:
    """Extend `acted` by `acting`; action[i][j] is the image column of e_j.

    Verifies each operator is a derivation of `acted` and that the assignment
    is a homomorphism on the brackets of `acting`; raises ActionNotDerivation
    with a witness otherwise.  Basis order is acting then acted.
    """
    for i in sorted(action):
        for j1 in range(acted.dim):
            for j2 in range(j1 + 1, acted.dim):
                lhs = _apply_action(action, i, acted.bracket_basis(j1, j2))
                rhs = acted.bracket(_action_col(action, i, j1), {j2: QQ(1)})
                for k, v in acted.bracket({j1: QQ(1)}, _action_col(action, i, j2)).items():
                    w = rhs.get(k, QQ(0)) + v
                    if w:
                        rhs[k] = w
                    elif k in rhs:
                        del rhs[k]
                if lhs != rhs:
                    raise ActionNotDerivation(
                        f"operator {i} violates the derivation law on ({j1},{j2})"
                    )
    for (i1, i2), col in acting.table.items():
        for j in range(acted.dim):
            lhs: Vec = {}
            for i, v in col.items():
                for k, w in _action_col(action, i, j).items():
                    s = lhs.get(k, QQ(0)) + v * w
                    if s:
                        lhs[k] = s
                    elif k in lhs:
                        del lhs[k]
            rhs = _apply_action(action, i1, _action_col(action, i2, j))
            for k, v in _apply_action(action, i2, _action_col(action, i1, j)).items():
                w = rhs.get(k, QQ(0)) - v
                if w:
                    rhs[k] = w
                elif k in rhs:
                    del rhs[k]
            if lhs != rhs:
                raise ActionNotDerivation(
                    f"bracket ({i1},{i2}) acts differently from the commutator on {j}"
                )
    la, lb = _merge_labels(acting.labels, acted.labels)
    off = acting.dim
    table: dict[tuple[int, int], dict[int, QQ]] = {
        key: dict(col) for key, col in acting.table.items()
    }
    for (i, j), col in acted.table.items():
        table[(i + off, j + off)] = {k + off: v for k, v in col.items()}
    for i in sorted(action):
        for j in range(acted.dim):
            col = _action_col(action, i, j)
            if col:
                table[(i, j + off)] = {k + off: v for k, v in col.items()}
    return LieAlgebra(la + lb, table)


def permute_basis(alg: LieAlgebra, perm: Sequence[int]) -> LieAlgebra:
    """perm[old] = new position."""
    if sorted(perm) != list(range(alg.dim)):
        raise LieError("not a permutation")
    labels = [None] * alg.dim
    for old, new in enumerate(perm):
        labels[new] = alg.labels[old]
    table: dict[tuple[int, int], dict[int, QQ]] = {}
    for (i, j), col in alg.table.items():
        ni, nj = perm[i], perm[j]
        sign = 1
        if ni > nj:
            ni, nj = nj, ni
            sign = -1
        table[(ni, nj)] = {perm[k]: sign * v for k, v in col.items()}
    return LieAlgebra(labels, table)


def relabel_copies(alg: LieAlgebra, copy: int | None) -> LieAlgebra:
    return LieAlgebra([l.with_copy(copy) for l in alg.labels], alg.table)


# ---------------------------------------------------------------------------
# serialization

def to_json_dict(alg: LieAlgebra) -> dict:
    brackets = []
    for (i, j) in sorted(alg.table):
        col = alg.table[(i, j)]
        brackets.append([i, j, [[k, rat_str(col[k])] for k in sorted(col)]])
    return {
        "dim": alg.dim,
        "labels": [l.as_str() for l in alg.labels],
        "brackets": brackets,
    }


def to_json_bytes(alg: LieAlgebra) -> bytes:
    return json.dumps(to_json_dict(alg), separators=(",", ":")).encode()


def from_json_dict(obj: Mapping) -> LieAlgebra:
    labels = [BasisLabel.parse(s) for s in obj["labels"]]
    if len(labels) != obj["dim"]:
        raise LieError("dim does not match label count")
    table: dict[tuple[int, int], dict[int, QQ]] = {}
    for i, j, cols in obj["brackets"]:
        table[(int(i), int(j))] = {int(k): parse_rat(s) for k, s in cols}
    return LieAlgebra(labels, table)


def from_json_bytes(data: bytes) -> LieAlgebra:
    return from_json_dict(json.loads(data.decode()))
