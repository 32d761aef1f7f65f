"""Polynomial realization of sl2 modules and transvectant products.

The irreducible module of highest weight lam lives on binary forms of
degree lam: basis slot i (0-based) is the monomial p^(lam-i) q^i.  The
sl2 triple acts by Poisson bracket with h = -pq, e = p^2/2, f = -q^2/2,
which reproduces the ladder

    h.v_i = (lam - 2i) v_i,   e.v_i = i v_{i-1},   f.v_i = (lam - i) v_{i+1}.

The r-th transvectant of two forms is the unique (up to scale)
equivariant pairing V_a x V_b -> V_{a+b-2r}.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial
from typing import Iterable, Mapping, Sequence

from .core import Action, LieAlgebra, BasisLabel, LieError
from .linalg import QQ, SparseRationalMatrix

Poly = dict[tuple[int, int], QQ]


class NonDiagonalizable(LieError):
    """The Cartan operator is not diagonalizable with integer eigenvalues."""


def mono(a: int, b: int, coeff=1) -> Poly:
    q = QQ(coeff)
    return {(a, b): q} if q else {}


def poly_add(u: Poly, v: Poly) -> Poly:
    out = dict(u)
    for k, c in v.items():
        w = out.get(k, QQ(0)) + c
        if w:
            out[k] = w
        elif k in out:
            del out[k]
    return out


def poly_scale(u: Poly, c) -> Poly:
    q = QQ(c)
    if not q:
        return {}
    return {k: v * q for k, v in u.items()}


def poly_mul(u: Poly, v: Poly) -> Poly:
    out: Poly = {}
    for (a1, b1), c1 in u.items():
        for (a2, b2), c2 in v.items():
            k = (a1 + a2, b1 + b2)
            w = out.get(k, QQ(0)) + c1 * c2
            if w:
                out[k] = w
            elif k in out:
                del out[k]
    return out


def pdiff(u: Poly, dp: int, dq: int) -> Poly:
    out: Poly = {}
    for (a, b), c in u.items():
        if a < dp or b < dq:
            continue
        coeff = c
        for t in range(dp):
            coeff *= a - t
        for t in range(dq):
            coeff *= b - t
        if coeff:
            out[(a - dp, b - dq)] = coeff
    return out


def poisson_bracket(u: Poly, v: Poly) -> Poly:
    return poly_add(
        poly_mul(pdiff(u, 1, 0), pdiff(v, 0, 1)),
        poly_scale(poly_mul(pdiff(u, 0, 1), pdiff(v, 1, 0)), -1),
    )


def transvectant(r: int, u: Poly, v: Poly) -> Poly:
    if r < 0:
        raise LieError("transvectant order must be nonnegative")
    out: Poly = {}
    for k in range(r + 1):
        term = poly_mul(pdiff(u, r - k, k), pdiff(v, k, r - k))
        out = poly_add(out, poly_scale(term, (-1) ** k * comb(r, k)))
    return out


H_POLY: Poly = {(1, 1): QQ(-1)}
E_POLY: Poly = {(2, 0): QQ(1, 2)}
F_POLY: Poly = {(0, 2): QQ(-1, 2)}


def equivariance_residual(r: int, u: Poly, v: Poly, s: Poly) -> Poly:
    lhs = poisson_bracket(s, transvectant(r, u, v))
    rhs = poly_add(
        transvectant(r, poisson_bracket(s, u), v),
        transvectant(r, u, poisson_bracket(s, v)),
    )
    return poly_add(lhs, poly_scale(rhs, -1))


def standard_irreducible(lam: int) -> list[Poly]:
    if lam < 0:
        raise LieError("highest weight must be nonnegative")
    return [mono(lam - i, i) for i in range(lam + 1)]


# ---------------------------------------------------------------------------
# module actions as sparse column maps, the format semidirect_product takes

Cols = dict[int, dict[int, QQ]]


@dataclass(frozen=True)
class ModuleAction:
    """Action of the sl2 triple (e, h, f) on a dim-dimensional space."""

    dim: int
    e: Cols
    h: Cols
    f: Cols

    def as_action(self, e_idx: int, h_idx: int, f_idx: int) -> Action:
        return {e_idx: self.e, h_idx: self.h, f_idx: self.f}

    def check_relations(self) -> None:
        he = _col_commutator(self.h, self.e)
        if he != _col_scale(self.e, 2):
            raise LieError("[h,e] != 2e on module")
        hf = _col_commutator(self.h, self.f)
        if hf != _col_scale(self.f, -2):
            raise LieError("[h,f] != -2f on module")
        ef = _col_commutator(self.e, self.f)
        if ef != {j: dict(c) for j, c in self.h.items()}:
            raise LieError("[e,f] != h on module")


def _col_apply(cols: Cols, j: int) -> dict[int, QQ]:
    return dict(cols.get(j, ()))


def _col_compose(a: Cols, b: Cols, dim_hint: int | None = None) -> Cols:
    out: Cols = {}
    for j, col in b.items():
        acc: dict[int, QQ] = {}
        for k, v in col.items():
            for t, w in _col_apply(a, k).items():
                s = acc.get(t, QQ(0)) + v * w
                if s:
                    acc[t] = s
                elif t in acc:
                    del acc[t]
        if acc:
            out[j] = acc
    return out


def _col_commutator(a: Cols, b: Cols) -> Cols:
    ab = _col_compose(a, b)
    ba = _col_compose(b, a)
    out: Cols = {}
    for j in set(ab) | set(ba):
        acc = dict(ab.get(j, ()))
        for k, v in ba.get(j, {}).items():
            w = acc.get(k, QQ(0)) - v
            if w:
                acc[k] = w
            elif k in acc:
                del acc[k]
        if acc:
            out[j] = acc
    return out


def _col_scale(a: Cols, c) -> Cols:
    q = QQ(c)
    if not q:
        return {}
    return {j: {k: v * q for k, v in col.items()} for j, col in a.items()}


def ladder_action(lam: int) -> ModuleAction:
    """Irreducible action on slots 0..lam in the monomial realization."""
    e: Cols = {}
    h: Cols = {}
    f: Cols = {}
    for i in range(lam + 1):
        if i > 0:
            e[i] = {i - 1: QQ(i)}
        w = lam - 2 * i
        if w:
            h[i] = {i: QQ(w)}
        if i < lam:
            f[i] = {i + 1: QQ(lam - i)}
    return ModuleAction(lam + 1, e, h, f)


def action_from_poisson(basis: Sequence[Poly]) -> ModuleAction:
    """Expand the Poisson action of (e, h, f) in a monomial basis."""
    pos = {}
    for i, b in enumerate(basis):
        if len(b) != 1:
            raise LieError("basis entries must be monomials")
        ((key, c),) = b.items()
        pos[key] = (i, c)
    out = {}
    for name, s in (("e", E_POLY), ("h", H_POLY), ("f", F_POLY)):
        cols: Cols = {}
        for j, b in enumerate(basis):
            img = poisson_bracket(s, b)
            col: dict[int, QQ] = {}
            for key, c in img.items():
                if key not in pos:
                    raise LieError(f"action leaves the span at slot {j}")
                i, base_c = pos[key]
                col[i] = c / base_c
            if col:
                cols[j] = col
        out[name] = cols
    return ModuleAction(len(basis), out["e"], out["h"], out["f"])


def direct_sum_actions(parts: Sequence[ModuleAction]) -> ModuleAction:
    e: Cols = {}
    h: Cols = {}
    f: Cols = {}
    off = 0
    for p in parts:
        for src, dst in ((p.e, e), (p.h, h), (p.f, f)):
            for j, col in src.items():
                dst[j + off] = {k + off: v for k, v in col.items()}
        off += p.dim
    return ModuleAction(off, e, h, f)


def tensor_action(a: ModuleAction, b: ModuleAction) -> ModuleAction:
    def pair(j1, j2):
        return j1 * b.dim + j2

    def build(ca: Cols, cb: Cols) -> Cols:
        cols: Cols = {}
        for j1 in range(a.dim):
            for j2 in range(b.dim):
                col: dict[int, QQ] = {}
                for k, v in _col_apply(ca, j1).items():
                    col[pair(k, j2)] = v
                for k, v in _col_apply(cb, j2).items():
                    t = pair(j1, k)
                    w = col.get(t, QQ(0)) + v
                    if w:
                        col[t] = w
                    elif t in col:
                        del col[t]
                if col:
                    cols[pair(j1, j2)] = col
        return cols

    return ModuleAction(a.dim * b.dim, build(a.e, b.e), build(a.h, b.h), build(a.f, b.f))


def wedge_action(a: ModuleAction, k: int) -> ModuleAction:
    from itertools import combinations

    tuples = list(combinations(range(a.dim), k))
    pos = {t: i for i, t in enumerate(tuples)}

    def build(ca: Cols) -> Cols:
        cols: Cols = {}
        for t in tuples:
            col: dict[int, QQ] = {}
            for slot in range(k):
                for tgt, v in _col_apply(ca, t[slot]).items():
                    parts = list(t)
                    parts[slot] = tgt
                    if len(set(parts)) != k:
                        continue
                    order = sorted(range(k), key=lambda s: parts[s])
                    sign = _perm_sign(order)
                    key = pos[tuple(sorted(parts))]
                    w = col.get(key, QQ(0)) + sign * v
                    if w:
                        col[key] = w
                    elif key in col:
                        del col[key]
            if col:
                cols[pos[t]] = col
        return cols

    return ModuleAction(len(tuples), build(a.e), build(a.h), build(a.f))


def _perm_sign(order: list[int]) -> int:
    sign = 1
    seen = [False] * len(order)
    for i in range(len(order)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


# ---------------------------------------------------------------------------
# decomposition into irreducibles

def clebsch_gordan(l1: int, l2: int) -> tuple[int, ...]:
    """Highest weights in V_{l1} (x) V_{l2}, descending."""
    return tuple(range(l1 + l2, abs(l1 - l2) - 1, -2))


def weights_to_multiplicities(weights: Iterable[int]) -> dict[int, int]:
    counts: dict[int, int] = {}
    for w in weights:
        counts[w] = counts.get(w, 0) + 1
    out: dict[int, int] = {}
    top = max(counts, default=0)
    for lam in range(top, -1, -1):
        m = counts.get(lam, 0) - counts.get(lam + 2, 0)
        if m < 0:
            raise NonDiagonalizable("weight counts are not unimodal")
        if m:
            out[lam] = m
    total = sum(m * (lam + 1) for lam, m in out.items())
    if total != sum(counts.values()):
        raise NonDiagonalizable("weights do not assemble into sl2 strings")
    return out


def wedge_multiplicities(lam: int, k: int = 2) -> dict[int, int]:
    """Irreducible content of the k-th exterior power of V_lam, by weights."""
    from itertools import combinations

    slots = [lam - 2 * i for i in range(lam + 1)]
    return weights_to_multiplicities(
        sum(c) for c in combinations(slots, k)
    )


def decompose_module(act: ModuleAction) -> dict[int, int]:
    """Multiplicities of irreducibles in an sl2 module, highest weight -> count."""
    act.check_relations()
    weights: list[int] = []
    diagonal = True
    for j in range(act.dim):
        col = _col_apply(act.h, j)
        if set(col) - {j}:
            diagonal = False
            break
        w = col.get(j, QQ(0))
        if w.denominator != 1:
            raise NonDiagonalizable(f"non-integer weight {w} at slot {j}")
        weights.append(int(w))
    if not diagonal:
        ent = {}
        for j, col in act.h.items():
            for i, v in col.items():
                ent[(i, j)] = v
        found = 0
        counts: dict[int, int] = {}
        for mu in range(-act.dim, act.dim + 1):
            shifted = dict(ent)
            for d in range(act.dim):
                shifted[(d, d)] = shifted.get((d, d), QQ(0)) - mu
            m = SparseRationalMatrix(act.dim, act.dim, shifted)
            nul = act.dim - m.rank()
            if nul:
                counts[mu] = nul
                found += nul
        if found != act.dim:
            raise NonDiagonalizable("Cartan operator has defective eigenspaces")
        weights = [w for w, c in counts.items() for _ in range(c)]
    out = weights_to_multiplicities(weights)
    ent = {}
    for j, col in act.e.items():
        for i, v in col.items():
            ent[(i, j)] = v
    e_mat = SparseRationalMatrix(act.dim, act.dim, ent)
    if act.dim - e_mat.rank() != sum(out.values()):
        raise NonDiagonalizable("kernel of e does not match string count")
    return out


def equivariant_hom_dimension(
    d1: Mapping[int, int], d2: Mapping[int, int]
) -> int:
    return sum(m * d2.get(lam, 0) for lam, m in d1.items())


# ---------------------------------------------------------------------------
# sl_m and its symmetric-power action

def _slm_names(m: int) -> list[tuple[str, dict[tuple[int, int], QQ]]]:
    out: list[tuple[str, dict[tuple[int, int], QQ]]] = []
    for i in range(1, m):
        out.append((f"h{i}", {(i - 1, i - 1): QQ(1), (i, i): QQ(-1)}))
    offs = [(j - i, i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1)]
    offs.sort()
    for _, i, j in offs:
        out.append((f"e{i}{j}", {(i - 1, j - 1): QQ(1)}))
    for _, i, j in offs:
        out.append((f"f{i}{j}", {(j - 1, i - 1): QQ(1)}))
    return out


def _mat_commutator(a, b, m):
    out = {}
    for (i, k1), v in a.items():
        for (k2, j), w in b.items():
            if k1 == k2:
                key = (i, j)
                s = out.get(key, QQ(0)) + v * w
                if s:
                    out[key] = s
                elif key in out:
                    del out[key]
    for (i, k1), v in b.items():
        for (k2, j), w in a.items():
            if k1 == k2:
                key = (i, j)
                s = out.get(key, QQ(0)) - v * w
                if s:
                    out[key] = s
                elif key in out:
                    del out[key]
    return out


def _expand_in_slm_basis(mat, m: int) -> dict[int, QQ]:
    """Coefficients of a traceless matrix in the (h, e, f) basis."""
    names = _slm_names(m)
    coeffs: dict[int, QQ] = {}
    rest = dict(mat)
    for idx, (name, basis_mat) in enumerate(names):
        if name.startswith("h"):
            continue
        ((key, c),) = basis_mat.items()
        v = rest.get(key)
        if v:
            coeffs[idx] = v / c
            del rest[key]
    diag = [rest.get((i, i), QQ(0)) for i in range(m)]
    if any(k[0] != k[1] for k in rest):
        raise LieError("matrix not in the span of the basis")
    if sum(diag, QQ(0)):
        raise LieError("matrix has nonzero trace")
    acc = QQ(0)
    for t in range(m - 1):
        acc += diag[t]
        if acc:
            coeffs[t] = acc
    return coeffs


def slm_algebra(m: int) -> LieAlgebra:
    names = _slm_names(m)
    labels = [BasisLabel(f"sl{m}", name, level=0) for name, _ in names]
    table = {}
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            comm = _mat_commutator(names[i][1], names[j][1], m)
            if comm:
                table[(i, j)] = _expand_in_slm_basis(comm, m)
    return LieAlgebra(labels, table)


def sym_monomials(m: int, k: int) -> list[tuple[int, ...]]:
    """Exponent tuples of degree k in m variables, descending lex."""
    out = []

    def rec(prefix, left, slots):
        if slots == 1:
            out.append(prefix + (left,))
            return
        for a in range(left, -1, -1):
            rec(prefix + (a,), left - a, slots - 1)

    rec((), k, m)
    return out


def slm_module_action(m: int, k: int) -> tuple[list[tuple[int, ...]], dict[str, Cols]]:
    """Polarization action of the sl_m basis on degree-k monomials."""
    monos = sym_monomials(m, k)
    pos = {t: i for i, t in enumerate(monos)}
    acts: dict[str, Cols] = {}
    for name, mat in _slm_names(m):
        cols: Cols = {}
        for jdx, alpha in enumerate(monos):
            col: dict[int, QQ] = {}
            for (i, j), v in mat.items():
                if alpha[j] == 0:
                    continue
                beta = list(alpha)
                beta[j] -= 1
                beta[i] += 1
                t = pos[tuple(beta)]
                w = col.get(t, QQ(0)) + v * alpha[j]
                if w:
                    col[t] = w
                elif t in col:
                    del col[t]
            if col:
                cols[jdx] = col
        acts[name] = cols
    return monos, acts


def heisenberg_pairing(lam: int) -> dict[tuple[int, int], QQ]:
    """Top transvectant of monomial slots, scaled so the extremes pair to 1."""
    basis = standard_irreducible(lam)
    scale = QQ(1) / (factorial(lam) ** 2)
    out: dict[tuple[int, int], QQ] = {}
    for i in range(lam + 1):
        for j in range(i + 1, lam + 1):
            t = transvectant(lam, basis[i], basis[j])
            if t:
                ((key, c),) = t.items()
                if key != (0, 0):
                    raise LieError("top transvectant not a scalar")
                out[(i, j)] = c * scale
    return out
