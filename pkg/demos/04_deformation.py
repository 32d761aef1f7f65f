"""Deform a bracket along a distinguished 2-cocycle.

The cocycle pairs the two tail chains of the nilradical into the
central line.  It is invariant, closed, not exact, and squares to zero
against itself, so every scalar multiple deforms the bracket into a new
Lie algebra on the same basis.
"""

from lieforge import (
    GNParams,
    QQ,
    build_psi_cocycle,
    build_sl2_gn,
    cohomology_invariant,
    deform_bracket,
    maurer_cartan_check,
    verify_jacobi,
)


def main():
    alg = build_sl2_gn(GNParams(5, 1, 1))
    psi = build_psi_cocycle(alg)
    print("cocycle support (basis pairs -> output):")
    for (i, j), out in sorted(psi.entries.items()):
        pairs = ", ".join(f"{alg.labels[t].as_str()}:{v}" for t, v in out.items())
        print(f"  [{alg.labels[i].as_str()}, {alg.labels[j].as_str()}] -> {pairs}")

    print(f"Maurer-Cartan obstruction vanishes: {maurer_cartan_check(psi, alg)}")

    for t in (1, -1, 2, QQ(1, 3)):
        deformed = deform_bracket(alg, psi, t)
        rep = verify_jacobi(deformed)
        assert rep.ok
        print(f"t = {t}: deformed bracket passes Jacobi ({rep.checked} triples)")

    h2 = cohomology_invariant(alg, 2).dim_cohomology
    print(f"second cohomology of the base algebra: {h2} (deformations exist)")


if __name__ == "__main__":
    main()
