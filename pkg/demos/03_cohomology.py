"""Adjoint cohomology two ways: full complex versus invariant ladder.

For an algebra with a semisimple part, cochains split into weight
spaces and only the invariant layer carries cohomology, so the ladder
is far smaller than the full complex yet gives the same answers.
"""

from lieforge import (
    GNParams,
    build_sl2_gn,
    build_sl2_heisenberg,
    cohomology_full,
    cohomology_invariant,
    invariant_cochain_basis,
    preset,
)


def ladder(alg, name):
    sizes = [len(invariant_cochain_basis(alg, k)) for k in (0, 1, 2)]
    print(f"{name}: invariant cochain sizes C0 {sizes[0]}, C1 {sizes[1]}, C2 {sizes[2]}")
    for k in (1, 2):
        rep = cohomology_invariant(alg, k)
        print(
            f"  H{k}: cocycles {rep.dim_cocycles}, coboundaries "
            f"{rep.dim_coboundaries}, cohomology {rep.dim_cohomology}"
        )


def main():
    ext = build_sl2_gn(GNParams(5, 1, 1))
    ladder(ext, "semisimple extension, dim 41")

    heis = build_sl2_heisenberg(2)
    ladder(heis, "extended Heisenberg, dim 8")
    for k in (1, 2):
        full = cohomology_full(heis, k)
        inv = cohomology_invariant(heis, k)
        agree = full.dim_cohomology == inv.dim_cohomology
        print(f"  full H{k} = {full.dim_cohomology}, methods agree: {agree}")

    print("second cohomology across presets:")
    for name in ("angelopoulos_35", "example_4_4", "theorem_4_5"):
        kwargs = {"n": 6} if name == "theorem_4_5" else {}
        alg = preset(name, **kwargs)
        rep = cohomology_invariant(alg, 2)
        print(f"  {name}: dim {alg.dim}, H2 {rep.dim_cohomology}")


if __name__ == "__main__":
    main()
