"""Compute derivation algebras and decide completeness.

The headline example: a 41-dimensional extension whose derivations are
all inner even though its center is one-dimensional, so it is perfect
and rigid in the derivation sense without being complete.
"""

from lieforge import (
    GNParams,
    TowerSpec,
    build_model_nilradical,
    build_sl2_gn,
    build_tower,
    center,
    completeness_check,
    derivation_algebra,
    is_perfect,
    preset,
)


def report(name, alg, modular=False):
    rep = derivation_algebra(alg, modular=modular)
    tag = "modular count, exact certificate" if modular else "exact"
    print(
        f"{name}: dim {alg.dim}, der {rep.dim_der}, inner {rep.dim_inner}, "
        f"outer {rep.dim_outer} ({tag})"
    )
    return rep


def main():
    ext = build_sl2_gn(GNParams(5, 1, 1))
    rep = report("semisimple extension", ext)
    print(f"  perfect: {is_perfect(ext)}, center dim: {center(ext).dim}")
    print(f"  complete: {rep.is_complete}")

    nil = build_model_nilradical(5)
    rep = report("bare nilradical", nil)
    print(f"  sample outer derivation support: {sorted(rep.outer_basis[0])[:4]} ...")

    # a tower of two copies; the modular path bounds the nullity per weight
    # block and the inner count certifies the bound is tight
    tow = build_tower(TowerSpec((GNParams(5, 1, 1),) * 2, "r"))
    report("two-storey tower", tow, modular=True)

    complete = preset("example_4_7")
    rep = derivation_algebra(complete)
    print(
        f"preset example_4_7: centerless {center(complete).dim == 0}, "
        f"outer {rep.dim_outer}, complete {completeness_check(complete)}"
    )


if __name__ == "__main__":
    main()
