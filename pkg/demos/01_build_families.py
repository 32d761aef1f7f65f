"""Build every algebra family and show its basic shape.

Each family comes from exact rational structure constants; Jacobi is
verified over all basis triples before anything else is printed.
"""

from collections import Counter

from lieforge import (
    GNParams,
    QQ,
    TowerSpec,
    build_gn,
    build_model_nilradical,
    build_sl2_gn,
    build_sl2_heisenberg,
    build_slm_quasicyclic,
    build_three_gen_nilradical,
    build_tower,
    preset,
    quasi_cyclic_check,
    to_json_bytes,
    verify_jacobi,
)


def chains(alg):
    sizes = Counter()
    for label in alg.labels:
        sizes[(label.namespace, label.level, label.copy)] += 1
    return " ".join(
        f"{ns}{'' if lvl is None else '.' + str(lvl)}[{n}]"
        for (ns, lvl, copy), n in sizes.items()
    )


def show(name, alg):
    rep = verify_jacobi(alg)
    assert rep.ok
    print(f"{name}: dim {alg.dim}, {rep.checked} Jacobi triples ok")
    print(f"  chains: {chains(alg)}")


def main():
    show("filiform-like nilradical, length 5", build_model_nilradical(5))
    show("three-generator nilradical, length 5", build_three_gen_nilradical(5))

    nil = build_gn(GNParams(5, 1, 1))
    show("graded nilradical with paired tails", nil)
    print(f"  generates from layer one: {quasi_cyclic_check(nil) is None}")

    ext = build_sl2_gn(GNParams(5, QQ(1, 60), QQ(1, 60)))
    show("semisimple extension of the paired nilradical", ext)

    show("rank-one extension of a Heisenberg algebra", build_sl2_heisenberg(2))
    show("rank-two quasi-cyclic algebra", build_slm_quasicyclic(3, 5))
    show("two-storey tower, right action", build_tower(TowerSpec((GNParams(5, 1, 1),) * 2, "r")))
    show("named preset angelopoulos_35", preset("angelopoulos_35"))

    blob = to_json_bytes(ext)
    print(f"serialized extension: {len(blob)} bytes of canonical JSON")


if __name__ == "__main__":
    main()
