"""Shared builders, independent test oracles, and the acceptance summary hook."""

from __future__ import annotations

from amalgam import category, category_from_poset
from amalgam.poset import FinPoset

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


# -- shapes used across the suite -------------------------------------------

def bowtie_cat():
    """Four non-identity arrows f: C->A, h: C->B, g: D->A, k: D->B."""
    return category(
        ["A", "B", "C", "D"],
        [("f", "C", "A"), ("h", "C", "B"), ("g", "D", "A"), ("k", "D", "B")],
    )


def bowtie_poset():
    return FinPoset.from_covers(
        ["A", "B", "C", "D"], [(2, 0), (2, 1), (3, 0), (3, 1)]
    )


def boat_poset():
    """Bowtie with one extra bottom element below everything."""
    return FinPoset.from_covers(
        ["A", "B", "C", "D", "E"],
        [(4, 2), (4, 3), (2, 0), (2, 1), (3, 0), (3, 1)],
    )


def span_poset():
    return FinPoset.from_covers(["p", "a", "b"], [(0, 1), (0, 2)])


def crown_poset():
    """Six elements whose comparability graph is a hexagon."""
    return FinPoset.from_covers(
        ["p", "q", "r", "x", "y", "z"],
        [(0, 4), (0, 5), (1, 3), (1, 5), (2, 3), (2, 4)],
    )


def parallel_pair_cat():
    return category(["C", "B"], [("u", "C", "B"), ("v", "C", "B")])


def collapsing_pair_cat():
    """u, v: C->B are equalized by d: B->D, so the monic reflection merges them."""
    return category(
        ["C", "B", "D"],
        [("u", "C", "B"), ("v", "C", "B"), ("d", "B", "D"), ("w", "C", "D")],
        [("d", "u", "w"), ("d", "v", "w")],
    )


def z2_cat():
    return category(["X"], [("s", "X", "X")], [("s", "s", "id_X")])


def z3_cat():
    return category(
        ["X"],
        [("r", "X", "X"), ("r2", "X", "X")],
        [("r", "r", "r2"), ("r", "r2", "id_X"), ("r2", "r", "id_X"), ("r2", "r2", "r")],
    )


def null_monoid_cat():
    """Monoid {1, a, z} with a·a = z and z absorbing: a is neither idempotent
    nor cancellable."""
    return category(
        ["X"],
        [("a", "X", "X"), ("z", "X", "X")],
        [
            ("a", "a", "z"),
            ("a", "z", "z"),
            ("z", "a", "z"),
            ("z", "z", "z"),
        ],
    )


def iso_pair_cat():
    return category(
        ["X", "Y"],
        [("t", "X", "Y"), ("ti", "Y", "X")],
        [("ti", "t", "id_X"), ("t", "ti", "id_Y")],
    )


def empty_map_monoid_cat():
    return category(["X"], [("z", "X", "X")], [("z", "z", "z")])


def small_category_suite():
    """Categories with at most 8 morphisms, monic and not."""
    return [
        bowtie_cat(),
        parallel_pair_cat(),
        collapsing_pair_cat(),
        z2_cat(),
        z3_cat(),
        null_monoid_cat(),
        iso_pair_cat(),
        empty_map_monoid_cat(),
        category_from_poset(span_poset()),
    ]


# -- independent oracles -----------------------------------------------------

def set_partitions(items):
    """All partitions of a list, as lists of lists."""
    items = list(items)
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for partition in set_partitions(rest):
        for k in range(len(partition)):
            yield partition[:k] + [[head] + partition[k]] + partition[k + 1:]
        yield [[head]] + partition


def partition_is_congruence(cat, blocks) -> bool:
    """Independent congruence predicate, written directly from the definition."""
    class_of = {}
    for k, block in enumerate(blocks):
        for m in block:
            class_of[m] = k
    for block in blocks:
        if len({cat.morphisms[m].dom for m in block}) != 1:
            return False
        if len({cat.morphisms[m].cod for m in block}) != 1:
            return False
    n = len(cat.morphisms)
    for f in range(n):
        for f2 in range(n):
            if class_of[f] != class_of[f2]:
                continue
            for g in range(n):
                if cat.morphisms[g].dom == cat.morphisms[f].cod:
                    if class_of[cat.table[(g, f)]] != class_of[cat.table[(g, f2)]]:
                        return False
                if cat.morphisms[g].cod == cat.morphisms[f].dom:
                    if class_of[cat.table[(f, g)]] != class_of[cat.table[(f2, g)]]:
                        return False
    return True


def quotient_is_monic(cat, blocks) -> bool:
    """Whether the quotient by the partition cancels on the left, checked on classes."""
    class_of = {}
    for k, block in enumerate(blocks):
        for m in block:
            class_of[m] = k
    n = len(cat.morphisms)
    for f in range(n):
        for g in range(n):
            mf, mg = cat.morphisms[f], cat.morphisms[g]
            if mf.dom != mg.dom or mf.cod != mg.cod or class_of[f] == class_of[g]:
                continue
            for h in range(n):
                if cat.morphisms[h].dom != mf.cod:
                    continue
                if class_of[cat.table[(h, f)]] == class_of[cat.table[(h, g)]]:
                    return False
    return True


def reachable_pairs(cat):
    """Object reachability by zigzags, via boolean-matrix closure (no search)."""
    n = len(cat.objects)
    adj = [[i == j for j in range(n)] for i in range(n)]
    for m in cat.morphisms:
        adj[m.dom][m.cod] = True
        adj[m.cod][m.dom] = True
    for _ in range(n):
        adj = [
            [any(adj[i][k] and adj[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)
        ]
    return adj
