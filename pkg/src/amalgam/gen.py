"""Instance generation: exhaustive small posets and seeded random instances."""

from __future__ import annotations

import random
from itertools import permutations

from .diagram import FinInjDiagram, ZigzagWord, validate_diagram
from .fincat import FinCategory, category_from_poset
from .poset import FinPoset, ForestCertificate, is_forest_like, upward_closure


def _canonical(up: tuple[int, ...]) -> tuple[int, ...]:
    """Canonical form of a poset given as up-set bitmasks, via iterated
    degree-refinement and minimization over class-preserving relabelings."""
    n = len(up)
    if n == 0:
        return ()
    down = [sum(1 << j for j in range(n) if up[j] >> i & 1) for i in range(n)]
    inv = [
        (bin(up[i]).count("1"), bin(down[i]).count("1")) for i in range(n)
    ]
    for _ in range(n):
        refined = []
        for i in range(n):
            ups = sorted(inv[j] for j in range(n) if up[i] >> j & 1 and j != i)
            dns = sorted(inv[j] for j in range(n) if down[i] >> j & 1 and j != i)
            refined.append((inv[i], tuple(ups), tuple(dns)))
        codes = {v: k for k, v in enumerate(sorted(set(refined)))}
        new_inv = [(codes[refined[i]],) for i in range(n)]
        if new_inv == inv:
            break
        inv = new_inv

    order = sorted(range(n), key=lambda i: inv[i])
    classes: list[list[int]] = []
    for i in order:
        if classes and inv[classes[-1][0]] == inv[i]:
            classes[-1].append(i)
        else:
            classes.append([i])

    best = None
    for perm_parts in _class_perms(classes):
        placed = [i for part in perm_parts for i in part]
        pos = {old: new for new, old in enumerate(placed)}
        rel = tuple(
            sum(1 << pos[j] for j in range(n) if up[placed[i]] >> j & 1)
            for i in range(n)
        )
        if best is None or rel < best:
            best = rel
    return best


def _class_perms(classes):
    if not classes:
        yield []
        return
    head, tail = classes[0], classes[1:]
    for perm in permutations(head):
        for rest in _class_perms(tail):
            yield [list(perm)] + rest


def _poset_from_upmasks(up: tuple[int, ...]) -> FinPoset:
    n = len(up)
    pairs = [(a, b) for a in range(n) for b in range(n) if up[a] >> b & 1]
    return FinPoset([f"e{i}" for i in range(n)], pairs)


def _ideals(up: tuple[int, ...]) -> list[int]:
    """Down-closed subsets as bitmasks."""
    n = len(up)
    down = [sum(1 << j for j in range(n) if up[j] >> i & 1) for i in range(n)]
    out = []
    for mask in range(1 << n):
        if all(down[i] & ~mask == 0 for i in range(n) if mask >> i & 1):
            out.append(mask)
    return out


def all_posets(max_size: int) -> dict[int, list[FinPoset]]:
    """All posets with at most max_size elements, one per isomorphism class.

    Built by repeatedly adjoining a maximal element above each order ideal
    and deduplicating by canonical form.
    """
    by_size: dict[int, list[tuple[int, ...]]] = {0: [()]}
    for n in range(1, max_size + 1):
        seen: set[tuple[int, ...]] = set()
        fresh: list[tuple[int, ...]] = []
        for up in by_size[n - 1]:
            for ideal in _ideals(up):
                new_up = tuple(
                    up[i] | ((1 << (n - 1)) if ideal >> i & 1 else 0)
                    for i in range(n - 1)
                ) + (1 << (n - 1),)
                canon = _canonical(new_up)
                if canon not in seen:
                    seen.add(canon)
                    fresh.append(new_up)
        by_size[n] = fresh
    return {
        n: [_poset_from_upmasks(up) for up in ups]
        for n, ups in by_size.items()
    }


def random_poset(size: int, rng: random.Random, density: float = 0.35) -> FinPoset:
    """Random poset: random edges on an index-increasing DAG, transitively closed."""
    covers = [
        (a, b)
        for a in range(size)
        for b in range(a + 1, size)
        if rng.random() < density
    ]
    return FinPoset.from_covers([f"e{i}" for i in range(size)], covers)


def random_tree_like(size: int, rng: random.Random) -> FinPoset:
    """Random forest-like poset built by replaying the adjoin-a-point rule."""

    def build(k: int) -> tuple[list[tuple[int, int]], int]:
        # returns (cover pairs, element count) over local indices, root last
        if k == 1:
            return [], 1
        budget = k - 1
        sizes = []
        while budget:
            part = rng.randint(1, budget)
            sizes.append(part)
            budget -= part
        pairs: list[tuple[int, int]] = []
        offset = 0
        attach: list[int] = []
        for part in sizes:
            sub_pairs, count = build(part)
            pairs.extend((a + offset, b + offset) for a, b in sub_pairs)
            attach.append(offset + rng.randrange(count))
            offset += count
        root = offset
        pairs.extend((root, a) for a in attach)
        return pairs, offset + 1

    pairs, count = build(size)
    return FinPoset.from_covers([f"e{i}" for i in range(count)], pairs)


def random_forest(size: int, rng: random.Random) -> FinPoset:
    """Disjoint union of random tree-like posets, size elements in total."""
    budget = size
    offset = 0
    elements: list[str] = []
    covers: list[tuple[int, int]] = []
    while budget:
        part = rng.randint(1, budget)
        tree = random_tree_like(part, rng)
        covers.extend((a + offset, b + offset) for a, b in tree.cover_pairs())
        elements.extend(f"e{offset + i}" for i in range(len(tree)))
        offset += len(tree)
        budget -= part
    return FinPoset.from_covers(elements, covers)


def random_nonforest(size: int, rng: random.Random, attempts: int = 10000) -> FinPoset:
    """Random poset rejected until it fails the forest decomposition."""
    if size < 4:
        raise ValueError("no non-forest-like poset has fewer than 4 elements")
    for _ in range(attempts):
        poset = random_poset(size, rng, density=rng.uniform(0.2, 0.6))
        if not isinstance(is_forest_like(poset), ForestCertificate):
            return poset
    raise RuntimeError("failed to sample a non-forest-like poset")


def random_diagram_over_poset(
    poset: FinPoset,
    rng: random.Random,
    shape: FinCategory | None = None,
    max_extra: int = 2,
) -> FinInjDiagram:
    """Random valid diagram over a poset shape.

    Monotone subsets of a universe give functorial inclusions, which are then
    conjugated by per-element relabelings so the actions are nontrivial maps.
    Empty carriers occur naturally.
    """
    if shape is None:
        shape = category_from_poset(poset)
    n = len(poset)
    subset: list[set[str]] = [set() for _ in range(n)]
    counter = 0
    for b in sorted(range(n), key=lambda e: len(poset.down(e))):
        for a in range(n):
            if a != b and poset.leq(a, b):
                subset[b] |= subset[a]
        for _ in range(rng.randint(0, max_extra)):
            subset[b].add(f"u{counter}")
            counter += 1
    relabel: list[dict[str, str]] = []
    for e in range(n):
        members = sorted(subset[e])
        rng.shuffle(members)
        relabel.append(
            {u: f"{poset.elements[e]}_{k}" for k, u in enumerate(members)}
        )
    carriers = [
        tuple(sorted(relabel[e].values())) for e in range(n)
    ]
    actions = []
    for m in shape.morphisms:
        actions.append(
            {relabel[m.dom][u]: relabel[m.cod][u] for u in subset[m.dom]}
        )
    return validate_diagram(shape, carriers, actions)


def random_endo_word(
    shape: FinCategory, rng: random.Random, max_len: int = 8
) -> ZigzagWord:
    """Random zigzag word that returns to its starting object.

    Walks the morphism graph with random orientations; if the walk does not
    come home, it is mirrored so the result is always an endo word.
    """
    if not shape.objects:
        raise ValueError("shape has no objects")
    source = rng.randrange(len(shape.objects))
    steps: list[tuple[int, bool]] = []
    at = source
    for _ in range(rng.randint(1, max_len)):
        options = []
        for i, m in enumerate(shape.morphisms):
            if m.dom == at:
                options.append((i, True))
            if m.cod == at:
                options.append((i, False))
        if not options:
            break
        step = rng.choice(options)
        steps.append(step)
        m = shape.morphisms[step[0]]
        at = m.cod if step[1] else m.dom
        if at == source and rng.random() < 0.5:
            break
    if at != source:
        steps.extend((i, not forward) for i, forward in reversed(steps))
    return ZigzagWord(source, tuple(steps))


def random_upward_closed(
    poset: FinPoset, rng: random.Random
) -> frozenset[int]:
    seeds = [e for e in range(len(poset)) if rng.random() < 0.5]
    return upward_closure(poset, seeds)
