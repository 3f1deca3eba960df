import itertools
import os
import random

import pytest

os.environ.setdefault(
    "QF_CACHE_DIR", os.path.join(os.path.dirname(__file__), ".cache")
)

from quiverlab import polytree as PT  # noqa: E402


def all_polygon_tree_specs(max_components=4, min_size=3, max_size=5):
    """Every gluing script with the given bounds (includes isomorphic
    duplicates; dedupe with spec_canonical_key when needed)."""
    out = []
    for ncomp in range(1, max_components + 1):
        for sizes in itertools.product(range(min_size, max_size + 1), repeat=ncomp):

            def rec(i, used, acc):
                if i == ncomp:
                    out.append(PT.PolygonTreeSpec(tuple(sizes), tuple(acc)))
                    return
                for host in range(i):
                    for pos in range(1, sizes[host] + 1):
                        if host != 0 and pos == 1:
                            continue
                        if (host, pos) in used:
                            continue
                        rec(i + 1, used | {(host, pos)}, acc + [(host, pos)])

            rec(1, set(), [])
    return out


def corpus_classes(max_components=4, min_size=3, max_size=5):
    """One representative spec per isomorphism class."""
    reps = {}
    for spec in all_polygon_tree_specs(max_components, min_size, max_size):
        reps.setdefault(PT.spec_canonical_key(spec), spec)
    return list(reps.values())


def random_polygon_tree_spec(rng: random.Random, max_vertices=10) -> PT.PolygonTreeSpec:
    """Random spec whose built quiver has at most max_vertices vertices."""
    while True:
        ncomp = rng.randint(1, 4)
        sizes = tuple(rng.randint(3, 6) for _ in range(ncomp))
        if sum(sizes) - 2 * (ncomp - 1) > max_vertices:
            continue
        gluings = []
        used = set()
        ok = True
        for i in range(1, ncomp):
            options = [
                (h, p)
                for h in range(i)
                for p in range(1, sizes[h] + 1)
                if not (h != 0 and p == 1) and (h, p) not in used
            ]
            if not options:
                ok = False
                break
            choice = rng.choice(options)
            used.add(choice)
            gluings.append(choice)
        if ok:
            return PT.PolygonTreeSpec(sizes, tuple(gluings))


@pytest.fixture(scope="session")
def small_corpus():
    return corpus_classes(max_components=3, max_size=4)
