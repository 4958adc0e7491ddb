import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from yoshida import groupoid as gpd  # noqa: E402

DATA = Path(__file__).resolve().parents[1] / "data"


def union3():
    """(C2 × Pair(2)) ⊔ C3 ⊔ Pair(3)."""
    return gpd.disjoint_union([gpd.product(gpd.cyclic(2), gpd.pair_groupoid(2)),
                               gpd.cyclic(3), gpd.pair_groupoid(3)])


# name -> (constructor, list of (oracle table, object count) per component)
def catalog():
    import oracles as o
    return {
        "C1": (lambda: gpd.cyclic(1), [(o.cyclic_table(1), 1)]),
        "C2": (lambda: gpd.cyclic(2), [(o.cyclic_table(2), 1)]),
        "C3": (lambda: gpd.cyclic(3), [(o.cyclic_table(3), 1)]),
        "C4": (lambda: gpd.cyclic(4), [(o.cyclic_table(4), 1)]),
        "S3": (lambda: gpd.symmetric(3), [(o.symmetric_table(3), 1)]),
        "K4": (lambda: gpd.klein4(), [(o.klein_table(), 1)]),
        "Pair3": (lambda: gpd.pair_groupoid(3), [(o.cyclic_table(1), 3)]),
        "C2xPair2": (lambda: gpd.product(gpd.cyclic(2), gpd.pair_groupoid(2)),
                     [(o.cyclic_table(2), 2)]),
        "C3xPair3": (lambda: gpd.product(gpd.cyclic(3), gpd.pair_groupoid(3)),
                     [(o.cyclic_table(3), 3)]),
        "union3": (union3, [(o.cyclic_table(2), 2), (o.cyclic_table(3), 1),
                            (o.cyclic_table(1), 3)]),
    }


@pytest.fixture(scope="session")
def groupoids():
    return {k: v[0]() for k, v in catalog().items()}


@pytest.fixture(scope="session")
def data_dir():
    return DATA
