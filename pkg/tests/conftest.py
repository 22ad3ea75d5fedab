import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from weakbrace.brace import check_weak_brace  # noqa: E402
from weakbrace.core import build_clifford, von_neumann_inverses  # noqa: E402
from weakbrace.fixtures import EX1_NAMES, data_path, load, phi_images  # noqa: E402
from weakbrace.morphisms import Holomorph, HolomorphElement  # noqa: E402


def rows(t):
    return [list(r) for r in t.table]


@pytest.fixture(scope="session")
def ex1_add():
    return load("ex1.tbl").ops["add"]


@pytest.fixture(scope="session")
def ex1_clifford(ex1_add):
    return build_clifford(von_neumann_inverses(ex1_add))


@pytest.fixture(scope="session")
def b2_mul():
    return load("b2.tbl").ops["mul"]


@pytest.fixture(scope="session")
def trivial_brace():
    d = load("ex1_brace1.tbl")
    return check_weak_brace(d.ops["add"], d.ops["mul"])


@pytest.fixture(scope="session")
def brace2():
    d = load("ex1_brace2.tbl")
    return check_weak_brace(d.ops["add"], d.ops["mul"])


@pytest.fixture(scope="session")
def ex2():
    return load("ex2_brace.tbl")


@pytest.fixture(scope="session")
def hol(ex1_clifford):
    return Holomorph(ex1_clifford)


@pytest.fixture(scope="session")
def phi(hol):
    """phi(k, x) -> the holomorph element (phi_k, x) of the first worked example."""
    def make(k, x):
        return HolomorphElement(hol.endos.index_of(phi_images(k)), EX1_NAMES.index(x))
    return make


@pytest.fixture(scope="session")
def data_dir():
    return data_path("ex1.tbl").parent


@pytest.fixture(scope="session")
def s3():
    """Symmetric group on three points, elements in lexicographic order of their images."""
    import itertools
    from weakbrace.core import magma
    perms = list(itertools.permutations(range(3)))
    table = [[perms.index(tuple(p[q[i]] for i in range(3))) for q in perms] for p in perms]
    return magma(table, ["".join(map(str, p)) for p in perms])
