import os
import random
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from instances import random_data
from fsmid import _pykernels, kernels
from fsmid.prefixtree import PrefixTree
from fsmid.solvers import brute_force_exists, count_consistent, reduce_cnf
from formulas import random_formulas

compiled = pytest.mark.skipif("cython" not in kernels.available(), reason="compiled kernels not built")


def test_python_backend_always_available():
    assert "python" in kernels.available()
    assert kernels.get("python") is _pykernels


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.get("fortran")


def test_env_forces_fallback():
    code = "import fsmid.kernels as k; print(k.BACKEND)"
    env = dict(os.environ, FSMID_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@compiled
@pytest.mark.skipif(bool(os.environ.get("FSMID_PURE_PYTHON")), reason="fallback forced")
def test_compiled_is_default():
    assert kernels.BACKEND == "cython"


@compiled
@settings(max_examples=60)
@given(st.integers(0, 2**32), st.integers(1, 4))
def test_backends_agree(seed, k):
    _, d = random_data(random.Random(seed), max_size=16)
    tree = PrefixTree(d)
    py = _pykernels.search_first(tree.child, tree.obs, tree.sigma, k)
    cy = kernels.get("cython").search_first(tree.child, tree.obs, tree.sigma, k)
    assert py == cy
    assert _pykernels.count_canonical(tree.child, tree.obs, tree.sigma, k) == \
        kernels.get("cython").count_canonical(tree.child, tree.obs, tree.sigma, k)


@compiled
def test_backends_agree_on_reductions():
    for phi in random_formulas(30, 4, 6, seed=8):
        d = reduce_cnf(phi).d
        assert brute_force_exists(d, 4, "python") == brute_force_exists(d, 4, "cython")


@compiled
def test_backends_agree_on_music_box_counts(music_box):
    assert count_consistent(music_box, 3, "python") == count_consistent(music_box, 3, "cython")


def test_restricted_growth_pruning_visits():
    # unsatisfiable reduced instance: canonical search stays small
    from fsmid.sat import CnfFormula
    phi = CnfFormula(3, [[1], [-1], [2, 3]])
    tree = PrefixTree(reduce_cnf(phi).d)
    delta, _, visited = _pykernels.search_first(tree.child, tree.obs, tree.sigma, 4)
    assert delta is None
    assert visited < 20000
