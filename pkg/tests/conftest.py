"""
Named example specs shared by the test modules.

S1: F={a}, sigma(a)={a}                     a single infinite ray
S2: F={a}, sigma empty                      only singleton components
S3: F={a,b}, sigma(a)={b}, sigma(b)={a}     two parity components
S4: F={a,b}, sigma(a)={b}                   2-vertex components {a^i, b^(i+1)}
S5: F={a,b,c}, sigma(a)={b}, sigma(c)={b}   3-vertex stars {a^i, c^i, b^(i+1)}
"""
import pytest

from src.formal.graphs import FiniteGraph, UnfoldingSpec


def make_spec(f_names, sigma, f_edges=(), d_names=(), d_edges=(), eta=None):
    """Build a spec from vertex names; sigma and eta map names to name lists."""
    f_index = {name: k for k, name in enumerate(f_names)}
    d_index = {name: k for k, name in enumerate(d_names)}
    eta = eta or {}
    return UnfoldingSpec(
        D=FiniteGraph.from_pairs(len(d_names), [(d_index[u], d_index[v]) for u, v in d_edges]),
        F=FiniteGraph.from_pairs(len(f_names), [(f_index[u], f_index[v]) for u, v in f_edges]),
        eta=tuple(frozenset(f_index[y] for y in eta.get(d, ())) for d in d_names),
        sigma=tuple(frozenset(f_index[y] for y in sigma.get(x, ())) for x in f_names),
        d_names=tuple(d_names),
        f_names=tuple(f_names),
    )


@pytest.fixture
def s1():
    return make_spec(["a"], {"a": ["a"]})


@pytest.fixture
def s2():
    return make_spec(["a"], {})


@pytest.fixture
def s3():
    return make_spec(["a", "b"], {"a": ["b"], "b": ["a"]})


@pytest.fixture
def s4():
    return make_spec(["a", "b"], {"a": ["b"]})


@pytest.fixture
def s5():
    return make_spec(["a", "b", "c"], {"a": ["b"], "c": ["b"]})


@pytest.fixture
def anchored_ray():
    """S1 with a prefix vertex d attached to a^0: still one component."""
    return make_spec(["a"], {"a": ["a"]}, d_names=["d"], eta={"d": ["a"]})


@pytest.fixture
def glued():
    """
    Finite sigma-components joined at level 0 through the prefix.

    d joins y^0 and w^0, so x^1 (next to y^0) and x^2 (above w^0 via u^1)
    share one finite component.
    """
    return make_spec(
        ["x", "y", "w", "u"],
        {"y": ["x"], "w": ["u"], "u": ["x"]},
        d_names=["d"],
        eta={"d": ["y", "w"]},
    )
