import pytest

from toricgw import build_moment_graph, shipped_fans


@pytest.fixture(scope="session")
def moment_graphs():
    """One moment graph per shipped fan, built once for the whole run."""
    return {name: build_moment_graph(fan) for name, fan in shipped_fans().items()}


@pytest.fixture(scope="session")
def p1(moment_graphs):
    return moment_graphs["p1"]


@pytest.fixture(scope="session")
def p2(moment_graphs):
    return moment_graphs["p2"]


@pytest.fixture(scope="session")
def p1xp1(moment_graphs):
    return moment_graphs["p1xp1"]


@pytest.fixture(scope="session")
def f1(moment_graphs):
    return moment_graphs["f1"]


@pytest.fixture(scope="session")
def b3(moment_graphs):
    return moment_graphs["bundle_r3"]


@pytest.fixture(scope="session")
def b4(moment_graphs):
    return moment_graphs["bundle_r4"]
