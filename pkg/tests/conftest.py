import pytest

from orelab.corpus import build, generate_corpus


@pytest.fixture(scope="session")
def corpus16():
    return generate_corpus(16)


@pytest.fixture(scope="session")
def corpus24():
    return generate_corpus(24)


@pytest.fixture(scope="session")
def corpus48():
    return generate_corpus(48)


@pytest.fixture(scope="session")
def corpus96():
    return generate_corpus(96)


@pytest.fixture(scope="session")
def S3():
    return build("symmetric(3)")


@pytest.fixture(scope="session")
def S4():
    return build("symmetric(4)")


@pytest.fixture(scope="session")
def A4():
    return build("alternating(4)")


@pytest.fixture(scope="session")
def A5():
    return build("alternating(5)")


@pytest.fixture(scope="session")
def Q8():
    return build("dicyclic(8)")


def perm_subgroup(G, *cycle_labels):
    """Subgroup generated by elements named in cycle notation."""
    from orelab.groups import generate_subgroup

    return generate_subgroup(G, [G.labels.index(l) for l in cycle_labels])
