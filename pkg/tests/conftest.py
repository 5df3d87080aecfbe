import numpy as np
import pytest

from heartbn import (
    Cpt,
    Variable,
    DiscreteBayesNet,
    build_dag,
    clean,
    discretize,
    fit_mle,
    heart_network,
    load_cleveland,
)


@pytest.fixture(scope="session")
def heart_table():
    """The cleaned, discretized 297-row Cleveland table."""
    return discretize(clean(load_cleveland()))


@pytest.fixture(scope="session")
def heart_dag():
    return heart_network()


@pytest.fixture(scope="session")
def heart_net(heart_dag, heart_table):
    """The fixed-structure network fitted by relative frequency on all rows."""
    return fit_mle(heart_dag, heart_table)


@pytest.fixture
def two_node_net():
    """A -> B with P(A=1)=0.3, P(B=1|A=1)=0.9, P(B=1|A=0)=0.2."""
    a = Variable("A", ("0", "1"))
    b = Variable("B", ("0", "1"))
    dag = build_dag((a, b), (("A", "B"),))
    cpts = {
        "A": Cpt(a, (), np.array([[0.7, 0.3]])),
        "B": Cpt(b, (a,), np.array([[0.8, 0.2], [0.1, 0.9]])),
    }
    return DiscreteBayesNet(dag, cpts)
