import numpy as np
import pytest

from fusionframes import FusionSystem, SubspaceBasis, WeightedSubspace

RT2 = np.sqrt(2.0)


@pytest.fixture
def v2_system():
    """Worked 2-D instance: span{e1} and span{(e1+e2)/sqrt(2)}, unit weights.

    S = [[1.5, 0.5], [0.5, 0.5]], optimal bounds 1 -+ 1/sqrt(2).
    """
    b1 = SubspaceBasis(np.array([[1.0], [0.0]]))
    b2 = SubspaceBasis(np.array([[1 / RT2], [1 / RT2]]))
    return FusionSystem(2, (WeightedSubspace(b1, 1.0), WeightedSubspace(b2, 1.0)))


@pytest.fixture
def parseval_system():
    """span{e1}, span{e2} in dim 2 with unit weights; S = I."""
    b1 = SubspaceBasis(np.array([[1.0], [0.0]]))
    b2 = SubspaceBasis(np.array([[0.0], [1.0]]))
    return FusionSystem(2, (WeightedSubspace(b1, 1.0), WeightedSubspace(b2, 1.0)))
