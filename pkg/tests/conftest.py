import numpy as np
import pytest

from nksim import Landscape, equal_weights


@pytest.fixture
def two_locus_independent():
    """Hand landscape: n=2, k=0, equal weights, f_0=(0.2, 0.8), f_1=(0.4, 0.6).

    Full map: F(00)=0.3, F(01)=0.4, F(10)=0.6, F(11)=0.7; unique optimum 11.
    """
    return Landscape(
        n=2, k=0,
        partners=np.empty((2, 0), dtype=np.int64),
        tables=np.array([[0.2, 0.8], [0.4, 0.6]]),
        weights=equal_weights(2),
    )
