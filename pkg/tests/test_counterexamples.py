import math

import numpy as np
import pytest

from vmlab import (KotheExampleConfig, PettisExampleConfig, bochner_norm,
                   dunford_norm, kothe_dual_witnesses, kothe_example, lp_norm,
                   pair, pettis_example, pettis_space, sv_profile)
from vmlab.errors import BadExponent, TooManyLevels, VMLabError


def test_pettis_space_masses():
    sp = pettis_space(3)
    np.testing.assert_allclose(sp.masses, [1 / 4, 1 / 16, 1 / 64, 43 / 64])


@pytest.mark.parametrize("N", [1, 2, 5, 12])
def test_pettis_invariants(N):
    f = pettis_example(N)
    assert dunford_norm(f, 2).value == pytest.approx(1.0, abs=1e-12)
    assert bochner_norm(f, 2) == pytest.approx(math.sqrt(N))
    np.testing.assert_allclose(sv_profile(f), np.ones(N), atol=1e-12)


def test_pettis_guards():
    with pytest.raises(TooManyLevels):
        PettisExampleConfig(13)
    with pytest.raises(TooManyLevels):
        PettisExampleConfig(0)
    assert pettis_example(PettisExampleConfig(2)).values.shape == (3, 2)


@pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
def test_kothe_images_disjoint_unit(p):
    cfg = KotheExampleConfig(p, (0.1, 0.2, 0.3, 0.4))
    phi = kothe_example(cfg)
    G = kothe_dual_witnesses(cfg)
    np.testing.assert_allclose(phi.codomain.dual_norm(G), 1.0)
    for i, g in enumerate(G):
        img = pair(phi, g)
        assert np.count_nonzero(img) == 1 and img[i] != 0
        assert lp_norm(phi.space, img, p) == pytest.approx(1.0, abs=1e-12)
    assert dunford_norm(phi, p).value == pytest.approx(1.0, abs=1e-6)


def test_kothe_guards():
    with pytest.raises(BadExponent):
        KotheExampleConfig(1.0)
    with pytest.raises(BadExponent):
        KotheExampleConfig(math.inf)
    with pytest.raises(VMLabError):
        KotheExampleConfig(2.0, (1.0,))
