import math

import numpy as np
from hypothesis import strategies as st

from vmlab import DiscreteProbabilitySpace, SpaceDescriptor

QS = [1.0, 2.0, math.inf]
PS = [1.0, 1.5, 2.0, 3.0]


@st.composite
def spaces(draw, min_n=1, max_n=6):
    n = draw(st.integers(min_n, max_n))
    raw = draw(st.lists(st.floats(0.05, 1.0), min_size=n, max_size=n))
    m = np.array(raw) / sum(raw)
    return DiscreteProbabilitySpace(m)


@st.composite
def descriptors(draw, max_d=4, weighted=False):
    d = draw(st.integers(1, max_d))
    q = draw(st.sampled_from(QS + [1.5, 3.0]))
    w = None
    if weighted and draw(st.booleans()):
        w = tuple(draw(st.lists(st.floats(0.2, 3.0), min_size=d, max_size=d)))
    return SpaceDescriptor(d, q, w)


def arrays(shape, lo=-3.0, hi=3.0):
    size = int(np.prod(shape))
    return st.lists(st.floats(lo, hi, allow_nan=False), min_size=size,
                    max_size=size).map(lambda v: np.array(v).reshape(shape))
