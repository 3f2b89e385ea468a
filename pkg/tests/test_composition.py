import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from expanding_space import models
from expanding_space.composition import (
    compose,
    composite_doublings,
    composite_entropy,
    composite_log_probability,
    composite_log_sample_space,
)
from expanding_space.models import double_exponential, exponential, power


def test_compose():
    assert len(compose([exponential(0.1)])) == 1
    assert len(compose([exponential(0.1), power(2)])) == 2
    with pytest.raises(ValueError):
        compose([])


@pytest.mark.parametrize(
    "components, t, h",
    [
        ([exponential(0.1), exponential(0.2)], 10.0, 3.0),
        ([power(1), power(2)], math.e, 3.0),
        ([exponential(0.5)], 2.0, 1.0),
    ],
)
def test_composite_entropy_examples(components, t, h):
    assert composite_entropy(compose(components), t) == pytest.approx(h, rel=1e-15)


def test_sibling_accessors():
    c = compose([exponential(0.1), power(2), double_exponential(1, 0.1629)])
    t = 4.0
    ln_s = composite_log_sample_space(c, t)
    assert composite_log_probability(c, t) == -ln_s
    assert composite_doublings(c, t) == pytest.approx(ln_s / math.log(2), rel=1e-15)


def test_array_time():
    c = compose([exponential(0.1), power(2)])
    t = np.array([1.0, 2.0, 5.0])
    h = composite_entropy(c, t)
    assert h.shape == (3,)
    assert h[1] == pytest.approx(0.2 + 2 * math.log(2), rel=1e-15)


def test_domain_error_propagates():
    with pytest.raises(models.DomainError):
        composite_entropy(compose([exponential(0.1), power(1, t0=5.0)]), 3.0)


components = st.one_of(
    st.builds(exponential, lam=st.floats(1e-3, 1.0), t0=st.floats(-2, 2)),
    st.builds(power, a=st.floats(0.1, 4.0), t0=st.floats(-2, 2)),
    st.builds(double_exponential, a=st.floats(0.1, 4.0), lam=st.floats(1e-3, 0.3),
              t0=st.floats(-2, 2)),
)


@given(parts=st.lists(components, min_size=1, max_size=4), t=st.floats(2.5, 40.0))
@settings(max_examples=200)
def test_additivity_and_product_duality(parts, t):
    c = compose(parts)
    ln_ps = [models.log_probability(s, t) for s in parts]
    ln_p = composite_log_probability(c, t)
    assert composite_entropy(c, t) == pytest.approx(-ln_p, abs=1e-12)
    if ln_p > -700:
        assert math.exp(ln_p) == pytest.approx(math.prod(math.exp(x) for x in ln_ps), rel=1e-12)
    for perm in itertools.permutations(parts):
        assert abs(composite_entropy(compose(perm), t) - composite_entropy(c, t)) <= 1e-15


@pytest.mark.parametrize("k, lam", [(2, 0.1), (3, 0.1629), (4, 0.05)])
def test_identical_exponentials_collapse(k, lam):
    c = compose([exponential(lam)] * k)
    single = exponential(k * lam)
    for t in np.linspace(0, 30, 31):
        assert abs(composite_entropy(c, t) - models.entropy(single, t)) < 1e-12
        assert abs(composite_log_probability(c, t) - models.log_probability(single, t)) < 1e-12
