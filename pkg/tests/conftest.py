import os
import random

import pytest

from cherednik.fields import CoeffDomain
from cherednik.dunkl import DunklContext
from cherednik.poly import parse_poly


def ctx_of(n, p, t, c=None):
    return DunklContext.make(n=n, p=p, t=t, c=c)


@pytest.fixture
def rng():
    return random.Random(20240817)


@pytest.fixture
def gf2c():
    return CoeffDomain.generic(2)


@pytest.fixture
def f3():
    return CoeffDomain.prime(3)


def poly(text, nvars, domain):
    return parse_poly(text, nvars, domain)


def stretch_enabled():
    return os.environ.get("CHEREDNIK_STRETCH") == "1"
