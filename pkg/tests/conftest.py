from fractions import Fraction

import pytest

from humbert.curve_model import PrecisionContext
from humbert.quotient_equations import BranchSet


@pytest.fixture
def branch23() -> BranchSet:
    return BranchSet.from_lambdas([Fraction(2), Fraction(3)])


@pytest.fixture
def prec() -> PrecisionContext:
    return PrecisionContext(128)
