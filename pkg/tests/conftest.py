import sys

import numpy as np
import pytest
from hypothesis import settings

from eigenproj.numcore import as_matrix, max_abs_diff, norm_inf, to_float
from eigenproj.suite import generate_suite

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def suite():
    return generate_suite()


def mat(rows):
    """EXACT matrix from nested ints / fraction strings."""
    return as_matrix(rows)


def fmat(rows):
    return to_float(as_matrix(rows))


def close(X, Y, rel=1e-8):
    return max_abs_diff(X, Y) <= rel * (1.0 + norm_inf(np.asarray(X)))


def exact_equal(X, Y):
    return X.shape == Y.shape and bool(np.all(X == Y))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for num in sorted(results):
            terminalreporter.write_line(results[num])
