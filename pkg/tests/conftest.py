import os

# Must happen before numba's first import: NUMBA_NUM_THREADS caps
# set_num_threads, and the thread-invariance tests need room for 2+.
os.environ.setdefault("NUMBA_NUM_THREADS", "4")

from fractions import Fraction

import pytest

import pauligames as pg


@pytest.fixture(scope="session")
def ms():
    return pg.build_ms_game()


@pytest.fixture(scope="session")
def ams():
    return pg.build_ams_game()


@pytest.fixture(scope="session")
def ams_report(ams):
    return pg.solve_classical_value(ams)


@pytest.fixture(scope="session")
def ams_sym_report(ams):
    return pg.solve_symmetric_value(ams)


@pytest.fixture(scope="session")
def ams_agreement(ams):
    return pg.max_sync_agreement_over_optima(ams)


@pytest.fixture(scope="session")
def sweep5():
    ps = [Fraction(0), Fraction(1, 14), Fraction(1, 7), Fraction(1, 2), Fraction(1)]
    return pg.psams_value_sweep(ps)
