import mpmath as mp
import pytest


def assert_close(a, b, digits: int, msg: str = ""):
    """Assert |a - b| < 10^-digits, evaluating the difference safely."""
    with mp.workdps(digits + 25):
        diff = abs(mp.mpf(a) - mp.mpf(b)) if not (
            isinstance(a, mp.mpc) or isinstance(b, mp.mpc)
        ) else abs(mp.mpc(a) - mp.mpc(b))
        limit = mp.mpf(10) ** (-digits)
        assert diff < limit, f"{msg} |diff|={mp.nstr(diff, 8)} >= 1e-{digits}"


@pytest.fixture(scope="session")
def hp():
    """High-precision ambient context for reference arithmetic in tests."""
    with mp.workdps(60):
        yield mp
