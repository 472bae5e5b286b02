import numpy as np
import pytest

from jacobi_spectra import JacobiMatrix, MassSpringChain, chain_to_jacobi


def dense_eigh(J):
    """Oracle: LAPACK dense symmetric eigensolver."""
    return np.linalg.eigh(J.to_dense())


def dense_resolvent(J, z):
    """Oracle: explicit inverse of ``J - z``."""
    return np.linalg.inv(J.to_dense() - complex(z) * np.eye(J.size))


def uniform_chain(N):
    return MassSpringChain(np.ones(N), np.ones(N + 1))


def uniform(N):
    return chain_to_jacobi(uniform_chain(N))


def off_spectrum_points(rng, J, count, min_dist=0.01, im_range=(0.01, 2.0)):
    """Complex points with random sign of Im z, at least ``min_dist`` from
    the spectrum."""
    lam = dense_eigh(J)[0]
    lo, hi = lam[0] - 2.0, lam[-1] + 2.0
    out = []
    while len(out) < count:
        z = complex(rng.uniform(lo, hi),
                    rng.choice([-1, 1]) * rng.uniform(*im_range))
        if np.min(np.abs(lam - z)) >= min_dist:
            out.append(z)
    return out


_ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = []


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line[1])


@pytest.fixture
def accept(request, capsys):
    """``accept(k, passed, detail)`` prints and records one criterion line."""

    def record(k, passed, detail):
        line = f"{'PASS' if passed else 'FAIL'} criterion {k:2d}: {detail}"
        request.config.stash[_ACCEPTANCE].append((k, line))
        with capsys.disabled():
            print(f"\n{line}")
        return passed

    return record


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def J3():
    return uniform(3)


@pytest.fixture
def J2():
    return JacobiMatrix([-2.0, -2.0], [1.0])
