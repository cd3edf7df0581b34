import numpy as np
import pytest

from wydkit import BlockOperator, TraceAlgebra, validate_density

SX = np.array([[0, 1], [1, 0]], complex)
SY = np.array([[0, -1j], [1j, 0]], complex)
SZ = np.array([[1, 0], [0, -1]], complex)


@pytest.fixture
def qubit():
    alg = TraceAlgebra.single(2)
    rho = validate_density(alg, alg.diag(0.75, 0.25))
    return {
        "alg": alg,
        "rho": rho,
        "sx": BlockOperator(alg, [SX]),
        "sy": BlockOperator(alg, [SY]),
        "sz": BlockOperator(alg, [SZ]),
        "I": alg.identity(),
    }


def random_hermitian(rng, alg, scale=1.0):
    blocks = []
    for d in alg.dims:
        g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        blocks.append(scale * (g + g.conj().T) / 2)
    return BlockOperator(alg, blocks)


def random_operator(rng, alg):
    return BlockOperator(alg, [rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
                               for d in alg.dims])


def random_algebra(rng, max_dim=8, max_blocks=3):
    k = int(rng.integers(1, max_blocks + 1))
    while True:
        dims = rng.integers(1, max_dim + 1, size=k)
        if 2 <= dims.sum() <= max_dim:
            break
    return TraceAlgebra(tuple(int(d) for d in dims), tuple(rng.uniform(0.5, 2, size=k)))


ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """Record one acceptance line: ``criterion(n, title, passed, detail)``."""
    log = request.config.stash.setdefault(ACCEPTANCE_KEY, [])

    def record(number, title, passed, detail=""):
        line = f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {title}  {detail}"
        log.append(line)
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
