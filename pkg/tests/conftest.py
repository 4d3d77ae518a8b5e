import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from gksmote.data import Dataset

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def line_dataset(minority, majority):
    """1-D dataset: minority values first, then majority."""
    X = np.array(list(minority) + list(majority), dtype=float).reshape(-1, 1)
    y = [1] * len(minority) + [0] * len(majority)
    return Dataset(X, y, name="line")


@pytest.fixture
def seven_points():
    # minority {0.0, 0.1, 9.0}; majority {8.0, 8.5, 9.5, 10.0}
    return line_dataset([0.0, 0.1, 9.0], [8.0, 8.5, 9.5, 10.0])


@pytest.fixture
def blobs():
    rng = np.random.default_rng(7)
    Q = rng.standard_normal((200, 2))
    P = rng.standard_normal((20, 2)) * 0.5 + 6.0
    return Dataset(np.vstack([Q, P]), [0] * 200 + [1] * 20, name="blobs")


def random_instance(rng, n_max=200, dim=2, p_min=0.3):
    n = int(rng.integers(12, n_max + 1))
    X = rng.standard_normal((n, dim))
    y = (rng.random(n) < rng.uniform(0.1, p_min)).astype(int)
    y[0], y[1] = 1, 0
    return Dataset(X, y)


ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def accept(request):
    """Record one summary line per acceptance criterion."""
    lines = request.config.stash.setdefault(ACCEPTANCE, [])

    def record(number, ok, detail):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        lines.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split(":")[0].split()[1])):
            terminalreporter.write_line(line)
