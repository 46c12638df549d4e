import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from coset2pc import PrimeField, paper_code_9_4, paper_code_20_4_ternary, simplex_code  # noqa: E402
from coset2pc._kernels import available_backends  # noqa: E402

F2, F3, F5, F7 = (PrimeField(q) for q in (2, 3, 5, 7))


@pytest.fixture(scope="session")
def simplex7():
    return simplex_code(3, F2)


@pytest.fixture(scope="session")
def code9():
    return paper_code_9_4()


@pytest.fixture(scope="session")
def code20():
    return paper_code_20_4_ternary()


@pytest.fixture(scope="session")
def simplex13():
    return simplex_code(3, F3)


@pytest.fixture(params=sorted(available_backends()))
def backend(request):
    return available_backends()[request.param]
