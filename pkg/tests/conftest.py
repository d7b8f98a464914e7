import pytest

from fdahp import load_paper_study


@pytest.fixture(scope="session")
def study():
    return load_paper_study()
