import pytest

from nugroup.corpus import corpus_presentations
from nugroup.coset import enumerate_presentation, to_regular_engine
from nugroup.nu import build_nu


def pytest_addoption(parser):
    parser.addoption(
        "--heavy",
        action="store_true",
        default=False,
        help="run the opt-in heavy reproductions (order-27 extraspecial group)",
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--heavy"):
        return
    skip = pytest.mark.skip(reason="heavy reproduction; enable with --heavy")
    for item in items:
        if "heavy" in item.keywords:
            item.add_marker(skip)


class _Cache:
    """Session-wide lazy store for engines and built nu contexts."""

    def __init__(self):
        self.presentations = corpus_presentations()
        self._engines = {}
        self._contexts = {}

    def pres(self, name):
        return self.presentations[name]

    def engine(self, name):
        if name not in self._engines:
            pres = self.presentations[name]
            self._engines[name] = to_regular_engine(enumerate_presentation(pres), pres)
        return self._engines[name]

    def ctx(self, name, strategy="gens"):
        key = (name, strategy)
        if key not in self._contexts:
            self._contexts[key] = build_nu(
                self.presentations[name], strategy, base_engine=self.engine(name)
            )
        return self._contexts[key]


@pytest.fixture(scope="session")
def store():
    return _Cache()
