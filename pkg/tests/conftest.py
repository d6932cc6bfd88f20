import warnings

import pytest
from hypothesis import HealthCheck, settings

from vnseg.corpus import Corpus, parse_underscore_sentence
from vnseg.datasets import make_synthetic_language

settings.register_profile(
    "vnseg", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("vnseg")


def corpus_of(*lines):
    return Corpus(tuple(parse_underscore_sentence(line) for line in lines))


@pytest.fixture(scope="session")
def small_language():
    return make_synthetic_language(n_train=300, n_test=60, seed=3)


@pytest.fixture(scope="session")
def fitted(small_language):
    from vnseg import WordSegmenter

    lexicon, train, _ = small_language
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return WordSegmenter(lexicon=lexicon).fit(train)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        status, detail = RESULTS[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {detail}")
