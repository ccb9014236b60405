import functools
import random

import pytest

from ctbl.classes import table_header
from ctbl.groups import corpus, p_group_corpus


@functools.lru_cache(maxsize=None)
def _corpus():
    return corpus()


@functools.lru_cache(maxsize=None)
def _p_corpus():
    return p_group_corpus()


@functools.lru_cache(maxsize=None)
def header_of(name):
    return table_header(_corpus()[name])


@functools.lru_cache(maxsize=None)
def brauer_of(name):
    from ctbl.pipeline import brauer_table

    return brauer_table(_corpus()[name], header_of(name))


@functools.lru_cache(maxsize=None)
def oracle_of(name):
    from ctbl.oracle import oracle_table

    return oracle_table(_corpus()[name], header_of(name))


CORPUS_NAMES = list(corpus())
P_CORPUS_NAMES = list(p_group_corpus())


@pytest.fixture(scope="session")
def groups():
    return _corpus()


@pytest.fixture(scope="session")
def p_groups():
    return _p_corpus()


@pytest.fixture
def rng():
    return random.Random(20240517)
