import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from entwine.instances import fixture_path, load_instance

BIMONOID_FIXTURES = ("kz2_f3", "kz3_f2", "m2_f2", "sweedler_f5", "trivial_fp")
HOPF_FIXTURES = ("kz2_f3", "kz3_f2", "sweedler_f5", "trivial_fp")
ALL_FIXTURES = BIMONOID_FIXTURES + ("regular_comodule_f3", "trivial_coaction_f3")

_cache = {}


def corpus_instance(name):
    if name not in _cache:
        _cache[name] = load_instance(fixture_path(name))
    return _cache[name]


def corpus_bimonoid(name):
    (_, a), = corpus_instance(name).roles_of("bimonoid")
    return a


@pytest.fixture(params=BIMONOID_FIXTURES)
def bimonoid_fixture(request):
    return request.param, corpus_bimonoid(request.param)


@pytest.fixture(params=HOPF_FIXTURES)
def hopf_fixture(request):
    return request.param, corpus_bimonoid(request.param)
