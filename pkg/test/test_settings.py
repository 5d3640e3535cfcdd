"""
Test naive.settings
"""
import logging

import pytest

from naive.api.context import EvalContext
from naive.settings import Settings
from test.helpers import load_fixture


def test_defaults():
    settings = Settings({})
    assert settings.grid_resolution == Settings.DEFAULT_GRID
    assert settings.contradiction_threshold == 0.0
    assert settings.recursion_limit == 64
    assert settings.zero_neighborhood == Settings.DEFAULT_ZERO_NEIGHBORHOOD
    assert settings.cache_enabled is True


def test_overrides():
    store = {'NAIVE_GRID': '1024', 'NAIVE_THRESHOLD': '0.01',
             'NAIVE_RECURSION': '8', 'NAIVE_CACHE': 'off'}
    settings = Settings(store)
    assert settings.grid_resolution == 1024
    assert settings.contradiction_threshold == 0.01
    assert settings.recursion_limit == 8
    assert settings.cache_enabled is False
    settings.grid_resolution = 64
    settings.contradiction_threshold = 0.5
    assert store['NAIVE_GRID'] == '64'
    assert Settings(store).contradiction_threshold == 0.5


@pytest.mark.parametrize('key, value, prop', [
    ('NAIVE_GRID', 'many', 'grid_resolution'),
    ('NAIVE_GRID', '4', 'grid_resolution'),
    ('NAIVE_THRESHOLD', '1.5', 'contradiction_threshold'),
    ('NAIVE_RECURSION', '0', 'recursion_limit'),
    ('NAIVE_ZERO_NEIGHBORHOOD', '-1', 'zero_neighborhood')])
def test_invalid_values_fall_back(caplog, key, value, prop):
    default = getattr(Settings({}), prop)
    with caplog.at_level(logging.WARNING, logger='naive.settings'):
        assert getattr(Settings({key: value}), prop) == default
    assert key in caplog.text


def test_context_defaults():
    settings = Settings({'NAIVE_GRID': '32', 'NAIVE_THRESHOLD': '0.2',
                         'NAIVE_CACHE': '0'})
    ctx = EvalContext(load_fixture('weight'), settings=settings)
    assert ctx.grid.resolution == 32
    assert ctx.threshold == 0.2
    assert not ctx.cache.enabled
    assert ctx.recursion_limit == 64
    ctx = EvalContext(load_fixture('weight'), settings=settings, grid=128,
                      cache=True, threshold=0)
    assert ctx.grid.resolution == 128
    assert ctx.threshold == 0
    assert ctx.cache.enabled
