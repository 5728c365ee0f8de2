import logging

import pytest

import config
from config import ConfigError, get_settings, init_settings, load_settings, setup_logging


def test_bundled_defaults():
    settings = load_settings()
    assert settings.verification.seed == 2008
    assert settings.verification.samples['moebius'] == 1000
    assert settings.analytic.patch.points == 129
    assert settings.numerics.max_matrix_order == 64


def test_missing_file_falls_back_to_defaults(tmp_path):
    settings = load_settings(str(tmp_path / 'absent.yaml'))
    assert settings.render.precision == 6


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv('CYCLEKIT_SEED', '7')
    monkeypatch.setenv('CYCLEKIT_LOG_LEVEL', 'debug')
    settings = load_settings()
    assert settings.verification.seed == 7
    assert settings.logging.level == 'debug'


def test_bad_seed_is_ignored(monkeypatch):
    monkeypatch.setenv('CYCLEKIT_SEED', 'seven')
    assert load_settings().verification.seed == 2008


@pytest.mark.parametrize("text", ["render: [", "render:\n  precision: 0\n", "analytic:\n  grid_size: 4\n"])
def test_invalid_files(tmp_path, text):
    path = tmp_path / 'config.yaml'
    path.write_text(text, encoding='utf-8')
    with pytest.raises(ConfigError):
        load_settings(str(path))


def test_settings_singleton(tmp_path):
    path = tmp_path / 'config.yaml'
    path.write_text("verification:\n  seed: 99\n", encoding='utf-8')
    assert init_settings(str(path)).verification.seed == 99
    assert get_settings().verification.seed == 99
    config.reset_settings()
    assert get_settings().verification.seed == 2008


def test_setup_logging_writes_file(tmp_path):
    log_file = tmp_path / 'logs' / 'cyclekit.log'
    setup_logging('debug', str(log_file))
    logging.getLogger('CycleKit.Test').debug('hello')
    for handler in logging.getLogger().handlers:
        handler.flush()
    assert 'CycleKit.Test - DEBUG - hello' in log_file.read_text(encoding='utf-8')
    setup_logging('info')
