import pytest

from config import Config, RuntimeSettings, _optional_int, _parse_primes
from errors import ConfigError
from field_tower import FieldElem, PrimeTable


@pytest.fixture
def env_defaults(monkeypatch):
    monkeypatch.setattr(Config, 'PRIMES', ())
    monkeypatch.setattr(Config, 'DEFAULT_DEPTH', 4)
    monkeypatch.setattr(Config, 'TRIALS', None)
    monkeypatch.setattr(Config, 'SEED', 7)
    monkeypatch.setattr(Config, 'WORKERS', 1)
    monkeypatch.setattr(Config, 'LOG_LEVEL', 'WARNING')
    monkeypatch.setattr(Config, 'LOG_FILE', '')
    monkeypatch.setattr(Config, 'REPORT_FILE', '')


def test_defaults(env_defaults):
    settings = Config.runtime()
    assert settings == RuntimeSettings()
    assert settings.depth == 4 and settings.seed == 7 and settings.trials is None


def test_overrides_win_and_none_keeps_environment(env_defaults, monkeypatch):
    monkeypatch.setattr(Config, 'SEED', 11)
    settings = Config.runtime(seed=None, depth=6, primes='3,5,7')
    assert settings.seed == 11
    assert settings.depth == 6
    assert settings.primes == (3, 5, 7)


def test_unknown_setting(env_defaults):
    with pytest.raises(ConfigError):
        Config.runtime(colour=True)


@pytest.mark.parametrize('overrides', [{'depth': 0}, {'workers': 0}, {'trials': -1}])
def test_invalid_values(env_defaults, overrides):
    with pytest.raises(ConfigError):
        Config.runtime(**overrides)


def test_parse_helpers():
    assert _parse_primes('') == ()
    assert _parse_primes('2, 3,5,') == (2, 3, 5)
    with pytest.raises(ConfigError):
        _parse_primes('2,three')
    assert _optional_int('  ', 9) == 9
    assert _optional_int('0', 9) == 0
    with pytest.raises(ConfigError):
        _optional_int('seven')


def test_to_dict(env_defaults):
    data = Config.runtime(primes=(3, 5)).to_dict()
    assert data['primes'] == [3, 5]
    assert data['log_level'] == 'WARNING'


def test_prime_table_validation():
    with pytest.raises(ConfigError):
        PrimeTable((4, 5))
    with pytest.raises(ConfigError):
        PrimeTable((5, 3))


def test_prime_table_extends_far_past_an_override():
    table = PrimeTable((2,))
    assert table.prime(1500) == PrimeTable().prime(1500)
    root = FieldElem.sqrt(1500, table)
    assert root * root == table.prime(1500)


def test_environment_strings_are_parsed_at_runtime(env_defaults, monkeypatch):
    monkeypatch.setattr(Config, 'PRIMES', '3,5')
    monkeypatch.setattr(Config, 'DEFAULT_DEPTH', '6')
    monkeypatch.setattr(Config, 'TRIALS', '')
    monkeypatch.setattr(Config, 'SEED', '0')
    settings = Config.runtime()
    assert settings.primes == (3, 5)
    assert settings.depth == 6
    assert settings.trials is None
    assert settings.seed == 0


def test_bad_environment_value_fails_in_runtime(env_defaults, monkeypatch):
    monkeypatch.setattr(Config, 'DEFAULT_DEPTH', 'abc')
    with pytest.raises(ConfigError):
        Config.runtime()
    assert Config.runtime(depth=3).depth == 3
