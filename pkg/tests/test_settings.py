import pytest

from utils.errors import MalformedInputError
from utils.settings import Settings, get_settings, load_settings


def test_defaults():
    s = load_settings()
    assert s == Settings()
    assert s.threads == 1
    assert s.debug is False
    assert s.log_level == "INFO"
    assert s.seed == 0


def test_reads_environment(monkeypatch):
    monkeypatch.setenv("GROTHLAB_THREADS", "4")
    monkeypatch.setenv("GROTHLAB_DEBUG", "true")
    monkeypatch.setenv("GROTHLAB_LOG_LEVEL", "debug")
    monkeypatch.setenv("GROTHLAB_SEED", "17")
    s = load_settings()
    assert (s.threads, s.debug, s.log_level, s.seed) == (4, True, "DEBUG", 17)


def test_blank_values_fall_back_to_defaults(monkeypatch):
    monkeypatch.setenv("GROTHLAB_THREADS", "  ")
    assert load_settings().threads == 1


@pytest.mark.parametrize("key,value", [
    ("GROTHLAB_THREADS", "0"),
    ("GROTHLAB_THREADS", "many"),
    ("GROTHLAB_LOG_LEVEL", "LOUD"),
    ("GROTHLAB_DEBUG", "maybe"),
])
def test_bad_values_are_malformed(monkeypatch, key, value):
    monkeypatch.setenv(key, value)
    with pytest.raises(MalformedInputError):
        load_settings()


def test_get_settings_is_cached(monkeypatch):
    first = get_settings()
    monkeypatch.setenv("GROTHLAB_SEED", "3")
    assert get_settings() is first
    get_settings.cache_clear()
    assert get_settings().seed == 3
