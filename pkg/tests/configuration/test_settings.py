import logging

import pytest

from src.common.exception import ConfigurationError
from src.configuration.container import build_container
from src.configuration.settings import build_settings
from src import main as entry
from src.main import setup_logging


def test_defaults():
    settings = build_settings()
    assert settings.app_env == "local"
    assert settings.state_limit == 10_000_000
    assert settings.dense_limit == 2000
    assert settings.rational_max_n == 1000
    assert settings.tailsum_max_n == 150
    assert settings.tail_n_cap == 1_000_000
    assert settings.workers == 1
    assert settings.log_level == "WARNING"
    assert settings.log_file == ""


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("PARCOLLECT_STATE_LIMIT", "1_000")
    monkeypatch.setenv("PARCOLLECT_WORKERS", "4")
    monkeypatch.setenv("PARCOLLECT_LOG_LEVEL", "debug")
    settings = build_settings()
    assert settings.state_limit == 1000
    assert settings.workers == 4
    assert settings.log_level == "DEBUG"


@pytest.mark.parametrize(
    "name,value",
    [
        ("PARCOLLECT_STATE_LIMIT", "many"),
        ("PARCOLLECT_DENSE_LIMIT", "0"),
        ("PARCOLLECT_WORKERS", "-2"),
        ("PARCOLLECT_LOG_LEVEL", "LOUD"),
    ],
)
def test_invalid_values(monkeypatch, name, value):
    monkeypatch.setenv(name, value)
    with pytest.raises(ConfigurationError):
        build_settings()


def test_container_is_cached():
    assert build_container() is build_container()
    assert build_container().settings.state_limit == 10_000_000


def test_setup_logging_replaces_own_handlers(tmp_path):
    root = logging.getLogger()
    before = len(root.handlers)
    log_file = tmp_path / "logs" / "parcollect.log"
    setup_logging("INFO", str(log_file))
    setup_logging("INFO", str(log_file))
    owned = [h for h in root.handlers if getattr(h, "_parcollect", False)]
    assert len(owned) == 2
    assert len(root.handlers) == before + 2
    assert log_file.parent.is_dir()
    for handler in owned:
        root.removeHandler(handler)
        handler.close()


def test_run_configures_logging_before_the_command(monkeypatch):
    calls = []

    def fake_settings():
        calls.append("settings")
        return build_settings()

    def fake_logging(level, log_file=""):
        calls.append("logging")
        return logging.getLogger("test")

    def fake_main():
        calls.append("main")
        return 0

    monkeypatch.setattr(entry, "build_settings", fake_settings)
    monkeypatch.setattr(entry, "setup_logging", fake_logging)
    monkeypatch.setattr(entry, "main", fake_main)
    with pytest.raises(SystemExit) as exited:
        entry.run()
    assert exited.value.code == 0
    assert calls == ["settings", "logging", "main"]


def test_run_rejects_bad_configuration(monkeypatch, capsys):
    monkeypatch.setenv("PARCOLLECT_WORKERS", "zero")
    with pytest.raises(SystemExit) as exited:
        entry.run()
    assert exited.value.code == 1
    assert "PARCOLLECT_WORKERS" in capsys.readouterr().err
