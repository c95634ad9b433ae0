import pytest

from src.configuration.container import clear_container

_ENV_VARS = (
    "APP_ENV",
    "PARCOLLECT_STATE_LIMIT",
    "PARCOLLECT_DENSE_LIMIT",
    "PARCOLLECT_RATIONAL_MAX_N",
    "PARCOLLECT_TAILSUM_MAX_N",
    "PARCOLLECT_TAIL_N_CAP",
    "PARCOLLECT_WORKERS",
    "PARCOLLECT_LOG_LEVEL",
    "PARCOLLECT_LOG_FILE",
)


@pytest.fixture(autouse=True)
def isolated_settings(monkeypatch):
    """테스트마다 환경 변수와 컨테이너 캐시를 초기화한다."""
    for name in _ENV_VARS:
        monkeypatch.delenv(name, raising=False)
    clear_container()
    yield
    clear_container()
