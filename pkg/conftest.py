# conftest.py
import pytest

from utils.perm_core import parse_permutation
from utils.pipedream_engine import enumerate_pipe_dreams, trace
from utils.settings import get_settings

SAMPLE_PERM = "3162754"
SAMPLE_WEIGHT = (3, 2, 2, 2, 1, 1, 0)
SAMPLE_FAKES = frozenset({(4, 2), (5, 1), (6, 1)})


@pytest.fixture(autouse=True)
def clean_settings(monkeypatch):
    """每个测试都从默认配置开始"""
    for key in ("GROTHLAB_THREADS", "GROTHLAB_DEBUG", "GROTHLAB_LOG_LEVEL", "GROTHLAB_SEED"):
        monkeypatch.delenv(key, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture(scope="session")
def sample_dream():
    """
    在 PD(3162754) 里按字典序找第一张权重 (3,2,2,2,1,1,0)、fake cross 恰为 (4,2),(5,1),(6,1) 的 pipe dream。
    只保证这样的 pipe dream 存在；具体是哪一张由枚举顺序决定，cross 集合没有写死。
    """
    w = parse_permutation(SAMPLE_PERM)
    for P in enumerate_pipe_dreams(w):
        if P.weight() != SAMPLE_WEIGHT:
            continue
        if trace(P).fake_crosses == SAMPLE_FAKES:
            return P
    pytest.fail("no pipe dream of 3162754 has fake crosses (4,2),(5,1),(6,1) at that weight")


def leq(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))
