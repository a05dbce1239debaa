import os

# 测试构建下每次构造方块与建造顺序都做不变量自检
os.environ.setdefault("DEBUG", "true")
os.environ.setdefault("LOG_DIR", "")

import pytest

from tests.corpus import golden_corpus


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="运行穷举与统计验收测试")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="需要 --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="session")
def corpus():
    return golden_corpus()
