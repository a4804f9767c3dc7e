import pytest

from tajtext.presets import build_pipeline
from tajtext.resources import ResourceBundle


@pytest.fixture(scope="session")
def bundle() -> ResourceBundle:
    return ResourceBundle.load()


@pytest.fixture(scope="session")
def default_pipeline(bundle):
    return build_pipeline("default", bundle)


@pytest.fixture(scope="session")
def sentiment_pipeline(bundle):
    return build_pipeline("sentiment", bundle)


@pytest.fixture(scope="session")
def neural_pipeline(bundle):
    return build_pipeline("neural", bundle)
