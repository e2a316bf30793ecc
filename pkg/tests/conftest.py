"""Shared fixtures: a session-scoped demo workspace, loaded resources and
a trained mini pipeline reused across test modules."""

from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from stancecascade.cnn import CnnConfig
from stancecascade.corpus import StanceLabel, load_corpus
from stancecascade.demo import MINI_TRAIN, write_demo_workspace
from stancecascade.pipeline import PipelineConfig, Resources, ResourcePaths, train_pipeline

DATA_DIR = Path(__file__).parent / "data"

MINI_TEST = {
    StanceLabel.UNRELATED: 24,
    StanceLabel.NEUTRAL: 18,
    StanceLabel.AGREE: 10,
    StanceLabel.DISAGREE: 8,
}


@pytest.fixture(scope="session")
def demo_paths(tmp_path_factory):
    out = tmp_path_factory.mktemp("demo-workspace")
    return write_demo_workspace(out, train_counts=MINI_TRAIN, test_counts=MINI_TEST, seed=7)


@pytest.fixture(scope="session")
def resources(demo_paths) -> Resources:
    return Resources.load(ResourcePaths(embeddings=demo_paths["embeddings"]))


@pytest.fixture(scope="session")
def mini_train_corpus(demo_paths):
    return load_corpus(demo_paths["train_stances"], demo_paths["train_bodies"], quiet=True)


@pytest.fixture(scope="session")
def mini_test_corpus(demo_paths):
    return load_corpus(demo_paths["test_stances"], demo_paths["test_bodies"], quiet=True)


def mini_pipeline_config() -> PipelineConfig:
    return PipelineConfig(
        stage2=CnnConfig(
            d=25, eta=3, filters=8, claim_len=16, doc_len=48, hidden=8,
            epochs=6, batch_size=16, learning_rate=0.05, seed=1,
        ),
    )


@pytest.fixture(scope="session")
def mini_pipeline(mini_train_corpus, resources):
    return train_pipeline(mini_train_corpus, mini_pipeline_config(), resources, quiet=True)
