"""
Shared pytest fixtures and configuration for xspec-eval tests

This file provides common fixtures that can be used across all test modules.
"""

import pytest
import sys
import os

import numpy as np

# Add the project root to the Python path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from xspec_eval.schema import ScoreSet, ScoreTrial, SynthParams
from xspec_eval.scores import synth_pair, write_scores
from xspec_eval.settings import EvalSettings

# Infrared distributions used by the two-modality fusion experiment
IR_PARAMS = SynthParams(genuine_mean=0.75, genuine_sd=0.08, impostor_mean=0.35, impostor_sd=0.10)


def make_scores(genuine, impostor) -> ScoreSet:
    """Score set with one genuine trial per genuine score and likewise for impostors"""
    trials = [
        ScoreTrial(
            probe_id=f"p{k}", probe_subject=f"s{k}", gallery_id=f"g{k}", gallery_subject=f"s{k}", score=float(v)
        )
        for k, v in enumerate(genuine)
    ]
    trials += [
        ScoreTrial(
            probe_id=f"q{k}", probe_subject=f"a{k}", gallery_id=f"h{k}", gallery_subject=f"b{k}", score=float(v)
        )
        for k, v in enumerate(impostor)
    ]
    return ScoreSet(trials=tuple(trials))


@pytest.fixture
def score_factory():
    """Fixture providing the make_scores builder"""
    return make_scores


@pytest.fixture
def test_settings():
    """Fixture providing default toolkit settings"""
    return EvalSettings()


@pytest.fixture
def hand_scores():
    """Genuine {0.9, 0.8, 0.3} vs impostor {0.7, 0.2, 0.1}: EER 1/3, AUC 8/9"""
    return make_scores([0.9, 0.8, 0.3], [0.7, 0.2, 0.1])


@pytest.fixture
def separated_scores():
    """Perfectly separated 2 x 2 set"""
    return make_scores([0.9, 0.8], [0.2, 0.1])


@pytest.fixture(scope="session")
def fusion_pair():
    """Seeded visible/infrared pair: 500 genuine and 5000 impostor trials each"""
    return synth_pair(42, 500, 5000, SynthParams(), IR_PARAMS)


@pytest.fixture
def scores_csv(tmp_path, hand_scores):
    """Score CSV on disk holding the hand-checked set"""
    return write_scores(hand_scores, tmp_path / "scores.csv")


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


# Pytest configuration
def pytest_configure(config):
    """Configure pytest with custom markers"""
    config.addinivalue_line("markers", "unit: mark test as a unit test")
    config.addinivalue_line("markers", "integration: mark test as an integration test")
    config.addinivalue_line("markers", "slow: mark test as slow")


def pytest_collection_modifyitems(config, items):
    """Modify test collection to add markers based on test names"""
    for item in items:
        # Mark CLI tests as integration tests
        if "cli" in item.nodeid.lower():
            item.add_marker(pytest.mark.integration)

        # Mark unit tests (default)
        if not any(
            marker.name in ["integration", "slow"] for marker in item.iter_markers()
        ):
            item.add_marker(pytest.mark.unit)
