"""Checks against the real ORL database; skipped unless NON_ORL_ROOT is set"""
import pytest

from nonface.config import settings
from nonface.models.features import CompactionMethod
from nonface.schemas.experiment import ExperimentConfig
from nonface.services.dataset_service import DatasetService
from nonface.services.experiment_service import ExperimentService
from nonface.services.feature_service import FeatureService

pytestmark = pytest.mark.slow


@pytest.fixture(scope="module")
def orl(orl_root):
    return DatasetService.load_orl(orl_root)


def test_database_layout(orl):
    assert (orl.num_subjects, orl.samples_per_subject) == (40, 10)
    first = orl.images[0].image
    assert (first.width, first.height) == (92, 112)


@pytest.mark.parametrize("n,expected", [(16, 42), (32, 12), (8, 168)])
def test_feature_dimensions(orl, n, expected):
    assert len(FeatureService.extract_features(orl.images[0].image, n, CompactionMethod.M5)) == expected


def test_headline_configuration(orl):
    cfg = ExperimentConfig(method=CompactionMethod.M5, block_size=8, hidden_dim=60)
    result = ExperimentService.run_config(orl, cfg)
    assert result.num_coefficients == 168
    assert len(result.per_run_error_pct) == 5
    assert result.avg_error_pct <= 6.0
    assert result.min_error_pct <= 4.0


def test_method_ordering_at_8x8(orl):
    configs = [
        ExperimentConfig(method=method, block_size=8, hidden_dim=hidden)
        for method in CompactionMethod
        for hidden in (45, 60)
    ]
    results = ExperimentService.run_grid(orl, configs, jobs=settings.jobs)
    avg = {
        method: sum(r.avg_error_pct for r in results if r.config.method == method) / 2
        for method in CompactionMethod
    }
    better = [
        avg[strong] < avg[weak]
        for strong in (CompactionMethod.M5, CompactionMethod.M4, CompactionMethod.M2)
        for weak in (CompactionMethod.M1, CompactionMethod.M3)
    ]
    assert sum(better) >= 5, avg


def test_grid_global_minimum(orl):
    results = ExperimentService.run_grid(orl, ExperimentService.default_grid(), jobs=settings.jobs)
    global_min = ExperimentService.global_min_error(results)
    winners = [r.config for r in results if r.min_error_pct == global_min]
    assert any(
        cfg.method in (CompactionMethod.M4, CompactionMethod.M5) and cfg.block_size == 8
        for cfg in winners
    ), winners
