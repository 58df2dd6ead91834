import os
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from nonface.models.image import GrayImage
from nonface.services.dataset_service import DatasetService
from nonface.utils.logging_config import console


def write_orl_tree(root: Path, subjects: int, samples: int, width: int = 40, height: int = 48, seed: int = 0) -> Path:
    """
    Write a miniature ORL-layout tree of synthetic faces

    Every subject gets its own coarse blocky pattern; samples add mild noise so
    the classes stay separable.
    """
    rng = np.random.default_rng(seed)
    for s in range(1, subjects + 1):
        coarse = rng.integers(30, 226, size=(-(-height // 8), -(-width // 8)))
        base = np.kron(coarse, np.ones((8, 8)))[:height, :width]
        subject_dir = root / f"s{s}"
        subject_dir.mkdir(parents=True)
        for k in range(1, samples + 1):
            pixels = np.clip(base + rng.normal(0, 6, size=base.shape), 0, 255).astype(np.uint8)
            image = GrayImage.from_array(pixels)
            (subject_dir / f"{k}.pgm").write_bytes(DatasetService.serialize_pgm(image))
    return root


def read_features_csv(path) -> list:
    """Read an extracted feature CSV back as (subject_id, sample_index, values) rows"""
    frame = pd.read_csv(path, float_precision="round_trip")
    values = frame.drop(columns=["subject_id", "sample_index"]).to_numpy(dtype=np.float64)
    return [
        (int(s), int(k), row)
        for s, k, row in zip(frame["subject_id"], frame["sample_index"], values)
    ]


@pytest.fixture
def tiny_tree(tmp_path) -> Path:
    """2 subjects x 3 samples"""
    return write_orl_tree(tmp_path / "tiny", subjects=2, samples=3)


@pytest.fixture
def synthetic_tree(tmp_path) -> Path:
    """2 subjects x 10 samples, enough for the 5/5 split"""
    return write_orl_tree(tmp_path / "faces", subjects=2, samples=10)


@pytest.fixture
def synthetic_dataset(synthetic_tree):
    return DatasetService.load_orl(synthetic_tree)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def orl_root() -> Path:
    """The real database, when NON_ORL_ROOT points at it"""
    root = os.environ.get("NON_ORL_ROOT")
    if not root or not Path(root).is_dir():
        pytest.skip("NON_ORL_ROOT not set; ORL database unavailable")
    return Path(root)


@pytest.fixture(autouse=True)
def wide_console(monkeypatch):
    """Stop Rich wrapping long console lines inside assertions"""
    monkeypatch.setattr(console, "width", 240)
