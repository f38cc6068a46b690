import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest
from scipy.stats import spearmanr

REFERENCE = 11
VARIANTS = ("full", "no_contrast", "vectorized")


def run(*arguments, check=True):
    return subprocess.run([sys.executable, "-m", "salttrack", "-q"] + [str(a) for a in arguments], check=check)


@pytest.fixture(scope="module")
def volume(tmp_path_factory):
    path = tmp_path_factory.mktemp("synthetic") / "volume"
    run("synth", path, "--seed", 3)
    return path


def track(volume: Path, output: Path, *options):
    # failed sections still leave their entries in the manifest
    run("track", volume, volume / "truth" / f"{REFERENCE}.csv", "-o", output, "--truth", volume / "truth",
        *options, check=False)
    return json.loads((output / "manifest.json").read_text())


@pytest.fixture(scope="module")
def manifests(volume, tmp_path_factory):
    output = tmp_path_factory.mktemp("tracked")
    return {variant: track(volume, output / variant, "--variant", variant) for variant in VARIANTS}


def similarities(manifest):
    """Similarity index per inline; a failed section scores zero."""
    return {entry["inline"]: entry.get("similarity_index", 0.0) for entry in manifest["sections"]}


@pytest.mark.timeout(1800)
def test_tracking_accuracy(manifests):
    sections = manifests["full"]["sections"]
    assert len(sections) == 20
    for entry in sections:
        assert entry["status"] == "ok"
        assert entry["similarity_index"] >= 0.8
        assert entry["mean_absolute_deviation"] <= 2.0


@pytest.mark.timeout(1800)
def test_variant_ordering(manifests):
    scores = {variant: similarities(manifests[variant]) for variant in VARIANTS}
    inlines = sorted(scores["full"])
    means = {variant: np.mean([scores[variant][inline] for inline in inlines]) for variant in VARIANTS}
    assert means["full"] >= means["no_contrast"]
    assert means["full"] >= means["vectorized"]

    distances = sorted({abs(inline - REFERENCE) for inline in inlines})
    gaps = [np.mean([scores["full"][inline] - (scores["no_contrast"][inline] + scores["vectorized"][inline]) / 2
                     for inline in inlines if abs(inline - REFERENCE) == distance])
            for distance in distances]
    rho, _ = spearmanr(distances, gaps)
    assert rho > 0


@pytest.mark.timeout(600)
def test_deterministic(volume, tmp_path):
    track(volume, tmp_path / "first", "--range", "9..13")
    track(volume, tmp_path / "second", "--range", "9..13", "-j", "2")
    for inline in (9, 10, 12, 13):
        first = (tmp_path / "first" / f"{inline}.csv").read_bytes()
        assert first == (tmp_path / "second" / f"{inline}.csv").read_bytes()

    for name in ("a", "b"):
        run("render", volume, "--inline", 12, "-o", tmp_path / f"{name}.ppm",
            "-b", tmp_path / "first" / "12.csv", "-b", volume / "truth" / "12.csv")
    assert (tmp_path / "a.ppm").read_bytes() == (tmp_path / "b.ppm").read_bytes()


@pytest.mark.timeout(120)
def test_synthetic_volume_reproducible(volume, tmp_path):
    run("synth", tmp_path / "again", "--seed", 3)
    assert (tmp_path / "again" / "samples.f32").read_bytes() == (volume / "samples.f32").read_bytes()
