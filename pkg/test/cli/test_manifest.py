import json

from salttrack import __version__
from salttrack.cli.manifest import RunManifest, MANIFEST_FILE


def test_sections():
    manifest = RunManifest("track", {"reference": 5})
    manifest.add_section({"inline": 7, "status": "failed", "error": "chain broken"}, 0.5)
    manifest.add_section({"inline": 6, "status": "ok"}, 1.25)
    data = manifest.to_dict()
    assert [entry["inline"] for entry in data["sections"]] == [6, 7]
    assert data["timings"] == {"inline_7": 0.5, "inline_6": 1.25}
    assert data["version"] == __version__
    assert manifest.failed_sections == [{"inline": 7, "status": "failed", "error": "chain broken"}]


def test_write(tmp_path):
    manifest = RunManifest("evaluate", inputs={"truth": "t"})
    manifest.add_output(tmp_path / "b.csv")
    manifest.add_output(tmp_path / "a.csv")
    path = manifest.write(tmp_path)
    assert path == tmp_path / MANIFEST_FILE
    data = json.loads(path.read_text())
    assert data["command"] == "evaluate"
    assert data["outputs"] == [str(tmp_path / "a.csv"), str(tmp_path / "b.csv")]
