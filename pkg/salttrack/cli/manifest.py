from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Any, List, Optional

from ..storage import save_json, PathLike
from .. import __version__

MANIFEST_FILE = "manifest.json"


@dataclass
class RunManifest:
    """Record of one command run: configuration, files read and written, per-section outcome."""
    command: str
    config: Dict[str, Any] = field(default_factory=dict)
    inputs: Dict[str, str] = field(default_factory=dict)
    outputs: List[str] = field(default_factory=list)
    sections: List[Dict[str, Any]] = field(default_factory=list)
    timings: Dict[str, float] = field(default_factory=dict)

    def add_output(self, path: PathLike) -> None:
        self.outputs.append(str(path))

    def add_section(self, entry: Dict[str, Any], seconds: Optional[float] = None) -> None:
        self.sections.append(entry)
        if seconds is not None:
            self.timings[f"inline_{entry['inline']}"] = seconds

    @property
    def failed_sections(self) -> List[Dict[str, Any]]:
        return [entry for entry in self.sections if entry.get("status") != "ok"]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "version": __version__,
            "command": self.command,
            "config": self.config,
            "inputs": self.inputs,
            "outputs": sorted(self.outputs),
            "sections": sorted(self.sections, key=lambda entry: entry["inline"]),
            "timings": self.timings
        }

    def write(self, directory: PathLike) -> Path:
        path = Path(directory) / MANIFEST_FILE
        save_json(self.to_dict(), path)
        return path
