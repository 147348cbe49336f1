"""
Tests for the package manifests.
"""

import re
from pathlib import Path
from typing import List

ROOT = Path(__file__).parent.parent

IMPORT_NAMES = {"python-dotenv": "dotenv"}


def requirement_names(path: Path) -> List[str]:
    names = []
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            names.append(re.split(r"[<>=!~\[ ]", line, maxsplit=1)[0])
    return names


def source_text() -> str:
    return "\n".join(p.read_text(encoding="utf-8") for p in (ROOT / "src").rglob("*.py"))


class TestRequirements:
    """Test the declared runtime dependencies."""

    def test_every_requirement_is_imported(self):
        """Each runtime requirement is imported by the package."""
        source = source_text()
        for name in requirement_names(ROOT / "requirements.txt"):
            module = IMPORT_NAMES.get(name, name.replace("-", "_"))
            pattern = rf"^\s*(import|from) {re.escape(module)}\b"
            assert re.search(pattern, source, re.MULTILINE), f"{name} is never imported"

    def test_manifests_agree(self):
        """requirements.txt lists the pyproject dependencies."""
        pyproject = (ROOT / "pyproject.toml").read_text(encoding="utf-8")
        block = pyproject.split("dependencies = [", 1)[1].split("]", 1)[0]
        items = [item.strip().strip('",') for item in block.splitlines() if item.strip()]
        declared = [re.split(r"[<>=!~\[ ]", item, maxsplit=1)[0] for item in items]

        assert sorted(declared) == sorted(requirement_names(ROOT / "requirements.txt"))
