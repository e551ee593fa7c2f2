"""Every demo script must run clean from a fresh interpreter."""

import subprocess
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
DEMOS = sorted((ROOT / "demos").glob("*.py"))


@pytest.mark.parametrize("script", DEMOS, ids=lambda p: p.name)
def test_demo_runs_clean(script, tmp_path):
    result = subprocess.run(
        [sys.executable, str(script)],
        capture_output=True,
        text=True,
        cwd=tmp_path if "chart" not in script.name else ROOT / "demos",
    )
    assert result.returncode == 0, result.stderr
    assert result.stdout  # every demo narrates something


def test_chart_demo_outputs_are_gitignored():
    ignored = (ROOT / ".gitignore").read_text()
    assert "chart_p6.svg" in ignored and "chart_p6.tikz" in ignored
