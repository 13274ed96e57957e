import json
from pathlib import Path

import pytest

from frontals.parsing import parse_expression

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def P(text, vars=("x", "y")):
    return parse_expression(text, vars)


def load_corpus(*names):
    """All corpus rows from the given fixture files (default: all)."""
    files = [FIXTURES / n for n in names] if names else sorted(FIXTURES.glob("*.jsonl"))
    rows = []
    for f in files:
        for line in f.read_text().splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            rows.append(json.loads(line))
    return rows


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture(scope="session")
def frontal_corpus():
    return [r for r in load_corpus() if r.get("expect", {}).get("frontal") is True]
