import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from knotwkb import corpus_dir, parse_diagram  # noqa: E402
from knotwkb.geometry import parse_geometric  # noqa: E402

CORPUS = Path(str(corpus_dir()))


def _is_geometric(path: Path) -> bool:
    comps = json.loads(path.read_text())["components"]
    return bool(comps) and isinstance(comps[0], dict)


DIAGRAM_FILES = sorted(p for p in CORPUS.glob("*.json") if not _is_geometric(p))
GEOMETRIC_FILES = sorted(p for p in CORPUS.glob("*.json") if _is_geometric(p))


def load(name: str):
    path = CORPUS / f"{name}.json"
    text = path.read_text()
    return parse_geometric(text) if _is_geometric(path) else parse_diagram(text)


@pytest.fixture(params=DIAGRAM_FILES, ids=lambda p: p.stem)
def corpus_diagram(request):
    return parse_diagram(request.param.read_text())


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
